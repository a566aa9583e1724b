#include "ramsey/experiments.hpp"

#include "ramsey/errors.hpp"
#include "ramsey/interferometry.hpp"
#include "ramsey/jaynes_cummings.hpp"
#include "ramsey/open_system.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace ramsey {
namespace {

constexpr int kOraclePhiPoints = 8;

using ojson = nlohmann::ordered_json;

OracleSettings zero_temp_oracle_settings(double omega_chi) {
    OracleSettings s;
    s.omega_chi = omega_chi;
    s.trunc = TruncationConfig{2, 1e-10};
    return s;
}

OracleSettings thermal_oracle_settings(double nbar, double omega_chi, double tail_tol) {
    OracleSettings s;
    s.omega_chi = omega_chi;
    s.trunc = truncation_for_bath(nbar, tail_tol);
    return s;
}

double zero_temp_oracle_visibility(double T, double omega_chi) {
    return oracle_setup2_visibility(T, 0.0, kOraclePhiPoints, zero_temp_oracle_settings(omega_chi));
}

// Series visibility at cfg.nbar; the zero-temperature oracle stands in at nbar = 0.
double model_visibility(double T, const PhysicalConfig& cfg, SeriesVariant variant) {
    if (cfg.nbar == 0.0) return zero_temp_oracle_visibility(T, cfg.omega_chi_rad);
    SeriesConfig sc = cfg.series;
    sc.variant = variant;
    return thermal_visibility(T, cfg.nbar, sc, cfg.omega_chi_rad);
}

std::string model_name(const PhysicalConfig& cfg, SeriesVariant variant) {
    if (cfg.nbar == 0.0) return "zero_temp_oracle";
    return "thermal_series_" + std::string(to_string(variant));
}

ojson selection_to_json(const VariantSelection& sel) {
    ojson j;
    j["winner"] = std::string(to_string(sel.winner));
    j["stable"] = sel.stable;
    ojson dev;
    for (SeriesVariant v : kAllSeriesVariants) {
        dev[std::string(to_string(v))] = round12(sel.total_deviation[static_cast<std::size_t>(v)]);
    }
    j["total_deviation"] = dev;
    ojson probes = ojson::array();
    for (const VariantProbe& p : sel.probes) {
        ojson pj;
        pj["T"] = p.point.T;
        pj["nbar"] = p.point.nbar;
        pj["oracle"] = round12(p.oracle);
        for (SeriesVariant v : kAllSeriesVariants) {
            pj[std::string(to_string(v))] = round12(p.series[static_cast<std::size_t>(v)]);
        }
        probes.push_back(pj);
    }
    j["probes"] = std::move(probes);
    return j;
}

ojson provenance(const PhysicalConfig& cfg, SeriesVariant variant) {
    ojson p;
    p["config"] = config_to_json(cfg);
    p["series_variant"] = std::string(to_string(variant));
    if (cfg.variant == VariantChoice::Auto && cfg.nbar > 0.0) {
        VariantSelection sel;
        (void)resolve_variant(cfg, &sel);
        p["variant_selection"] = selection_to_json(sel);
    }
    ojson tol;
    tol["tail_tol"] = cfg.trunc.tail_tol;
    tol["term_tol"] = cfg.series.term_tol;
    tol["oracle_step_tol"] = StepControl{}.tol;
    tol["oracle_phi_points"] = kOraclePhiPoints;
    p["tolerances"] = tol;
    p["units"] = "JC times in units of 1/Omega; T = tau / (2 t_cav)";
    return p;
}

double require_number(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) throw ValidationError("config: '" + key + "' must be a number");
    return v.get<double>();
}

double parse_double(std::string_view s) {
    double out = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ValidationError("cannot parse number '" + std::string(s) + "'");
    }
    return out;
}

} // namespace

std::string_view to_string(VariantChoice v) noexcept {
    switch (v) {
    case VariantChoice::A: return "A";
    case VariantChoice::B: return "B";
    case VariantChoice::C: return "C";
    case VariantChoice::Auto: return "auto";
    }
    return "?";
}

VariantChoice variant_choice_from_string(std::string_view s) {
    if (s == "auto" || s == "AUTO") return VariantChoice::Auto;
    switch (series_variant_from_string(s)) {
    case SeriesVariant::A: return VariantChoice::A;
    case SeriesVariant::B: return VariantChoice::B;
    case SeriesVariant::C: return VariantChoice::C;
    }
    return VariantChoice::Auto;
}

void PhysicalConfig::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string("config: ") + name + " must be > 0");
    };
    positive(t_cav_s, "t_cav_s");
    positive(tau_s, "tau_s");
    positive(v_ref_mps, "v_ref_mps");
    positive(omega_chi_rad, "omega_chi_rad");
    if (!(nbar >= 0.0 && nbar < 1.0)) throw ValidationError("config: nbar must lie in [0, 1)");
    if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("config: eta must lie in [0, 1]");
    if (!(v_observed_ref > 0.0 && v_observed_ref <= 1.0)) {
        throw ValidationError("config: v_observed_ref must lie in (0, 1]");
    }
    trunc.validate();
    series.validate();
}

ojson config_to_json(const PhysicalConfig& cfg) {
    ojson j;
    j["t_cav_s"] = cfg.t_cav_s;
    j["tau_s"] = cfg.tau_s;
    j["nbar"] = cfg.nbar;
    j["eta"] = cfg.eta;
    j["v_ref_mps"] = cfg.v_ref_mps;
    j["v_observed_ref"] = cfg.v_observed_ref;
    j["omega_chi_rad"] = cfg.omega_chi_rad;
    j["n_max"] = cfg.trunc.n_max;
    j["tail_tol"] = cfg.trunc.tail_tol;
    j["term_tol"] = cfg.series.term_tol;
    j["variant"] = std::string(to_string(cfg.variant));
    return j;
}

PhysicalConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("config: top level must be a JSON object");
    PhysicalConfig cfg;
    for (const auto& [key, v] : j.items()) {
        if (key == "t_cav_s") cfg.t_cav_s = require_number(v, key);
        else if (key == "tau_s") cfg.tau_s = require_number(v, key);
        else if (key == "nbar") cfg.nbar = require_number(v, key);
        else if (key == "eta") cfg.eta = require_number(v, key);
        else if (key == "v_ref_mps") cfg.v_ref_mps = require_number(v, key);
        else if (key == "v_observed_ref") cfg.v_observed_ref = require_number(v, key);
        else if (key == "omega_chi_rad") cfg.omega_chi_rad = require_number(v, key);
        else if (key == "tail_tol") cfg.trunc.tail_tol = require_number(v, key);
        else if (key == "term_tol") cfg.series.term_tol = require_number(v, key);
        else if (key == "n_max") {
            if (!v.is_number_integer()) throw ValidationError("config: 'n_max' must be an integer");
            cfg.trunc.n_max = v.get<int>();
        } else if (key == "variant") {
            if (!v.is_string()) throw ValidationError("config: 'variant' must be a string");
            try {
                cfg.variant = variant_choice_from_string(v.get<std::string>());
            } catch (const DomainError& e) {
                throw ValidationError(std::string("config: ") + e.what());
            }
        } else {
            throw ValidationError("config: unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

PhysicalConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("config: invalid JSON: ") + e.what());
    }
    return config_from_json(j);
}

std::string config_schema() {
    const PhysicalConfig d;
    std::ostringstream os;
    os << "Config file: JSON object, every key optional.\n"
       << "  t_cav_s        number  photon damping time [s]            (default " << format_number(d.t_cav_s) << ")\n"
       << "  tau_s          number  wait between pulses [s]            (default " << format_number(d.tau_s) << ")\n"
       << "  nbar           number  bath mean occupation, [0, 1)       (default " << format_number(d.nbar) << ")\n"
       << "  eta            number  detection factor, [0, 1]           (default " << format_number(d.eta) << ")\n"
       << "  v_ref_mps      number  reference atomic velocity [m/s]    (default " << format_number(d.v_ref_mps) << ")\n"
       << "  v_observed_ref number  visibility observed at v_ref       (default " << format_number(d.v_observed_ref) << ")\n"
       << "  omega_chi_rad  number  second-pulse area Omega*chi [rad]  (default pi/4)\n"
       << "  n_max          integer highest Fock level kept            (default " << d.trunc.n_max << ")\n"
       << "  tail_tol       number  admissible truncated probability   (default " << format_number(d.trunc.tail_tol) << ")\n"
       << "  term_tol       number  series term threshold, (0, 1e-6]   (default " << format_number(d.series.term_tol) << ")\n"
       << "  variant        string  A | B | C | auto                   (default auto)\n";
    return os.str();
}

SeriesVariant resolve_variant(const PhysicalConfig& cfg, VariantSelection* selection) {
    switch (cfg.variant) {
    case VariantChoice::A: return SeriesVariant::A;
    case VariantChoice::B: return SeriesVariant::B;
    case VariantChoice::C: return SeriesVariant::C;
    case VariantChoice::Auto: break;
    }
    static std::mutex mu;
    static std::map<std::pair<double, double>, VariantSelection> cache;
    const std::pair<double, double> key{cfg.omega_chi_rad, cfg.series.term_tol};
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, select_variant(cfg.series, cfg.omega_chi_rad)).first;
    }
    if (selection) *selection = it->second;
    return it->second.winner;
}

std::vector<double> default_setup1_grid() { return {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}; }

std::vector<double> default_velocity_grid() { return {500.0, 200.0, 50.0, 10.0}; }

ScanReport run_setup1(const std::vector<double>& n_values, const PhysicalConfig& cfg, int phi_points,
                      std::optional<double> fringe_n) {
    cfg.validate();
    if (n_values.empty()) throw ValidationError("setup1: empty photon-number grid");
    if (phi_points < 8) throw ValidationError("setup1: phi_points must be >= 8");
    const JCParams jc{};
    const DetectionModel det{cfg.eta};

    ScanReport rep;
    rep.scenario = "setup1";
    rep.columns = {"N", "omega_t_pi_half", "n_plus", "n_minus", "pi_half_residual", "visibility", "visibility_eta"};
    for (double n : n_values) {
        const TruncationConfig trunc = truncation_for_coherent(n, cfg.trunc);
        const Setup1Point p = setup1_point(n, jc, trunc);
        const BranchStates br = branch_states(cplx{std::sqrt(n), 0.0}, p.pulse_time, jc, trunc);
        const double residual =
            std::max(std::abs(br.excited.norm2() - 0.5), std::abs(br.ground.norm2() - 0.5));
        rep.rows.push_back({n, p.pulse_time * jc.omega, p.n_plus, p.n_minus, residual, p.visibility,
                            apply_detection(p.visibility, det)});
    }

    const double chosen = fringe_n.value_or(n_values.back());
    const TruncationConfig trunc = truncation_for_coherent(chosen, cfg.trunc);
    const std::vector<double> grid = uniform_phi_grid(phi_points);
    const FringePattern fringe = fringe_scan_setup1(cplx{std::sqrt(chosen), 0.0}, jc, trunc, grid);
    ojson f;
    f["N"] = chosen;
    f["visibility"] = round12(fringe.visibility);
    f["visibility_eta"] = round12(apply_detection(std::clamp(fringe.visibility, 0.0, 1.0), det));
    ojson phis = ojson::array();
    ojson pgs = ojson::array();
    for (const FringeSample& s : fringe.samples) {
        phis.push_back(round12(s.phi));
        pgs.push_back(round12(s.p_g));
    }
    f["phi"] = std::move(phis);
    f["p_g"] = std::move(pgs);
    rep.extras["fringe"] = f;
    rep.summary["eta"] = cfg.eta;
    rep.summary["fringe_N"] = chosen;
    rep.summary["fringe_visibility"] = round12(fringe.visibility);

    ojson prov;
    prov["config"] = config_to_json(cfg);
    prov["units"] = "JC times in units of 1/Omega";
    prov["root_residual_tol"] = 1e-10;
    rep.provenance = prov;
    return rep;
}

ScanReport run_setup2(const PhysicalConfig& cfg, int phi_points) {
    cfg.validate();
    if (phi_points < 16) throw ValidationError("setup2: phi_points must be >= 16");
    const double T = cfg.T();
    const SeriesVariant variant = resolve_variant(cfg);
    const DetectionModel det{cfg.eta};
    const std::vector<double> grid = uniform_phi_grid(phi_points);

    const FringePattern zero_temp = oracle_setup2_fringe(T, 0.0, grid, zero_temp_oracle_settings(cfg.omega_chi_rad));

    const bool thermal = cfg.nbar > 0.0;
    double pc = 0.0;
    double po = 0.0;
    if (thermal) {
        SeriesConfig sc = cfg.series;
        sc.variant = variant;
        pc = pg_constant(T, cfg.nbar, cfg.omega_chi_rad, sc);
        po = pg_oscillatory(T, cfg.nbar, cfg.omega_chi_rad, sc);
    }

    ScanReport rep;
    rep.scenario = "setup2";
    rep.columns = {"phi", "p_g_zero_temp", "p_g_zero_temp_closed", "p_g_thermal_series"};
    for (const FringeSample& s : zero_temp.samples) {
        const double closed = setup2_pg(s.phi, T);
        // In the Stark-phase convention the series fringe peaks at phi = 0.
        const double series = thermal ? pc + po * std::cos(s.phi) : s.p_g;
        rep.rows.push_back({s.phi, s.p_g, closed, series});
    }

    const double v_closed = zero_temp_visibility_closed_form(T);
    const double v_model = thermal ? model_visibility(T, cfg, variant) : zero_temp.visibility;
    const double v_model_oracle =
        thermal ? oracle_setup2_visibility(T, cfg.nbar, kOraclePhiPoints,
                                           thermal_oracle_settings(cfg.nbar, cfg.omega_chi_rad, cfg.trunc.tail_tol))
                : zero_temp.visibility;

    auto& s = rep.summary;
    s["T"] = round12(T);
    s["nbar"] = cfg.nbar;
    s["eta"] = cfg.eta;
    s["thermal_model"] = model_name(cfg, variant);
    s["v_zero_temp_oracle"] = round12(zero_temp.visibility);
    s["v_zero_temp_oracle_eta"] = round12(apply_detection(std::clamp(zero_temp.visibility, 0.0, 1.0), det));
    s["v_zero_temp_closed_form"] = round12(v_closed);
    s["v_zero_temp_closed_form_eta"] = round12(apply_detection(v_closed, det));
    s["v_thermal"] = round12(v_model);
    s["v_thermal_eta"] = round12(apply_detection(std::clamp(v_model, 0.0, 1.0), det));
    s["v_thermal_oracle"] = round12(v_model_oracle);
    s["v_thermal_oracle_eta"] = round12(apply_detection(std::clamp(v_model_oracle, 0.0, 1.0), det));
    if (thermal) {
        s["p_g_constant"] = round12(pc);
        s["p_g_oscillatory"] = round12(po);
    }
    rep.provenance = provenance(cfg, variant);
    return rep;
}

ScanReport run_fig4(const std::vector<double>& t_grid, const PhysicalConfig& cfg) {
    cfg.validate();
    if (t_grid.empty()) throw ValidationError("fig4: empty T grid");
    for (double T : t_grid) {
        if (!(T >= 0.0)) throw ValidationError("fig4: T values must be >= 0");
    }
    const SeriesVariant variant = resolve_variant(cfg);
    ScanReport rep;
    rep.scenario = "fig4";
    rep.columns = {"T", "v_zero_temp", "v_zero_temp_oracle", "v_thermal"};
    ojson eta_zero = ojson::array(), eta_oracle = ojson::array(), eta_thermal = ojson::array();
    const DetectionModel det{cfg.eta};
    for (double T : t_grid) {
        const double closed = zero_temp_visibility_closed_form(T);
        const double oracle = zero_temp_oracle_visibility(T, cfg.omega_chi_rad);
        const double therm = model_visibility(T, cfg, variant);
        rep.rows.push_back({T, closed, oracle, therm});
        eta_zero.push_back(round12(apply_detection(closed, det)));
        eta_oracle.push_back(round12(apply_detection(std::clamp(oracle, 0.0, 1.0), det)));
        eta_thermal.push_back(round12(apply_detection(therm, det)));
    }
    rep.extras["eta_scaled"] = ojson{{"v_zero_temp", eta_zero},
                                     {"v_zero_temp_oracle", eta_oracle},
                                     {"v_thermal", eta_thermal}};
    rep.summary["nbar"] = cfg.nbar;
    rep.summary["eta"] = cfg.eta;
    rep.summary["thermal_model"] = model_name(cfg, variant);
    rep.provenance = provenance(cfg, variant);
    return rep;
}

ScanReport run_velocity_scan(const std::vector<double>& velocities, const PhysicalConfig& cfg) {
    cfg.validate();
    if (velocities.empty()) throw ValidationError("velocity-scan: empty velocity list");
    for (double v : velocities) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("velocity-scan: velocities must be > 0");
    }
    const SeriesVariant variant = resolve_variant(cfg);
    const DetectionModel det{cfg.eta};
    const double T_ref = cfg.T();
    const OracleSettings th = thermal_oracle_settings(cfg.nbar, cfg.omega_chi_rad, cfg.trunc.tail_tol);

    const double v_model_ref = model_visibility(T_ref, cfg, variant);
    const double v_oracle_ref = oracle_setup2_visibility(T_ref, cfg.nbar, kOraclePhiPoints, th);
    const double v_zero_closed_ref = zero_temp_visibility_closed_form(T_ref);
    const double v_zero_oracle_ref = zero_temp_oracle_visibility(T_ref, cfg.omega_chi_rad);
    const double r = cfg.v_observed_ref / v_model_ref;
    const double r_oracle = cfg.v_observed_ref / v_oracle_ref;
    const double r_zero_closed = cfg.v_observed_ref / v_zero_closed_ref;
    const double r_zero_oracle = cfg.v_observed_ref / v_zero_oracle_ref;

    ScanReport rep;
    rep.scenario = "velocity-scan";
    rep.columns = {"v_mps", "T", "v_thermal", "v_thermal_eta", "v_predicted", "v_pred_thermal_oracle",
                   "v_pred_zero_temp_closed", "v_pred_zero_temp_oracle"};
    for (double v : velocities) {
        if (v == cfg.v_ref_mps) {
            rep.rows.push_back({v, T_ref, v_model_ref, apply_detection(v_model_ref, det), cfg.v_observed_ref,
                                cfg.v_observed_ref, cfg.v_observed_ref, cfg.v_observed_ref});
            continue;
        }
        const double T = T_ref * (cfg.v_ref_mps / v);
        const double vm = model_visibility(T, cfg, variant);
        const double vo = oracle_setup2_visibility(T, cfg.nbar, kOraclePhiPoints, th);
        rep.rows.push_back({v, T, vm, apply_detection(vm, det), r * vm, r_oracle * vo,
                            r_zero_closed * zero_temp_visibility_closed_form(T),
                            r_zero_oracle * zero_temp_oracle_visibility(T, cfg.omega_chi_rad)});
    }
    auto& s = rep.summary;
    s["T_ref"] = round12(T_ref);
    s["v_ref_mps"] = cfg.v_ref_mps;
    s["v_observed_ref"] = cfg.v_observed_ref;
    s["thermal_model"] = model_name(cfg, variant);
    s["v_thermal_ref"] = round12(v_model_ref);
    s["r"] = round12(r);
    s["r_thermal_oracle"] = round12(r_oracle);
    s["r_zero_temp_closed"] = round12(r_zero_closed);
    s["r_zero_temp_oracle"] = round12(r_zero_oracle);
    rep.provenance = provenance(cfg, variant);
    return rep;
}

std::vector<double> parse_range(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw ValidationError("range '" + text + "' must look like start:stop:step");
    }
    const std::string_view sv(text);
    const double start = parse_double(sv.substr(0, c1));
    const double stop = parse_double(sv.substr(c1 + 1, c2 - c1 - 1));
    const double step = parse_double(sv.substr(c2 + 1));
    if (!(step > 0.0) || !(stop >= start)) throw ValidationError("range '" + text + "' needs step > 0 and stop >= start");
    const double count = (stop - start) / step;
    const auto n = static_cast<long>(std::llround(count));
    if (std::abs(count - static_cast<double>(n)) > 1e-9 * std::max(1.0, count)) {
        throw ValidationError("range '" + text + "': (stop - start) is not a multiple of step");
    }
    if (n > 1000000) throw ValidationError("range '" + text + "' has too many points");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n + 1));
    for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

std::vector<SelfCheck> run_selftest(const PhysicalConfig& cfg) {
    cfg.validate();
    std::vector<SelfCheck> out;
    auto add = [&out](std::string name, double value, double tol) {
        out.push_back({std::move(name), value, tol, value < tol});
    };

    // Closed-form zero-temperature wait against the integrator.
    double worst = 0.0;
    for (double T : {0.001, 0.008, 0.1, 0.4, 1.0}) {
        const double phi = 0.7;
        const TruncationConfig trunc{4, 1e-10};
        JointVector psi = JointVector::zero(trunc.n_max);
        psi.at(Level::e, 0) = 1.0 / std::sqrt(2.0);
        psi.at(Level::g, 1) = std::polar(1.0 / std::sqrt(2.0), phi);
        const JointDensity num = evolve_master(projector(psi), T, ReservoirParams{1.0, 0.0});
        const JointDensity ana = zero_temp_wait(phi, T, trunc);
        worst = std::max(worst, (num.mat - ana.mat).cwiseAbs().maxCoeff());
    }
    add("zero-T wait: closed form vs integrator (max entry)", worst, 1e-8);

    worst = 0.0;
    for (double T : {0.0, 0.008, 0.4}) {
        for (double phi : {0.0, 1.0, 2.5, 4.0}) {
            const double num = oracle_setup2_pg(phi, T, 0.0, zero_temp_oracle_settings(kVacuumPiHalf));
            worst = std::max(worst, std::abs(num - setup2_pg(phi, T)));
        }
    }
    add("zero-T P_g: closed chain vs integrator chain", worst, 1e-8);

    add("zero-T visibility at T=0.008: closed form vs oracle",
        std::abs(zero_temp_visibility_closed_form(0.008) - zero_temp_oracle_visibility(0.008, kVacuumPiHalf)),
        0.005);

    worst = 0.0;
    double residual = 0.0;
    const std::vector<double> grid = uniform_phi_grid(16);
    for (double n : default_setup1_grid()) {
        const TruncationConfig trunc = truncation_for_coherent(n, cfg.trunc);
        const Setup1Point p = setup1_point(n, JCParams{}, trunc);
        const FringePattern f = fringe_scan_setup1(cplx{std::sqrt(n), 0.0}, JCParams{}, trunc, grid);
        worst = std::max(worst, std::abs(f.visibility - p.visibility));
        const BranchStates br = branch_states(cplx{std::sqrt(n), 0.0}, p.pulse_time, JCParams{}, trunc);
        residual = std::max({residual, std::abs(br.excited.norm2() - 0.5), std::abs(br.ground.norm2() - 0.5)});
    }
    add("setup1: 2|<ae|ag>| vs fringe-extracted visibility", worst, 1e-8);
    add("setup1: pi/2 condition residual", residual, 1e-9);

    SeriesConfig sc = cfg.series;
    sc.variant = SeriesVariant::C;
    const VisibilityOracle oracle = master_equation_oracle(cfg.omega_chi_rad);
    worst = 0.0;
    for (const GridPoint& p : default_selection_grid()) {
        worst = std::max(worst, std::abs(thermal_visibility(p.T, p.nbar, sc, cfg.omega_chi_rad) - oracle(p)));
    }
    add("thermal series (variant C) vs master-equation oracle", worst, 0.01);

    const std::vector<double> grid8 = uniform_phi_grid(8);
    const FringePattern fr =
        oracle_setup2_fringe(0.008, 0.7, grid8, thermal_oracle_settings(0.7, cfg.omega_chi_rad, cfg.trunc.tail_tol));
    double mean = 0.0;
    for (const FringeSample& s : fr.samples) mean += s.p_g;
    mean /= static_cast<double>(fr.samples.size());
    add("thermal constant part vs oracle fringe mean (T=0.008, nbar=0.7)",
        std::abs(pg_constant(0.008, 0.7, cfg.omega_chi_rad, sc) - mean), 1e-8);
    return out;
}

} // namespace ramsey
