#include "ramsey/log.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace ramsey {
namespace {

std::mutex& sink_mutex() {
    static std::mutex m;
    return m;
}

WarningSink& active_sink() {
    static WarningSink sink = [](std::string_view msg) {
        std::cerr << "warning: " << msg << '\n';
    };
    return sink;
}

} // namespace

void warn(std::string_view message) {
    std::lock_guard lock(sink_mutex());
    if (active_sink()) active_sink()(message);
}

WarningSink set_warning_sink(WarningSink sink) {
    std::lock_guard lock(sink_mutex());
    return std::exchange(active_sink(), std::move(sink));
}

} // namespace ramsey
