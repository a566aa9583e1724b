// log.hpp — Minimal warning sink. Defaults to stderr; tests may redirect it.

#pragma once

#include <functional>
#include <string_view>

namespace ramsey {

using WarningSink = std::function<void(std::string_view)>;

void warn(std::string_view message);

// Replaces the active sink and returns the previous one.
WarningSink set_warning_sink(WarningSink sink);

} // namespace ramsey
