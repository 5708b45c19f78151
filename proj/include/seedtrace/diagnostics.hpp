#pragma once

#include <functional>
#include <string_view>

namespace seedtrace {

using WarningSink = std::function<void(std::string_view)>;

/// Library warnings go to stderr unless a sink is installed. Returns the
/// previous sink. Not synchronized: install before starting worker threads.
WarningSink set_warning_sink(WarningSink sink);

void warn(std::string_view message);

}  // namespace seedtrace
