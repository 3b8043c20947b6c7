#pragma once

#include <functional>
#include <string>

namespace cochlea {

/// Receives non-fatal warnings (near-singular solves, high contrast, ...).
using WarningSink = std::function<void(const std::string&)>;

/// Installs a sink and returns the previous one. The default writes to stderr.
WarningSink set_warning_sink(WarningSink sink);
void warn(const std::string& message);

}  // namespace cochlea
