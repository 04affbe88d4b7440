// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace synmorph {

using LogFields = std::vector<std::pair<std::string, std::string>>;

/// Writes one "event=<name> key=value ..." line to stderr. Data never goes to
/// stderr, only diagnostics; declared output paths carry the data.
void log_line(std::string_view event, const LogFields& fields = {});

}  // namespace synmorph
