// Apache License, Version 2.0, refer to LICENSE.txt
#include "synmorph/log.hpp"

#include <iostream>

namespace synmorph {

namespace {

bool needs_quoting(const std::string& v) {
  return v.find(' ') != std::string::npos || v.find('\t') != std::string::npos || v.empty();
}

}  // namespace

void log_line(std::string_view event, const LogFields& fields) {
  std::ostream& out = std::cerr;
  out << "event=" << event;
  for (const auto& [key, value] : fields) {
    out << ' ' << key << '=';
    if (needs_quoting(value)) {
      out << '"' << value << '"';
    } else {
      out << value;
    }
  }
  out << '\n';
}

}  // namespace synmorph
