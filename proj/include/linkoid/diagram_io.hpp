#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "linkoid/diagram.hpp"

namespace linkoid {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text format, one diagram per stanza:
//
//   linkoid v1
//   open 1: a1 X1.u a2 X2.o a3        # leg -> head walk, labels 1 and 2
//   open 2 (3,4): b1 X1.o b2 X2.u b3  # explicit (leg,head) labels
//   closed 1: c1 X3.o c2 X3.u         # cyclic walk; "closed 2: c3" is a bare circle
//   crossing X1: (a1 b2 a2 b1)        # arcs counterclockwise from incoming under
//   crossing X2: (b2 a3 b3 a2) sign=-1
//
// Crossing signs are derived from the quadruple; an explicit sign= must agree.
Diagram parse_diagram(std::string_view text);
std::string print_diagram(const Diagram& d);

nlohmann::json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const nlohmann::json& j);

// Reads either format, choosing JSON when the file starts with '{'.
Diagram read_diagram_file(const std::filesystem::path& path);

}  // namespace linkoid
