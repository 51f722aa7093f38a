#pragma once

#include <vector>

#include "linkoid/diagram.hpp"

namespace linkoid {

// Diagram of a braid on `strands` strands read bottom to top. Generator +i
// crosses positions i and i+1 with the left strand over (a positive
// crossing); -i puts the right strand over. Strands run upward from their
// legs. Each position listed in `closed_positions` has its top joined to its
// bottom by an arc around the right-hand side. Open components are labelled
// (2j-1, 2j) in order of their leg position.
Diagram from_braid(int strands, const std::vector<int>& word,
                   const std::vector<int>& closed_positions = {});

// All positions closed.
Diagram braid_closure(int strands, const std::vector<int>& word);

}  // namespace linkoid
