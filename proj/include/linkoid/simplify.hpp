#pragma once

#include "linkoid/diagram.hpp"

namespace linkoid {

// bracket(original) = (-A^3)^twist * bracket(diagram). Writhe is not adjusted;
// normalize with the writhe of the original diagram.
struct SimplifyResult {
  Diagram diagram;
  int twist = 0;
  int kinks_removed = 0;
  int bigons_removed = 0;
};

// Repeatedly removes curls and reducible bigons until neither remains.
// Both reductions preserve the bracket up to the recorded twist.
SimplifyResult simplify(const Diagram& d);

}  // namespace linkoid
