#pragma once

// Reference implementations used only by tests. They share no evaluation
// code with the library: states are resolved by union-find over planar-code
// arcs and segment cycles by brute-force orbit closure.

#include <cstdint>
#include <random>
#include <vector>

#include "linkoid/diagram.hpp"
#include "linkoid/poly.hpp"

namespace oracle {

using linkoid::Diagram;
using linkoid::ExactPoly;

// Classes of labels 1..2n under the group generated by two involutions,
// found by repeatedly applying both until nothing new appears.
int orbit_closure_count(const std::vector<int>& j, const std::vector<int>& hl);

// Segment-cycle state sum expanded term by term.
ExactPoly bracket(const Diagram& d);
// Classical bracket of a link diagram, normalized so the unknot is 1.
ExactPoly link_bracket(const Diagram& d);
// Knotoid form for a single open component: sum of A^sigma d^circ.
ExactPoly knotoid_bracket(const Diagram& d);

ExactPoly jones(const Diagram& d);

// d = -A^2 - A^-2 raised to k by repeated multiplication.
ExactPoly d_pow(int k);

struct BraidSpec {
  int strands = 1;
  std::vector<int> word;
};

BraidSpec random_braid(std::mt19937_64& rng, int max_strands, int max_crossings);
// A pure braid: each generator pair sigma_i^{+-2} or a conjugate thereof.
BraidSpec random_pure_braid(std::mt19937_64& rng, int max_strands, int max_crossings);

// Random linkoid: braid with a random subset of positions closed, then up to
// `kinks` curls added at random places.
Diagram random_diagram(std::mt19937_64& rng, int max_strands, int max_crossings, int kinks = 0);

}  // namespace oracle
