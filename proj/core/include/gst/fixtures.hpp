#pragma once

#include "gst/circle.hpp"
#include "gst/measure.hpp"

#include <string>
#include <vector>

// Reference sets and measures shared by the tests, benchmarks and CLI.
namespace gst::fixtures {

CantorPiece triadic_piece();
// Gap ratio 0.9 for four levels, then 1/(n+2): the level lengths decay like
// 2^-n / n, so the set has infinite entropy for every power weight.
CantorPiece divergent_piece();

ClosedCircleSet point_set();
ClosedCircleSet two_point_set();
ClosedCircleSet triadic_set();
// Cantor set of ratio 1/2 on [0, 1/2] with the explicit gap (1/2, 1).
ClosedCircleSet half_cantor_set();
ClosedCircleSet log_squared_set();
ClosedCircleSet divergent_cantor_set();

struct NamedSet {
  std::string name;
  ClosedCircleSet set;
};
std::vector<NamedSet> entropy_sets();

CircleMeasure atom_measure();
CircleMeasure two_atom_measure();
CircleMeasure triadic_measure();
CircleMeasure divergent_cantor_measure();

struct NamedMeasure {
  std::string name;
  CircleMeasure measure;
};
std::vector<NamedMeasure> measures();

}  // namespace gst::fixtures
