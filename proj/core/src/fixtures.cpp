#include "gst/fixtures.hpp"

namespace gst::fixtures {

CantorPiece triadic_piece() { return {{0.0, 1.0}, CantorSchedule::constant(1.0 / 3.0)}; }

CantorPiece divergent_piece() { return {{0.0, 1.0}, CantorSchedule::thin_then_harmonic(0.9, 4)}; }

ClosedCircleSet point_set() { return ClosedCircleSet::points({0.0}); }

ClosedCircleSet two_point_set() { return ClosedCircleSet::points({0.0, 0.5}); }

ClosedCircleSet triadic_set() { return ClosedCircleSet::cantor(triadic_piece()); }

ClosedCircleSet half_cantor_set() {
  return ClosedCircleSet::cantor({{0.0, 0.5}, CantorSchedule::constant(0.5)});
}

ClosedCircleSet log_squared_set() { return ClosedCircleSet::log_squared({0.0, 1.0}); }

ClosedCircleSet divergent_cantor_set() { return ClosedCircleSet::cantor(divergent_piece()); }

std::vector<NamedSet> entropy_sets() {
  return {{"point", point_set()},
          {"two-points", two_point_set()},
          {"triadic-cantor", triadic_set()},
          {"half-cantor", half_cantor_set()},
          {"log-squared-gaps", log_squared_set()},
          {"divergent-cantor", divergent_cantor_set()}};
}

CircleMeasure atom_measure() { return CircleMeasure::atom(0.0, 1.0); }

CircleMeasure two_atom_measure() { return CircleMeasure({{0.0, 0.5}, {0.5, 0.5}}, {}); }

CircleMeasure triadic_measure() { return CircleMeasure::cantor({triadic_piece(), 1.0, 0.5, 48}); }

CircleMeasure divergent_cantor_measure() {
  return CircleMeasure::cantor({divergent_piece(), 1.0, 0.5, 48});
}

std::vector<NamedMeasure> measures() {
  return {{"atom", atom_measure()},
          {"two-atoms", two_atom_measure()},
          {"triadic-cantor", triadic_measure()},
          {"divergent-cantor", divergent_cantor_measure()}};
}

}  // namespace gst::fixtures
