#pragma once

#include "gst/circle.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace gst {

struct Atom {
  double pos = 0.0;
  double mass = 0.0;
};

// Self-similar mass on a Cantor piece: each cylinder passes `split` of its mass
// to the left child. Cylinders beyond depth_limit are treated as point masses
// at their left endpoint, and the mass they carry is reported as query error.
struct CantorPart {
  CantorPiece piece;
  double mass = 1.0;
  double split = 0.5;
  int depth_limit = 48;
};

// Per-dyadic-arc multipliers at one depth. Arcs not listed get default_factor.
// entry_mass may be supplied with the mass each listed arc carries under the
// deeper layers; otherwise it is computed.
struct MultiplierLayer {
  int depth = 0;
  double default_factor = 1.0;
  std::vector<std::uint64_t> index;
  std::vector<double> factor;
  std::vector<double> entry_mass;
};

struct MassQuery {
  double mass = 0.0;
  double err = 0.0;
  bool certified = true;
};

struct Cell {
  std::uint64_t index = 0;
  double mass = 0.0;
};

// Positive finite singular measure: atoms plus Cantor parts, multiplied by a
// stack of dyadic layers with strictly increasing depths. The density of the
// result is the product of all layer factors at a point.
class CircleMeasure {
public:
  CircleMeasure() : CircleMeasure({}, {}) {}
  CircleMeasure(std::vector<Atom> atoms, std::vector<CantorPart> parts,
                std::vector<MultiplierLayer> layers = {});

  static CircleMeasure atom(double pos, double mass);
  static CircleMeasure cantor(const CantorPart& part);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<CantorPart>& cantor_parts() const { return parts_; }
  std::vector<MultiplierLayer> layers() const;
  std::size_t layer_count() const { return layers_->size(); }
  int deepest_layer() const;
  bool empty() const { return atoms_.empty() && parts_.empty(); }

  double total_mass() const;
  MassQuery mass_of_arc(const Arc& arc, double eps = 1e-12) const;
  // Mass of [a, b) with 0 <= a <= b <= 1, including layers.
  double mass_between(double a, double b, double* err = nullptr) const;

  // Nonzero dyadic cells at `depth`, sorted by index, masses from the layered
  // distribution function so that sums telescope.
  std::vector<Cell> cells(int depth) const;

  // Atoms with their layer factors applied; zero-mass atoms dropped.
  std::vector<Atom> effective_atoms() const;
  double factor_at(double x) const;

  CircleMeasure base() const { return CircleMeasure(atoms_, parts_); }
  CircleMeasure with_layers(std::vector<MultiplierLayer> layers) const {
    return CircleMeasure(atoms_, parts_, std::move(layers));
  }
  CircleMeasure without_atoms() const;
  CircleMeasure scaled(double factor) const;

  // Closed support candidate: atoms plus the Cantor pieces, clipped to the
  // nonzero cells of the deepest layer when layers are present.
  ClosedCircleSet carrier() const;

  // Distribution function of a Cantor part on its hull: mass of [hull.start, x).
  static double cantor_cdf(const CantorPart& part, double x, double* err);

private:
  struct LayerData {
    MultiplierLayer layer;
    std::vector<double> prefix;  // prefix sums of (factor - default) * entry_mass
  };

  double base_mass(double a, double b, double* err) const;
  double layered_mass(std::size_t level, double a, double b, double* err) const;
  double layer_factor(const LayerData& d, std::uint64_t k) const;
  void base_cells(int depth, std::vector<std::uint64_t>& out) const;

  std::vector<Atom> atoms_;
  std::vector<double> atom_prefix_;
  std::vector<CantorPart> parts_;
  std::shared_ptr<const std::vector<LayerData>> layers_;
};

CircleMeasure operator+(const CircleMeasure& a, const CircleMeasure& b);

struct ModulusOfMeasure {
  double delta = 0.0;
  double upper = 0.0;
  double lower = 0.0;
  int depth = 0;
};

MassQuery mass_of_arc(const CircleMeasure& mu, const Arc& arc, double eps);

// Two-sided bounds for sup{nu(I) : m(I) <= delta}. The upper bound sums the
// heaviest run of consecutive cells an arc of length delta can touch at the
// given depth; the lower bound evaluates actual arcs.
ModulusOfMeasure modulus_of_continuity(const CircleMeasure& nu, double delta, double eps,
                                       std::optional<int> depth = std::nullopt);

CircleMeasure restrict(const CircleMeasure& mu, const ClosedCircleSet& E, double eps);

}  // namespace gst
