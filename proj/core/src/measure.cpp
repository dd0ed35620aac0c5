#include "gst/measure.hpp"

#include "gst/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gst {

namespace {

constexpr int kMaxDepth = 62;

// A cylinder is unresolved once its children fall below the spacing of
// doubles near its position.
bool unresolved(double rel_lo, double len, double child) {
  return child < 8.0 * std::numeric_limits<double>::epsilon() * (rel_lo + len);
}

void validate_layer(const MultiplierLayer& l) {
  if (l.depth < 0 || l.depth > kMaxDepth) throw ParameterError("layer depth out of range");
  if (!(l.default_factor >= 0.0 && l.default_factor <= 1.0 + 1e-12))
    throw ParameterError("layer default factor must lie in [0, 1]");
  if (l.index.size() != l.factor.size()) throw ParameterError("layer index/factor size mismatch");
  if (!l.entry_mass.empty() && l.entry_mass.size() != l.index.size())
    throw ParameterError("layer entry mass size mismatch");
  const std::uint64_t n = std::uint64_t{1} << l.depth;
  for (std::size_t i = 0; i < l.index.size(); ++i) {
    if (l.index[i] >= n) throw ParameterError("layer index exceeds 2^depth");
    if (i > 0 && l.index[i] <= l.index[i - 1])
      throw ParameterError("layer indices must be strictly increasing");
    if (!(l.factor[i] >= 0.0 && l.factor[i] <= 1.0 + 1e-12))
      throw ParameterError("layer factor must lie in [0, 1]");
  }
}

}  // namespace

CircleMeasure::CircleMeasure(std::vector<Atom> atoms, std::vector<CantorPart> parts,
                             std::vector<MultiplierLayer> layers)
    : parts_(std::move(parts)) {
  for (auto& a : atoms) {
    if (!std::isfinite(a.pos) || !std::isfinite(a.mass) || a.mass < 0.0)
      throw ParameterError("atom needs finite position and nonnegative mass");
    if (a.mass == 0.0) continue;
    atoms_.push_back({wrap01(a.pos), a.mass});
  }
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& x, const Atom& y) { return x.pos < y.pos; });
  std::vector<Atom> merged;
  for (const auto& a : atoms_) {
    if (!merged.empty() && merged.back().pos == a.pos) merged.back().mass += a.mass;
    else merged.push_back(a);
  }
  atoms_ = std::move(merged);
  atom_prefix_.assign(atoms_.size() + 1, 0.0);
  for (std::size_t i = 0; i < atoms_.size(); ++i) atom_prefix_[i + 1] = atom_prefix_[i] + atoms_[i].mass;

  for (const auto& p : parts_) {
    if (!(p.mass > 0.0) || !std::isfinite(p.mass)) throw ParameterError("Cantor part mass must be positive");
    if (!(p.split > 0.0 && p.split < 1.0)) throw ParameterError("Cantor split must lie in (0, 1)");
    if (p.depth_limit < 1 || p.depth_limit > 4000) throw ParameterError("Cantor depth limit out of range");
    if (p.piece.hull.start < 0.0 || p.piece.hull.start >= 1.0 || !(p.piece.hull.length > 0.0) ||
        p.piece.hull.start + p.piece.hull.length > 1.0 + 1e-12)
      throw ParameterError("Cantor hull must be a non-wrapping arc");
  }

  std::sort(layers.begin(), layers.end(),
            [](const MultiplierLayer& a, const MultiplierLayer& b) { return a.depth < b.depth; });
  for (std::size_t i = 0; i < layers.size(); ++i) {
    validate_layer(layers[i]);
    if (i > 0 && layers[i].depth == layers[i - 1].depth)
      throw ParameterError("layer depths must be distinct");
  }
  auto data = std::make_shared<std::vector<LayerData>>();
  for (auto& l : layers) data->push_back({std::move(l), {}});
  layers_ = data;
  // Deeper layers first: entry masses of a layer are taken under everything below it.
  for (std::size_t li = data->size(); li-- > 0;) {
    LayerData& d = (*data)[li];
    const auto& L = d.layer;
    d.prefix.assign(L.index.size() + 1, 0.0);
    const double h = std::ldexp(1.0, -L.depth);
    for (std::size_t i = 0; i < L.index.size(); ++i) {
      double m;
      if (!L.entry_mass.empty()) {
        m = L.entry_mass[i];
      } else {
        const double a = static_cast<double>(L.index[i]) * h;
        m = layered_mass(li + 1, a, a + h, nullptr);
      }
      d.prefix[i + 1] = d.prefix[i] + (L.factor[i] - L.default_factor) * m;
    }
  }
}

CircleMeasure CircleMeasure::atom(double pos, double mass) { return CircleMeasure({{pos, mass}}, {}); }

CircleMeasure CircleMeasure::cantor(const CantorPart& part) { return CircleMeasure({}, {part}); }

std::vector<MultiplierLayer> CircleMeasure::layers() const {
  std::vector<MultiplierLayer> out;
  for (const auto& d : *layers_) out.push_back(d.layer);
  return out;
}

int CircleMeasure::deepest_layer() const {
  return layers_->empty() ? -1 : layers_->back().layer.depth;
}

double CircleMeasure::cantor_cdf(const CantorPart& part, double x, double* err) {
  const double a = part.piece.hull.start;
  const double L = part.piece.hull.length;
  const double pos = x - a;
  if (pos <= 0.0) return 0.0;
  if (pos >= L) return part.mass;
  double lo = 0.0;
  double len = L;
  double m = part.mass;
  double acc = 0.0;
  for (int n = 1;; ++n) {
    const double r = part.piece.schedule.gap_fraction(n);
    const double child = 0.5 * len * (1.0 - r);
    if (n > part.depth_limit || unresolved(lo, len, child)) {
      // Unresolved cylinder lumped at its left endpoint, which lies below x.
      if (err) *err += m;
      return acc + m;
    }
    if (pos < lo + child) {
      m *= part.split;
      len = child;
      continue;
    }
    acc += m * part.split;
    const double right = lo + len - child;
    if (pos <= right) return acc;
    m *= 1.0 - part.split;
    lo = right;
    len = child;
  }
}

double CircleMeasure::base_mass(double a, double b, double* err) const {
  if (!(b > a)) return 0.0;
  double s = 0.0;
  auto cmp = [](const Atom& at, double x) { return at.pos < x; };
  const auto i0 = std::lower_bound(atoms_.begin(), atoms_.end(), a, cmp) - atoms_.begin();
  const auto i1 = std::lower_bound(atoms_.begin(), atoms_.end(), b, cmp) - atoms_.begin();
  s += atom_prefix_[i1] - atom_prefix_[i0];
  for (const auto& p : parts_) {
    const double lo = p.piece.hull.start;
    const double hi = lo + p.piece.hull.length;
    if (b <= lo || a >= hi) continue;
    s += cantor_cdf(p, b, err) - cantor_cdf(p, a, err);
  }
  return s;
}

double CircleMeasure::layer_factor(const LayerData& d, std::uint64_t k) const {
  const auto& idx = d.layer.index;
  const auto it = std::lower_bound(idx.begin(), idx.end(), k);
  if (it != idx.end() && *it == k) return d.layer.factor[it - idx.begin()];
  return d.layer.default_factor;
}

double CircleMeasure::layered_mass(std::size_t level, double a, double b, double* err) const {
  if (!(b > a)) return 0.0;
  if (level >= layers_->size()) return base_mass(a, b, err);
  const LayerData& d = (*layers_)[level];
  const int D = d.layer.depth;
  const double scale = std::ldexp(1.0, D);
  const double h = 1.0 / scale;
  const std::uint64_t n = std::uint64_t{1} << D;
  const auto k0 = std::min(static_cast<std::uint64_t>(std::floor(a * scale)), n - 1);
  auto k1 = static_cast<std::uint64_t>(std::ceil(b * scale));
  k1 = std::min(k1 == 0 ? 0 : k1 - 1, n - 1);
  if (k0 >= k1) {
    const double f = layer_factor(d, k0);
    return f == 0.0 ? 0.0 : f * layered_mass(level + 1, a, b, err);
  }
  double result = 0.0;
  std::uint64_t full0 = k0;
  std::uint64_t full1 = k1;
  const double s0 = static_cast<double>(k0) * h;
  const double e1 = static_cast<double>(k1 + 1) * h;
  if (a > s0) {
    const double f = layer_factor(d, k0);
    if (f != 0.0) result += f * layered_mass(level + 1, a, s0 + h, err);
    ++full0;
  }
  if (b < e1) {
    const double f = layer_factor(d, k1);
    if (f != 0.0) result += f * layered_mass(level + 1, e1 - h, b, err);
    if (full1 == 0) return result;
    --full1;
  }
  if (full0 <= full1) {
    const double lo = static_cast<double>(full0) * h;
    const double hi = static_cast<double>(full1 + 1) * h;
    if (d.layer.default_factor != 0.0)
      result += d.layer.default_factor * layered_mass(level + 1, lo, hi, err);
    const auto& idx = d.layer.index;
    const auto i0 = std::lower_bound(idx.begin(), idx.end(), full0) - idx.begin();
    const auto i1 = std::upper_bound(idx.begin(), idx.end(), full1) - idx.begin();
    result += d.prefix[i1] - d.prefix[i0];
  }
  return std::max(result, 0.0);
}

double CircleMeasure::mass_between(double a, double b, double* err) const {
  a = std::clamp(a, 0.0, 1.0);
  b = std::clamp(b, 0.0, 1.0);
  return layered_mass(0, a, b, err);
}

double CircleMeasure::total_mass() const { return mass_between(0.0, 1.0); }

MassQuery CircleMeasure::mass_of_arc(const Arc& arc, double eps) const {
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  MassQuery q;
  if (arc.length >= 1.0) {
    q.mass = mass_between(0.0, 1.0, &q.err);
  } else {
    const double s = wrap01(arc.start);
    const double e = s + arc.length;
    if (e <= 1.0) {
      q.mass = mass_between(s, e, &q.err);
    } else {
      q.mass = mass_between(s, 1.0, &q.err) + mass_between(0.0, e - 1.0, &q.err);
    }
  }
  q.certified = q.err <= eps;
  return q;
}

void CircleMeasure::base_cells(int depth, std::vector<std::uint64_t>& out) const {
  const double scale = std::ldexp(1.0, depth);
  const std::uint64_t n = std::uint64_t{1} << depth;
  auto index_of = [&](double x) {
    return std::min(static_cast<std::uint64_t>(std::floor(x * scale)), n - 1);
  };
  std::vector<std::uint64_t> cand;
  for (const auto& a : atoms_) cand.push_back(index_of(a.pos));
  const double h = 1.0 / scale;
  for (const auto& p : parts_) {
    struct Node {
      double lo;
      double len;
      int level;
    };
    std::vector<Node> stack{{0.0, p.piece.hull.length, 0}};
    const double a = p.piece.hull.start;
    while (!stack.empty()) {
      const Node nd = stack.back();
      stack.pop_back();
      const int next = nd.level + 1;
      const double r = p.piece.schedule.gap_fraction(next);
      const double child = 0.5 * nd.len * (1.0 - r);
      if (next > p.depth_limit || unresolved(nd.lo, nd.len, child)) {
        cand.push_back(index_of(a + nd.lo));
        continue;
      }
      if (nd.len < h) {
        const double x0 = a + nd.lo;
        const double x1 = a + nd.lo + nd.len;
        const std::uint64_t k0 = index_of(x0);
        const auto c = static_cast<std::uint64_t>(std::ceil(x1 * scale));
        const std::uint64_t k1 = std::min(c == 0 ? 0 : c - 1, n - 1);
        for (std::uint64_t k = k0; k <= std::max(k0, k1); ++k) cand.push_back(k);
        continue;
      }
      // Push right first so the left child is processed first.
      stack.push_back({nd.lo + nd.len - child, child, next});
      stack.push_back({nd.lo, child, next});
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  out = std::move(cand);
}

std::vector<Cell> CircleMeasure::cells(int depth) const {
  if (depth < 0 || depth > kMaxDepth) throw ParameterError("cell depth out of range");
  const int fine = std::max(depth, deepest_layer());
  std::vector<std::uint64_t> cand;
  base_cells(fine, cand);
  const double h = std::ldexp(1.0, -fine);
  const int shift = fine - depth;
  std::vector<Cell> out;
  for (std::uint64_t k : cand) {
    const double a = static_cast<double>(k) * h;
    const double m = layered_mass(0, a, a + h, nullptr);
    if (!(m > 0.0)) continue;
    const std::uint64_t parent = k >> shift;
    if (!out.empty() && out.back().index == parent) out.back().mass += m;
    else out.push_back({parent, m});
  }
  return out;
}

double CircleMeasure::factor_at(double x) const {
  double f = 1.0;
  for (const auto& d : *layers_) f *= layer_factor(d, dyadic_index(x, d.layer.depth));
  return f;
}

std::vector<Atom> CircleMeasure::effective_atoms() const {
  std::vector<Atom> out;
  for (const auto& a : atoms_) {
    const double m = a.mass * factor_at(a.pos);
    if (m > 0.0) out.push_back({a.pos, m});
  }
  return out;
}

CircleMeasure CircleMeasure::without_atoms() const {
  auto layers = this->layers();
  for (auto& l : layers) l.entry_mass.clear();
  return CircleMeasure({}, parts_, std::move(layers));
}

CircleMeasure CircleMeasure::scaled(double factor) const {
  if (!(factor >= 0.0)) throw ParameterError("scale factor must be nonnegative");
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) a.mass *= factor;
  std::vector<CantorPart> parts;
  for (auto p : parts_) {
    p.mass *= factor;
    if (p.mass > 0.0) parts.push_back(p);
  }
  auto layers = this->layers();
  for (auto& l : layers)
    for (auto& m : l.entry_mass) m *= factor;
  return CircleMeasure(std::move(atoms), std::move(parts), std::move(layers));
}

ClosedCircleSet CircleMeasure::carrier() const {
  std::vector<double> pts;
  for (const auto& a : effective_atoms()) pts.push_back(a.pos);
  if (parts_.empty()) {
    if (pts.empty()) return ClosedCircleSet::full_circle().clipped(0, {});
    return ClosedCircleSet::points(pts);
  }
  std::vector<Arc> hulls;
  std::vector<CantorPiece> pieces;
  for (const auto& p : parts_) {
    if (std::find(pieces.begin(), pieces.end(), p.piece) != pieces.end()) continue;
    pieces.push_back(p.piece);
    hulls.push_back(p.piece.hull);
  }
  std::sort(hulls.begin(), hulls.end(), [](const Arc& x, const Arc& y) { return x.start < y.start; });
  std::vector<Arc> gaps;
  for (std::size_t i = 0; i < hulls.size(); ++i) {
    const double end = hulls[i].end();
    const double next = i + 1 < hulls.size() ? hulls[i + 1].start : hulls[0].start + 1.0;
    if (next - end > 1e-15) gaps.push_back({wrap01(end), next - end});
  }
  ClosedCircleSet E(std::move(gaps), std::move(pieces));
  if (!layers_->empty()) {
    const int d = deepest_layer();
    std::vector<std::pair<std::uint64_t, std::uint64_t>> runs;
    for (const auto& c : without_atoms().cells(d)) {
      if (!runs.empty() && runs.back().second + 1 == c.index) runs.back().second = c.index;
      else runs.emplace_back(c.index, c.index);
    }
    E = E.clipped(d, std::move(runs));
  }
  if (!pts.empty()) E = E.with_points(pts);
  return E;
}

CircleMeasure operator+(const CircleMeasure& a, const CircleMeasure& b) {
  if (a.layer_count() > 0 || b.layer_count() > 0)
    throw ParameterError("sum of layered measures is not representable");
  std::vector<Atom> atoms = a.atoms();
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  std::vector<CantorPart> parts = a.cantor_parts();
  parts.insert(parts.end(), b.cantor_parts().begin(), b.cantor_parts().end());
  return CircleMeasure(std::move(atoms), std::move(parts));
}

MassQuery mass_of_arc(const CircleMeasure& mu, const Arc& arc, double eps) {
  return mu.mass_of_arc(arc, eps);
}

ModulusOfMeasure modulus_of_continuity(const CircleMeasure& nu, double delta, double eps,
                                       std::optional<int> depth) {
  if (!(delta > 0.0 && delta <= 1.0)) throw ParameterError("delta must lie in (0, 1]");
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  ModulusOfMeasure out;
  out.delta = delta;
  int d = depth.value_or(static_cast<int>(std::ceil(std::log2(1.0 / delta))) + 6);
  d = std::clamp(d, 1, 44);
  out.depth = d;
  const double total = nu.total_mass();
  if (total <= 0.0) return out;

  const auto cells = nu.cells(d);
  const std::uint64_t n = std::uint64_t{1} << d;
  const double span = delta * static_cast<double>(n);
  // An arc of length delta meets at most ceil(delta 2^d) + 1 consecutive cells.
  const auto m = static_cast<std::uint64_t>(std::ceil(span)) + 1;
  std::vector<std::pair<double, std::uint64_t>> windows;
  if (m >= n) {
    out.upper = total;
  } else {
    const std::size_t c = cells.size();
    std::vector<double> prefix(2 * c + 1, 0.0);
    for (std::size_t i = 0; i < 2 * c; ++i) prefix[i + 1] = prefix[i] + cells[i % c].mass;
    auto idx = [&](std::size_t i) { return cells[i % c].index + (i >= c ? n : 0); };
    std::size_t j = 0;
    for (std::size_t i = 0; i < c; ++i) {
      j = std::max(j, i);
      while (j < i + c && idx(j) <= idx(i) + m - 1) ++j;
      const double s = prefix[j] - prefix[i];
      windows.emplace_back(s, cells[i].index);
      out.upper = std::max(out.upper, s);
    }
    out.upper = std::min(out.upper, total);
  }

  std::vector<double> anchors;
  for (const auto& a : nu.effective_atoms()) anchors.push_back(a.pos);
  std::sort(windows.begin(), windows.end(), std::greater<>());
  const std::size_t keep = std::min<std::size_t>(windows.size(), 256);
  for (std::size_t i = 0; i < keep; ++i) {
    const double s = dyadic_start(windows[i].second, d);
    anchors.push_back(s);
    anchors.push_back(wrap01(s + std::ldexp(1.0, -d)));
  }
  if (windows.empty())
    for (const auto& cl : cells) anchors.push_back(dyadic_start(cl.index, d));
  for (double x : anchors) {
    const auto q = nu.mass_of_arc({x, delta}, eps);
    out.lower = std::max(out.lower, q.mass - q.err);
  }
  out.lower = std::min(out.lower, out.upper > 0.0 ? out.upper : total);
  return out;
}

CircleMeasure restrict(const CircleMeasure& mu, const ClosedCircleSet& E, double eps) {
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  if (E.is_full_circle()) return mu;
  std::vector<Atom> atoms;
  for (const auto& a : mu.atoms())
    if (E.contains(a.pos)) atoms.push_back(a);
  std::vector<CantorPart> parts;
  for (const auto& p : mu.cantor_parts()) {
    const auto& pieces = E.cantor_pieces();
    if (!E.clip() && std::find(pieces.begin(), pieces.end(), p.piece) != pieces.end()) {
      parts.push_back(p);
      continue;
    }
    bool in_gap = false;
    for (const auto& g : E.gaps()) {
      const double off = wrap01(p.piece.hull.start - g.start);
      if (off > 0.0 && off + p.piece.hull.length < g.length) in_gap = true;
    }
    if (in_gap) continue;
    throw ParameterError("restriction of a Cantor part that partially overlaps the set is not supported");
  }
  auto layers = mu.layers();
  for (auto& l : layers) l.entry_mass.clear();
  return CircleMeasure(std::move(atoms), std::move(parts), std::move(layers));
}

}  // namespace gst
