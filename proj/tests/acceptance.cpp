// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Pass criterion numbers as arguments to run a subset.

#include "gst/carleson.hpp"
#include "gst/duality.hpp"
#include "gst/dyadic_grid.hpp"
#include "gst/entropy.hpp"
#include "gst/error.hpp"
#include "gst/fixtures.hpp"
#include "gst/inner_outer.hpp"
#include "gst/privalov.hpp"
#include "gst/roberts.hpp"
#include "gst/weights.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace gst;
namespace fx = gst::fixtures;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream summary;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const Weight kLinear = Weight::power(1.0);

// Results of criterion 3 that criteria 4 and 5 reuse.
struct RobertsRun {
  bool ran = false;
  std::vector<std::string> corona_failures;
  std::size_t corona_pieces = 0;
  double corona_min_ratio = std::numeric_limits<double>::infinity();
  double corona_seconds = 0.0;
  std::optional<EntropyResult> triadic_carrier;
};
RobertsRun g_roberts;

void moment_lemma(Verdict& v) {
  const auto t0 = Clock::now();
  std::size_t checked = 0;
  double worst = 0.0;
  for (const auto& [name, w] : builtin_majorants())
    for (int n : {4, 16, 64, 256, 1024}) {
      const auto m = moment_check(w, n);
      v.require(m.ok, name + " n=" + std::to_string(n));
      worst = std::max(worst, m.sup / m.bound);
      ++checked;
    }
  const double t = seconds_since(t0);
  v.require(t < 1.0, "runtime above 1 s");
  v.summary << checked << " cases, max sup/bound " << worst;
}

void lower_bound(Verdict& v) {
  const auto t0 = Clock::now();
  const auto samples = radial_angular_samples(16, 16);
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& [name, mu] : fx::measures()) {
    const auto r = lower_bound_check(mu, samples, 1e-12);
    v.require(r.ok && r.samples == 256, name);
    margin = std::min(margin, r.min_margin);
  }
  v.require(seconds_since(t0) < 30.0, "runtime above 30 s");
  v.summary << "256 samples x 4 measures, min margin " << margin;
}

void roberts(Verdict& v) {
  const DyadicGrid grid{{4, 12, 36}, 3.0, 1.0};
  const double c = 0.1;
  double decompose_time = 0.0;
  double worst_defect = 0.0, worst_ledger_ratio = 0.0, worst_heavy = 0.0;
  g_roberts = RobertsRun{};
  g_roberts.ran = true;
  for (const auto& [name, mu] : fx::measures()) {
    const auto t0 = Clock::now();
    const auto d = decompose(mu, grid, c, kLinear, 2);
    decompose_time += seconds_since(t0);

    v.require(d.heavy_bound_ok, name + ": heavy arc above threshold");
    v.require(d.mass_defect <= 1e-9, name + ": mass defect");
    v.require(d.nested, name + ": heavy sets not nested");
    v.require(d.light_ledger_total <= d.carrier_entropy_bound, name + ": light ledger");
    worst_defect = std::max(worst_defect, d.mass_defect);
    if (d.carrier_entropy_bound > 0.0)
      worst_ledger_ratio = std::max(worst_ledger_ratio, d.light_ledger_total / d.carrier_entropy_bound);
    for (const auto& L : d.levels) worst_heavy = std::max(worst_heavy, L.max_heavy_ratio);

    // Corona datum on every piece of this run.
    const auto tc = Clock::now();
    for (std::size_t k = 0; k < d.pieces.size(); ++k) {
      const auto cor = corona_datum_check(d.pieces[k], grid.depths[k], c, kLinear, 64);
      ++g_roberts.corona_pieces;
      if (!cor.ok) g_roberts.corona_failures.push_back(name + " k=" + std::to_string(k));
      g_roberts.corona_min_ratio = std::min(g_roberts.corona_min_ratio, cor.min_combined / cor.bound);
    }
    g_roberts.corona_seconds += seconds_since(tc);
    if (name == "triadic-cantor") g_roberts.triadic_carrier = entropy_sum(d.residual_carrier, kLinear);
  }
  v.require(decompose_time < 60.0, "decomposition time above 60 s");
  v.summary << "max mu_k(I)/threshold " << worst_heavy << ", max defect " << worst_defect
            << ", max ledger/bound " << worst_ledger_ratio << ", decompose " << decompose_time
            << " s";
}

void residual_dichotomy(Verdict& v) {
  const DyadicGrid grid{{4, 6, 8, 10, 12, 14, 16}, 3.0, 1.0};
  const CircleMeasure mu = fx::divergent_cantor_measure();
  std::vector<double> residual;
  for (int k_max : {2, 4, 6}) residual.push_back(decompose(mu, grid, 0.1, kLinear, k_max).residual_mass);
  for (std::size_t i = 1; i < residual.size(); ++i)
    v.require(residual[i] < residual[i - 1], "divergent residual not decreasing");
  v.summary << "divergent residual " << residual[0] << " > " << residual[1] << " > " << residual[2];

  if (!g_roberts.triadic_carrier) {
    const DyadicGrid g3{{4, 12, 36}, 3.0, 1.0};
    g_roberts.triadic_carrier =
        entropy_sum(decompose(fx::triadic_measure(), g3, 0.1, kLinear, 2).residual_carrier, kLinear);
  }
  v.require(g_roberts.triadic_carrier->tag == SeriesTag::finite, "triadic carrier entropy not finite");
  v.summary << "; triadic carrier entropy " << to_string(g_roberts.triadic_carrier->tag);
}

void corona(Verdict& v) {
  if (!g_roberts.ran) {
    Verdict pieces_only;
    roberts(pieces_only);
  }
  for (const auto& f : g_roberts.corona_failures) v.require(false, f);
  v.require(g_roberts.corona_pieces == 12, "expected 12 pieces");
  v.summary << g_roberts.corona_pieces << " pieces, min (inf|S|+|z|^2^n)/bound "
            << g_roberts.corona_min_ratio << ", checked in " << g_roberts.corona_seconds
            << " s during criterion 3";
}

void grid_lemma(Verdict& v) {
  std::size_t grids = 0;
  for (const auto& [name, w] : builtin_majorants())
    for (int n0 : {4, 8})
      for (double C : {3.0, 5.0}) {
        std::optional<DyadicGrid> g;
        for (int k = 4; k >= 1 && !g; --k) {
          try {
            g = build_grid(w, n0, C, k);
          } catch (const ConstructionFailed&) {
          }
        }
        const std::string tag = name + " n0=" + std::to_string(n0) + " C=" + std::to_string(C);
        if (!g) {
          v.require(false, tag + ": no grid");
          continue;
        }
        const auto r = verify_grid(*g, w);
        v.require(r.is_w_grid && r.superlacunary && r.ratio_window_ok, tag + ": flags");
        v.require(r.geometric_sum_ok, tag + ": geometric sum");
        ++grids;
      }
  v.summary << grids << " grids verified";
}

void entropy_equivalence(Verdict& v) {
  std::size_t compared = 0;
  for (const auto& [wname, w] : builtin_majorants()) {
    const double lam = *w.lambda_hint();
    for (const auto& [sname, E] : fx::entropy_sets()) {
      const auto S = entropy_sum(E, w);
      const auto I = entropy_integral(E, w, 10);
      const std::string tag = wname + " on " + sname;
      v.require(S.tag == I.tag, tag + ": tags differ");
      if (S.tag == SeriesTag::finite && I.tag == SeriesTag::finite) {
        const double half = 0.5 * I.value;
        v.require(half <= 0.5 * S.upper + 1e-9 && half >= 0.5 * S.lower - (1.0 + std::numbers::ln2) / lam - 1e-9,
                  tag + ": outside slack");
      }
      ++compared;
    }
  }
  v.summary << compared << " (weight, set) pairs, 6 sets";
}

void carleson_privalov(Verdict& v) {
  std::vector<std::vector<Complex>> monomials;
  for (int k = 0; k <= 32; ++k) {
    std::vector<Complex> q(static_cast<std::size_t>(k) + 1, 0.0);
    q.back() = 1.0;
    monomials.push_back(std::move(q));
  }
  for (const auto& [ename, E] : {std::pair{"point", fx::point_set()}, std::pair{"triadic", fx::triadic_set()}})
    for (const auto& [wname, w] : {std::pair{"t", Weight::power(1.0)}, std::pair{"t^1/2", Weight::power(0.5)}}) {
      const PrivalovDomain D(E);
      const auto ac = auto_carleson(D, w, 4096);
      const std::string tag = std::string(ename) + "/" + wname;
      v.require(ac.estimate.ok && ac.estimate.samples >= 4096, tag + ": boundary estimate");
      const auto emb = embedding_check(D, ac.G, monomials, w, 4096);
      for (std::size_t k = 0; k < emb.size(); ++k)
        v.require(emb[k].ok, tag + ": embedding z^" + std::to_string(k));
      v.summary << tag << " N=" << ac.G.N() << " ";
    }
}

void duality(Verdict& v) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 1.0);
  auto poly = [&](int d) {
    std::vector<Complex> c(static_cast<std::size_t>(d) + 1);
    for (auto& x : c) x = Complex(g(rng), g(rng));
    return c;
  };
  double green = 0.0;
  for (int dg = 0; dg <= 8; ++dg)
    for (int df = 0; df <= 8; ++df)
      for (double r : {0.5, 0.9, 0.99}) {
        const auto res = green_identity_check(poly(dg), poly(df), r);
        v.require(res.ok, "green identity deg " + std::to_string(dg) + "," + std::to_string(df));
        green = std::max(green, res.oracle_error);
      }

  const auto z3 = DiscFunction::polynomial({0.0, 0.0, 0.0, 1.0});
  const auto B = DiscFunction::blaschke({{0.5, Complex(0.2, 0.7), Complex(-0.6, -0.3)}, 0.0});
  const double k1 = kernel_reproducing_check({z3, 0.3}, -0.2, 1 << 12).error;
  const double k2 = kernel_reproducing_check({B, Complex(0.1, 0.2)}, Complex(-0.4, 0.3), 1 << 12).error;
  v.require(k1 <= 1e-6 && k2 <= 1e-6, "kernel reproducing");

  const auto z2 = DiscFunction::polynomial({0.0, 0.0, 1.0});
  const double o1 =
      orthogonal_decomposition_check(z2, DiscFunction::blaschke({{0.5}, 0.0}), Complex(0.3, -0.2), 0.4, 1 << 12).error;
  const double o2 = orthogonal_decomposition_check(z2, DiscFunction::atomic_inner({{0.0, 1.0}}),
                                                   Complex(0.2, 0.1), -0.3, 1 << 14)
                        .error;
  v.require(o1 <= 1e-5 && o2 <= 1e-5, "orthogonal decomposition");

  const auto z = DiscFunction::polynomial({0.0, 1.0});
  const auto half = fw_norm(z, Weight::power(0.5));
  const auto lin = fw_norm(z, Weight::power(1.0));
  v.require(half.tag == SeriesTag::finite && std::abs(half.value - 8.0 / 3.0) <= 1e-4, "fw_norm t^1/2");
  v.require(lin.tag == SeriesTag::diverges, "fw_norm t");

  v.summary << "green oracle err " << green << ", kernel err " << std::max(k1, k2)
            << ", orthogonality " << std::max(o1, o2) << ", fw_norm " << half.value;
}

void weight_diagnostics(Verdict& v) {
  for (const auto& [name, w] : a1_family()) v.require(check_A1(w, 30).ok, "A1 " + name);
  v.require(!check_A1(Weight::exp_exp_inverse(), 30).ok, "A1 accepts exp(-exp(1/t))");
  v.require(check_A2(Weight::power(0.5), 0.5, 20).ok, "A2 t^1/2");
  v.require(!check_A2(Weight::log_power(1.0), 1.0, 20).ok, "A2 accepts log^-1");
  for (const auto& [name, w] : {std::pair{"t", Weight::power(1.0)}, std::pair{"t^1/2", Weight::power(0.5)},
                                std::pair{"t^2", Weight::power(2.0)}}) {
    const auto a = check_condition_a(w, 64);
    const auto b = check_condition_b(w, 30);
    v.require(a.ok && std::isfinite(a.C1), std::string("condition (a) ") + name);
    v.require(b.ok && std::isfinite(b.C2), std::string("condition (b) ") + name);
  }
  v.summary << a1_family().size() << " (A1) weights";
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Verdict&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  const std::vector<Criterion> criteria{
      {1, "moment lemma", moment_lemma},
      {2, "lower bound with constant 6", lower_bound},
      {3, "Roberts decomposition", roberts},
      {4, "residual dichotomy", residual_dichotomy},
      {5, "corona datum", corona},
      {6, "grid lemma", grid_lemma},
      {7, "entropy equivalence", entropy_equivalence},
      {8, "Carleson outer function on Privalov domains", carleson_privalov},
      {9, "duality layer", duality},
      {10, "weight diagnostics", weight_diagnostics},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    Verdict v;
    const auto t0 = Clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double t = seconds_since(t0);
    std::printf("criterion %2d %s  %s: %s (%.2f s)\n", c.id, v.pass ? "PASS" : "FAIL", c.title,
                v.summary.str().c_str(), t);
    for (const auto& f : v.failures) std::printf("    failed: %s\n", f.c_str());
    std::fflush(stdout);
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
