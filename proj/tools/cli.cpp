#include "cli.hpp"

#include "gst/carleson.hpp"
#include "gst/duality.hpp"
#include "gst/dyadic_grid.hpp"
#include "gst/entropy.hpp"
#include "gst/error.hpp"
#include "gst/fixtures.hpp"
#include "gst/inner_outer.hpp"
#include "gst/parallel.hpp"
#include "gst/privalov.hpp"
#include "gst/roberts.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace gst::cli {

namespace {

using json = nlohmann::ordered_json;
using Complex = std::complex<double>;

enum class Status { ok, uncertified };

// JSON has no infinities; non-finite values become strings.
json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json complex_json(Complex z) { return json::array({num(z.real()), num(z.imag())}); }

json read_json(const std::string& spec) {
  // Inline JSON is accepted where it cannot be a path.
  if (!spec.empty() && (spec.front() == '[' || spec.front() == '{')) return json::parse(spec);
  std::ifstream in(spec);
  if (!in) throw ParameterError("cannot open " + spec);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParameterError(spec + ": " + e.what());
  }
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParameterError("not a number: " + s);
  }
  if (used != s.size()) throw ParameterError("not a number: " + s);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

Complex parse_point(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() == 1) return parse_number(parts[0]);
  if (parts.size() == 2) return {parse_number(parts[0]), parse_number(parts[1])};
  throw ParameterError("points are written re or re,im: " + s);
}

Complex json_complex(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  throw ParameterError("expected a number or [re, im] pair");
}

std::vector<int> parse_depths(const std::string& s) {
  std::vector<int> depths;
  for (const auto& p : split(s, ',')) depths.push_back(static_cast<int>(parse_number(p)));
  return depths;
}

CantorPiece cantor_from_json(const json& j) {
  const Arc hull{j.value("start", 0.0), j.value("length", 1.0)};
  return {hull, CantorSchedule::constant(j.at("ratio").get<double>())};
}

json entropy_json(const EntropyResult& r) {
  json j{{"tag", to_string(r.tag)}, {"value", num(r.value)}, {"lower", num(r.lower)},
         {"upper", num(r.upper)}};
  if (r.lambda) j["lambda"] = *r.lambda;
  if (!r.note.empty()) j["note"] = r.note;
  json partial = json::array();
  for (const auto& p : r.partial_sums) partial.push_back({{"terms", p.terms}, {"value", num(p.value)}});
  if (!partial.empty()) j["partial_sums"] = partial;
  return j;
}

json weight_json(const Weight& w) {
  json j{{"description", w.describe()}, {"kind", to_string(w.kind())}};
  if (auto h = w.lambda_hint()) j["lambda_hint"] = *h;
  return j;
}

struct Options {
  std::string weight = "t";
  std::string set = "triadic-cantor";
  std::string measure = "triadic-cantor";
  std::string grid;
  double c = 0.1;
  int kmax = 2;
  double eps = 1e-12;
  std::string out = "-";
  std::string csv;

  double alpha = 0.5;
  int depth = 12;
  int n0 = 4;
  double C = 3.0;
  std::vector<std::string> points;
  double N = 1.0;
  int count = 4096;
  int max_power = 32;
  int density = 32;
  int samples = 256;
  std::string g, f;
  int quad_depth = 48;
};

// ---- subcommands -------------------------------------------------------

Status cmd_weight(const Options& o, json& report) {
  const Weight w = parse_weight(o.weight);
  report["weight"] = weight_json(w);
  const auto mod = check_modulus_of_continuity(w, std::min(o.depth, 16));
  json mj{{"ok", mod.ok}, {"reason", mod.reason}};
  if (mod.witness) mj["witness"] = {mod.witness->first, mod.witness->second};
  report["modulus_of_continuity"] = mj;
  const auto lam = largest_majorant_lambda(w, {4, 2, 1, 0.5, 0.25, 0.125});
  report["majorant_lambda"] = lam ? json(*lam) : json(nullptr);

  const auto a1 = check_A1(w, o.depth);
  report["A1"] = {{"ok", a1.ok}, {"ratio_low", num(a1.ratio_low)},
                  {"ratio_high", num(a1.ratio_high)}, {"samples", a1.samples}};
  Status st = Status::ok;
  try {
    const auto a2 = check_A2(w, o.alpha, o.depth);
    report["A2"] = {{"alpha", o.alpha},
                    {"ok", a2.ok},
                    {"dini_integral", num(a2.dini_integral)},
                    {"power_is_modulus", a2.power_is_modulus}};
  } catch (const Uncertified& e) {
    report["A2"] = {{"alpha", o.alpha}, {"uncertified", e.what()}};
    st = Status::uncertified;
  }
  const auto ca = check_condition_a(w, 64);
  report["condition_a"] = {{"ok", ca.ok}, {"kappa", num(ca.kappa)}, {"C1", num(ca.C1)},
                           {"kappa_unbounded", ca.kappa_unbounded}};
  const auto cb = check_condition_b(w, o.depth);
  report["condition_b"] = {{"ok", cb.ok}, {"C2", num(cb.C2)}};

  json moments = json::array();
  for (int n : {4, 16, 64, 256, 1024}) {
    const auto m = moment_check(w, n);
    moments.push_back({{"n", n}, {"sup", m.sup}, {"bound", m.bound}, {"ok", m.ok}});
  }
  report["moments"] = moments;
  return st;
}

Status cmd_set(const Options& o, json& report) {
  const Weight w = parse_weight(o.weight);
  const ClosedCircleSet E = parse_set(o.set);
  report["weight"] = weight_json(w);
  report["set"] = o.set;
  const auto sum = entropy_sum(E, w);
  report["entropy_sum"] = entropy_json(sum);
  Status st = sum.tag == SeriesTag::undecided ? Status::uncertified : Status::ok;
  try {
    const auto integral = entropy_integral(E, w);
    report["entropy_integral"] = entropy_json(integral);
  } catch (const Uncertified& e) {
    report["entropy_integral"] = {{"uncertified", e.what()}};
    st = Status::uncertified;
  }
  return st;
}

json classification_json(const Classification& c) {
  json certs = json::array();
  for (const auto& cert : c.certificates) {
    json j{{"component", cert.component}, {"decision", cert.decision}, {"mass", cert.mass}};
    if (cert.entropy) j["entropy"] = entropy_json(*cert.entropy);
    certs.push_back(j);
  }
  return {{"mass_P", c.mu_P.total_mass()},
          {"mass_C", c.mu_C.total_mass()},
          {"undecided_mass", c.undecided_mass},
          {"certificates", certs}};
}

Status cmd_measure(const Options& o, json& report) {
  const Weight w = parse_weight(o.weight);
  const CircleMeasure mu = parse_measure(o.measure);
  report["weight"] = weight_json(w);
  report["measure"] = {{"name", o.measure}, {"total_mass", mu.total_mass()}};
  const auto c = classify_measure(mu, w);
  report["classification"] = classification_json(c);
  return c.undecided_mass > 0.0 ? Status::uncertified : Status::ok;
}

Status cmd_grid(const Options& o, json& report) {
  const Weight w = parse_weight(o.weight);
  report["weight"] = weight_json(w);
  DyadicGrid grid;
  if (!o.grid.empty()) {
    grid = DyadicGrid{parse_depths(o.grid), o.C, 1.0};
  } else {
    grid = build_grid(w, o.n0, o.C, o.kmax);
  }
  const auto v = verify_grid(grid, w);
  report["grid"] = {{"depths", grid.depths}, {"C", grid.C}, {"lambda", grid.lambda}};
  json ratios = json::array();
  for (std::size_t k = 0; k < v.ratios.size(); ++k)
    ratios.push_back({{"k", k + 1}, {"ratio", num(v.ratios[k])}});
  report["ratios"] = ratios;
  report["verification"] = {{"is_w_grid", v.is_w_grid},
                            {"beta", num(v.beta)},
                            {"superlacunary", v.superlacunary},
                            {"ratio_window_ok", v.ratio_window_ok},
                            {"geometric_sum_ok", v.geometric_sum_ok}};
  return v.is_w_grid && v.superlacunary && v.ratio_window_ok ? Status::ok : Status::uncertified;
}

Status cmd_inner(const Options& o, json& report) {
  const CircleMeasure mu = parse_measure(o.measure);
  report["measure"] = {{"name", o.measure}, {"total_mass", mu.total_mass()}};
  const SingularInner S(mu);
  json values = json::array();
  for (const auto& p : o.points) {
    const Complex z = parse_point(p);
    const auto v = S.eval(z, o.eps);
    const auto b = S.poisson(z);
    values.push_back({{"z", complex_json(z)},
                      {"value", complex_json(v.value)},
                      {"err", v.err},
                      {"poisson_lower", b.lower},
                      {"poisson_upper", b.upper}});
  }
  report["values"] = values;
  const auto lb = lower_bound_check(mu, radial_angular_samples(o.depth, std::max(1, o.samples / o.depth)), o.eps);
  report["lower_bound"] = {{"constant", 6},
                           {"ok", lb.ok},
                           {"min_margin", lb.min_margin},
                           {"worst", complex_json(lb.worst)},
                           {"samples", lb.samples}};
  return lb.ok ? Status::ok : Status::uncertified;
}

Status cmd_carleson(const Options& o, json& report) {
  const Weight w = parse_weight(o.weight);
  const ClosedCircleSet E = parse_set(o.set);
  const CarlesonOuter G = carleson_outer(E, w, o.N);
  report["weight"] = weight_json(w);
  report["set"] = o.set;
  report["outer"] = {{"N", G.N()},
                     {"whitney_arcs", G.terms()},
                     {"min_length", G.whitney().min_length},
                     {"omitted_length", G.whitney().omitted_length},
                     {"entropy_ledger", G.entropy_ledger()}};
  json values = json::array();
  for (const auto& p : o.points) {
    const Complex z = parse_point(p);
    const auto v = G.eval(z);
    values.push_back({{"z", complex_json(z)}, {"value", complex_json(v.value)}, {"err", v.err}});
  }
  report["values"] = values;
  return Status::ok;
}

Status cmd_privalov(const Options& o, json& report) {
  const Weight w = parse_weight(o.weight);
  const ClosedCircleSet E = parse_set(o.set);
  const PrivalovDomain D(E);
  report["weight"] = weight_json(w);
  report["set"] = o.set;
  const auto ac = auto_carleson(D, w, o.count);
  report["carleson"] = {{"N", ac.G.N()},
                        {"doublings", ac.doublings},
                        {"max_ratio", ac.estimate.max_ratio},
                        {"samples", ac.estimate.samples},
                        {"ok", ac.estimate.ok}};
  std::vector<std::vector<Complex>> polys;
  for (int k = 0; k <= o.max_power; ++k) {
    std::vector<Complex> q(static_cast<std::size_t>(k) + 1, 0.0);
    q.back() = 1.0;
    polys.push_back(std::move(q));
  }
  const auto checks = embedding_check(D, ac.G, polys, w, o.count);
  json table = json::array();
  bool all = ac.estimate.ok;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    table.push_back({{"power", k},
                     {"max_lhs", checks[k].max_lhs},
                     {"norm_estimate", checks[k].norm_estimate},
                     {"ok", checks[k].ok}});
    all = all && checks[k].ok;
  }
  report["embedding"] = table;
  return all ? Status::ok : Status::uncertified;
}

Status cmd_dual_pair(const Options& o, json& report) {
  const auto g = parse_polynomial(o.g);
  const auto f = parse_polynomial(o.f);
  const Complex exact = cauchy_pairing(g, f);
  const Complex limit =
      limit_pairing(DiscFunction::polynomial(g), DiscFunction::polynomial(f),
                    std::max<int>(64, static_cast<int>(2 * (g.size() + f.size()))));
  report["pairing"] = complex_json(exact);
  report["boundary_limit"] = complex_json(limit);
  report["agreement"] = std::abs(exact - limit);
  return Status::ok;
}

Status cmd_dual_fw(const Options& o, json& report) {
  const Weight w = parse_weight(o.weight);
  const auto f = parse_polynomial(o.f);
  const auto r = fw_norm(DiscFunction::polynomial(f), w, o.quad_depth);
  report["weight"] = weight_json(w);
  report["convention"] = "dA normalized to total mass 1";
  report["fw_norm"] = {{"tag", to_string(r.tag)},
                       {"value", num(r.value)},
                       {"at_origin", r.at_origin},
                       {"tail_bound", num(r.tail_bound)}};
  json annuli = json::array();
  for (std::size_t j = 0; j < r.annuli.size(); ++j)
    annuli.push_back({{"annulus", j}, {"contribution", num(r.annuli[j])}});
  report["annuli"] = annuli;
  return r.tag == SeriesTag::undecided ? Status::uncertified : Status::ok;
}

Status cmd_cyclicity(const Options& o, json& report) {
  const Weight w = parse_weight(o.weight);
  const CircleMeasure mu = parse_measure(o.measure);
  report["weight"] = weight_json(w);
  report["measure"] = {{"name", o.measure}, {"total_mass", mu.total_mass()}};
  const auto cls = classify_measure(mu, w);
  report["classification"] = classification_json(cls);

  const double total = mu.total_mass();
  const double mass_P = cls.mu_P.total_mass();
  const double mass_C = cls.mu_C.total_mass();
  const double tol = 1e-12 * std::max(1.0, total);
  Status st = cls.undecided_mass > 0.0 ? Status::uncertified : Status::ok;

  json dossier;
  if (cls.undecided_mass > 0.0) {
    dossier["verdict"] = "undecided: some components have no entropy certificate";
  } else if (std::abs(mass_P - total) <= tol) {
    dossier["verdict"] = "not cyclic: mu_P = mu";
  } else if (std::abs(mass_C - total) <= tol) {
    dossier["verdict"] = "cyclicity evidence: mu_C = mu";
  } else {
    dossier["verdict"] = "mixed: O_f S_{mu_C} is cyclic, S_{mu_P} is not";
  }
  if (mass_P > 0.0) {
    json certs = json::array();
    for (const auto& cert : cls.certificates)
      if (cert.decision == "P" && cert.entropy)
        certs.push_back({{"component", cert.component}, {"entropy", entropy_json(*cert.entropy)}});
    dossier["entropy_certificates"] = certs;
  }

  if (mass_C > 0.0) {
    const DyadicGrid grid = o.grid.empty() ? build_grid(w, o.n0, o.C, o.kmax)
                                           : DyadicGrid{parse_depths(o.grid), o.C, 1.0};
    const auto dec = decompose(cls.mu_C, grid, o.c, w, o.kmax, o.eps);
    json levels = json::array();
    bool corona_ok = true;
    for (std::size_t k = 0; k < dec.levels.size(); ++k) {
      const auto& L = dec.levels[k];
      const auto cor = corona_datum_check(dec.pieces[k], L.report.depth, o.c, w, o.density);
      corona_ok = corona_ok && cor.ok;
      levels.push_back({{"k", k},
                        {"depth", L.report.depth},
                        {"threshold", L.report.threshold},
                        {"heavy_arcs", L.report.heavy.size()},
                        {"piece_mass", L.piece_mass},
                        {"light_ledger", L.light_ledger},
                        {"max_heavy_ratio", L.max_heavy_ratio},
                        {"corona_bound", cor.bound},
                        {"corona_min", cor.min_combined},
                        {"corona_ok", cor.ok}});
    }
    json decay = json::array();
    double remaining = dec.total_mass;
    for (std::size_t k = 0; k < dec.levels.size(); ++k) {
      remaining -= dec.levels[k].piece_mass;
      decay.push_back({{"after_level", k}, {"residual_mass", std::max(0.0, remaining)}});
    }
    dossier["grid"] = grid.depths;
    dossier["c"] = o.c;
    dossier["levels"] = levels;
    dossier["residual_decay"] = decay;
    dossier["roberts"] = {{"beta", dec.beta},
                          {"mass_defect", dec.mass_defect},
                          {"residual_mass", dec.residual_mass},
                          {"light_ledger_total", dec.light_ledger_total},
                          {"carrier_entropy_bound", dec.carrier_entropy_bound},
                          {"nested", dec.nested},
                          {"heavy_bound_ok", dec.heavy_bound_ok},
                          {"decay_ok", dec.decay_ok},
                          {"certified", dec.certified}};
    if (!dec.certified || !corona_ok) st = Status::uncertified;
  }
  report["dossier"] = dossier;
  return st;
}

// ---- output ------------------------------------------------------------

std::string csv_field(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

// Writes <prefix>_<key>.csv for every array of objects in the report, found
// by walking nested objects; nested keys are joined with '_'.
void write_csv_tables(const json& j, const std::string& prefix) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string name = prefix + "_" + it.key();
    if (it->is_object()) {
      write_csv_tables(*it, name);
      continue;
    }
    if (!it->is_array() || it->empty() || !(*it)[0].is_object()) continue;
    std::vector<std::string> columns;
    for (const auto& row : *it)
      for (auto c = row.begin(); c != row.end(); ++c)
        if (std::find(columns.begin(), columns.end(), c.key()) == columns.end())
          columns.push_back(c.key());
    std::ofstream out(name + ".csv");
    if (!out) throw ParameterError("cannot write " + name + ".csv");
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << csv_field(columns[i]);
    out << "\r\n";
    for (const auto& row : *it) {
      for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << (row.contains(columns[i]) ? csv_field(row[columns[i]]) : "");
      out << "\r\n";
    }
  }
}

}  // namespace

Weight parse_weight(const std::string& spec) {
  if (spec == "t") return Weight::power(1.0);
  if (spec == "exp-inverse") return Weight::exp_inverse();
  if (spec == "exp-exp-inverse") return Weight::exp_exp_inverse();
  for (const auto& nw : builtin_majorants())
    if (nw.name == spec) return nw.weight;
  if (spec.rfind("t^", 0) == 0) return Weight::power(parse_number(spec.substr(2)));
  const auto parts = split(spec, ':');
  if (parts.size() == 2 && parts[0] == "power") return Weight::power(parse_number(parts[1]));
  if (parts.size() == 2 && parts[0] == "log") return Weight::log_power(parse_number(parts[1]), 1);
  if (parts.size() == 2 && parts[0] == "loglog") return Weight::log_power(parse_number(parts[1]), 2);
  if (parts.size() == 3 && parts[0] == "explog")
    return Weight::exp_log(parse_number(parts[1]), parse_number(parts[2]));
  throw ParameterError("unknown weight: " + spec);
}

ClosedCircleSet parse_set(const std::string& spec) {
  for (const auto& s : fixtures::entropy_sets())
    if (s.name == spec) return s.set;
  const json j = read_json(spec);
  if (!j.is_object()) throw ParameterError("set JSON must be an object");
  std::optional<ClosedCircleSet> E;
  auto add = [&](const ClosedCircleSet& part) { E = E ? unite(*E, part) : part; };
  if (j.contains("points")) add(ClosedCircleSet::points(j["points"].get<std::vector<double>>()));
  if (j.contains("gaps")) {
    std::vector<Arc> gaps;
    for (const auto& g : j["gaps"]) gaps.push_back({g.at(0).get<double>(), g.at(1).get<double>()});
    add(ClosedCircleSet(gaps));
  }
  if (j.contains("cantor"))
    for (const auto& c : j["cantor"]) add(ClosedCircleSet::cantor(cantor_from_json(c)));
  if (!E) throw ParameterError("set JSON needs points, gaps or cantor");
  return *E;
}

CircleMeasure parse_measure(const std::string& spec) {
  for (const auto& m : fixtures::measures())
    if (m.name == spec) return m.measure;
  const json j = read_json(spec);
  if (!j.is_object()) throw ParameterError("measure JSON must be an object");
  std::vector<Atom> atoms;
  if (j.contains("atoms"))
    for (const auto& a : j["atoms"]) atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
  std::vector<CantorPart> parts;
  if (j.contains("cantor"))
    for (const auto& c : j["cantor"])
      parts.push_back({cantor_from_json(c), c.value("mass", 1.0), c.value("split", 0.5),
                       c.value("depth_limit", 48)});
  return CircleMeasure(std::move(atoms), std::move(parts));
}

std::vector<Complex> parse_polynomial(const std::string& spec) {
  const json j = read_json(spec);
  if (!j.is_array()) throw ParameterError("polynomial JSON must be a coefficient array");
  std::vector<Complex> c;
  for (const auto& v : j) c.push_back(json_complex(v));
  return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical toolkit for weighted entropy, Roberts decompositions and cyclicity checks",
               "gst"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Report path, '-' for stdout");
    sub->add_option("--csv", o.csv, "Prefix for CSV copies of report tables");
    sub->add_option("--eps", o.eps, "Evaluation tolerance");
  };

  auto* weight = app.add_subcommand("weight", "Diagnostics for a weight");
  weight->add_option("--weight", o.weight);
  weight->add_option("--alpha", o.alpha);
  weight->add_option("--depth", o.depth);
  add_common(weight);

  auto* set = app.add_subcommand("set", "Entropy of a closed set");
  set->add_option("--set", o.set);
  set->add_option("--weight", o.weight);
  add_common(set);

  auto* measure = app.add_subcommand("measure", "Classify a measure into P and C parts");
  measure->add_option("--measure", o.measure);
  measure->add_option("--weight", o.weight);
  add_common(measure);

  auto* grid = app.add_subcommand("grid", "Build and verify a dyadic grid");
  grid->add_option("--weight", o.weight);
  grid->add_option("--grid", o.grid, "Comma-separated depths; built from the weight if absent");
  grid->add_option("--n0", o.n0);
  grid->add_option("--C", o.C);
  grid->add_option("--kmax", o.kmax);
  add_common(grid);

  auto* inner = app.add_subcommand("inner", "Evaluate S_mu and check the lower bound");
  inner->add_option("--measure", o.measure);
  inner->add_option("--z", o.points, "Points re,im");
  inner->add_option("--depth", o.depth, "Radial levels for the lower-bound samples");
  inner->add_option("--samples", o.samples);
  add_common(inner);

  auto* carleson = app.add_subcommand("carleson", "Whitney-arc Carleson outer function");
  carleson->add_option("--set", o.set);
  carleson->add_option("--weight", o.weight);
  carleson->add_option("--N", o.N);
  carleson->add_option("--z", o.points, "Points re,im");
  add_common(carleson);

  auto* privalov = app.add_subcommand("privalov", "Boundary estimate and embedding on the Privalov domain");
  privalov->add_option("--set", o.set);
  privalov->add_option("--weight", o.weight);
  privalov->add_option("--count", o.count);
  privalov->add_option("--max-power", o.max_power);
  add_common(privalov);

  auto* dual = app.add_subcommand("dual", "Duality layer");
  dual->require_subcommand(1);
  auto* pair = dual->add_subcommand("pair", "Cauchy pairing of two polynomials");
  pair->add_option("--g", o.g)->required();
  pair->add_option("--f", o.f)->required();
  add_common(pair);
  auto* fw = dual->add_subcommand("fw-norm", "F_w norm of a polynomial");
  fw->add_option("--f", o.f)->required();
  fw->add_option("--weight", o.weight);
  fw->add_option("--quad-depth", o.quad_depth);
  add_common(fw);

  auto* report = app.add_subcommand("report", "Composite reports");
  report->require_subcommand(1);
  auto* cyc = report->add_subcommand("cyclicity", "Cyclicity dossier for a measure");
  cyc->add_option("--measure", o.measure);
  cyc->add_option("--weight", o.weight);
  cyc->add_option("--grid", o.grid);
  cyc->add_option("--n0", o.n0);
  cyc->add_option("--C", o.C);
  cyc->add_option("--c", o.c);
  cyc->add_option("--kmax", o.kmax);
  cyc->add_option("--density", o.density, "Angular samples per corona radius");
  add_common(cyc);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }

  json doc;
  doc["schema"] = kSchema;
  const auto started = std::chrono::steady_clock::now();
  Status st = Status::ok;
  std::string command;
  try {
    json body;
    if (weight->parsed()) command = "weight", st = cmd_weight(o, body);
    else if (set->parsed()) command = "set", st = cmd_set(o, body);
    else if (measure->parsed()) command = "measure", st = cmd_measure(o, body);
    else if (grid->parsed()) command = "grid", st = cmd_grid(o, body);
    else if (inner->parsed()) command = "inner", st = cmd_inner(o, body);
    else if (carleson->parsed()) command = "carleson", st = cmd_carleson(o, body);
    else if (privalov->parsed()) command = "privalov", st = cmd_privalov(o, body);
    else if (pair->parsed()) command = "dual pair", st = cmd_dual_pair(o, body);
    else if (fw->parsed()) command = "dual fw-norm", st = cmd_dual_fw(o, body);
    else if (cyc->parsed()) command = "report cyclicity", st = cmd_cyclicity(o, body);
    doc["command"] = command;
    doc["status"] = st == Status::ok ? "ok" : "uncertified";
    for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = *it;
  } catch (const Uncertified& e) {
    err << "uncertified: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  doc["meta"] = {{"elapsed_seconds", elapsed}, {"threads", thread_count()}};

  try {
    if (!o.csv.empty()) write_csv_tables(doc, o.csv);
    if (o.out == "-") {
      out << doc.dump(2) << "\n";
    } else {
      std::ofstream file(o.out);
      if (!file) throw ParameterError("cannot write " + o.out);
      file << doc.dump(2) << "\n";
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return st == Status::ok ? 0 : 2;
}

}  // namespace gst::cli
