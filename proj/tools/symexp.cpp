// symexp: command-line front end for the symexp library.
#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "symexp/counting.hpp"
#include "symexp/curves.hpp"
#include "symexp/expansion.hpp"
#include "symexp/io.hpp"
#include "symexp/parse.hpp"
#include "symexp/selftest.hpp"
#include "symexp/structure.hpp"

using namespace symexp;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr const char* kBudgetEnv = "SYMEXP_TUPLE_BUDGET";

const char* kSetHelp =
    "Set specs: ap:start:step:n | gp:start:ratio:n | rand:seed:n[:range[:den]] | list:a|b|c";

struct Common {
  std::string format;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

std::uint64_t tuple_budget() {
  const char* env = std::getenv(kBudgetEnv);
  if (!env || !*env) return kDefaultTupleBudget;
  std::string s(env);
  require(std::all_of(s.begin(), s.end(), ::isdigit) && s.size() <= 18, std::string(kBudgetEnv) + " must be a positive integer");
  std::uint64_t v = std::stoull(s);
  require(v > 0, std::string(kBudgetEnv) + " must be a positive integer");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

json decomposition_json(const Decomposition& d) {
  json inner = json::array();
  std::string text;
  for (std::size_t i = 0; i < d.inner.size(); ++i) {
    std::string var = "x" + std::to_string(i + 1);
    inner.push_back(to_json(d.inner[i], var));
    text += (i ? (d.kind == DecompositionKind::Additive ? " + " : " * ") : "") + ("(" + d.inner[i].str(var) + ")");
  }
  return {{"kind", kind_name(d.kind)},
          {"outer", to_json(d.outer, "z")},
          {"inner", std::move(inner)},
          {"normalized", d.normalized},
          {"text", "f(z) = " + d.outer.str("z") + ", z = " + text}};
}

json index_list(const std::vector<std::size_t>& v) {
  json out = json::array();
  for (auto i : v) out.push_back(i + 1);
  return out;
}

json witnesses_json(const std::vector<PairWitness>& ws, bool additive) {
  json out = json::array();
  for (const auto& w : ws) out.push_back({{"i", w.i + 1}, {"j", w.j + 1}, {additive ? "lambda" : "kappa", w.value.str()}});
  return out;
}

json detection_json(const Detection& d) {
  json j = {{"status", status_name(d.status)}};
  if (d.decomposition) j["decomposition"] = decomposition_json(*d.decomposition);
  return j;
}

json curve_json(const ParamCurve& c) {
  return {{"p", to_json(c.p)}, {"q", to_json(c.q)}, {"fx", transform_name(c.fx)}, {"fy", transform_name(c.fy)}};
}

json line_json(const LineVerdict& v) {
  if (!v.is_line()) return {{"verdict", "NotLine"}};
  return {{"verdict", "Line"},
          {"alpha", v.line->alpha.str()},
          {"beta", v.line->beta.str()},
          {"gamma", v.line->gamma.str()}};
}

// "x;x^2" -> univariate list.
std::vector<UniPoly> uni_list(const std::string& s) {
  std::vector<UniPoly> out;
  for (const auto& item : split(s, ';')) out.push_back(parse_uni(item));
  require(!out.empty(), "empty polynomial list");
  return out;
}

std::vector<FiniteSet> set_list(const std::vector<std::string>& specs) {
  std::vector<FiniteSet> out;
  for (const auto& group : specs)
    for (const auto& s : split(group, ',')) out.push_back(parse_set_spec(s));
  return out;
}

void print_pretty(const json& j, std::ostream& os, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    if (v.is_object()) {
      print_pretty(v, os, prefix + it.key() + ".");
    } else {
      os << prefix << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

struct Output {
  json result;
  // Optional table for CSV: header columns and rows.
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;  // '#' lines in CSV
  std::string default_format = "json";
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact decision procedures and desk-scale experiments for polynomial expansion.\n" +
               std::string(kSetHelp)};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Common common;
  Output out;
  json config;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "json | csv | pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
    sub->add_option("--seed", common.seed, "64-bit seed (echoed in the output)");
    sub->add_option("--jobs", common.jobs, "worker threads; never changes output")->check(CLI::Range(1u, 256u));
  };

  // decompose
  std::string poly;
  auto* dec = app.add_subcommand("decompose", "Detect P = f(u1(x1)+...+ud(xd)) or f(u1(x1)*...*ud(xd))");
  dec->add_option("--poly", poly, "polynomial in x1..xd")->required();
  add_common(dec);
  dec->callback([&] {
    MultiPoly p = parse_poly(poly);
    Detection a = detect_additive(p), m = detect_multiplicative(p);
    ensure(!(a.found() && m.found()), "P detected as both additive and multiplicative");
    out.result = {{"poly", to_json(p)},
                  {"form", a.found() ? "additive" : m.found() ? "multiplicative" : "none"},
                  {"additive", detection_json(a)},
                  {"multiplicative", detection_json(m)}};
  });

  // classify
  std::size_t t = 1;
  auto* cls = app.add_subcommand("classify", "Expander verdict for a single polynomial");
  cls->add_option("--poly", poly)->required();
  cls->add_option("--t", t, "1 <= t <= d-1")->required();
  add_common(cls);
  cls->callback([&] {
    MultiPoly p = parse_poly(poly);
    ClassifierVerdict v = classify_single(p, t);
    bool add = v.decomposition && v.decomposition->kind == DecompositionKind::Additive;
    json classes = json::array();
    for (const auto& c : v.classes) classes.push_back(index_list(c));
    out.result = {{"poly", to_json(p)},
                  {"t", t},
                  {"verdict", verdict_name(v.kind)},
                  {"exponent", v.exponent.str()},
                  {"required", v.required},
                  {"index_set", index_list(v.index_set)},
                  {"classes", classes},
                  {"witnesses", witnesses_json(v.witnesses, add)}};
    out.result["decomposition"] = v.decomposition ? decomposition_json(*v.decomposition) : json(nullptr);
  });

  // classify-pair
  std::string ptext, qtext;
  auto* cpair = app.add_subcommand("classify-pair", "Expander verdict for a pair (P, Q)");
  cpair->add_option("--p", ptext)->required();
  cpair->add_option("--q", qtext)->required();
  cpair->add_option("--t", t)->required();
  add_common(cpair);
  cpair->callback([&] {
    MultiPoly p = parse_poly(ptext), q = parse_poly(qtext);
    std::size_t d = std::max(p.arity(), q.arity());
    p = parse_poly(ptext, d);
    q = parse_poly(qtext, d);
    PairVerdict v = classify_pair(p, q, t);
    bool add = v.p_decomposition && v.p_decomposition->kind == DecompositionKind::Additive;
    out.result = {{"p", to_json(p)},
                  {"q", to_json(q)},
                  {"t", t},
                  {"verdict", verdict_name(v.kind)},
                  {"exponent", v.exponent.str()},
                  {"mismatch", index_list(v.mismatch)},
                  {"witnesses", witnesses_json(v.witnesses, add)}};
    out.result["p_decomposition"] = v.p_decomposition ? decomposition_json(*v.p_decomposition) : json(nullptr);
    out.result["q_decomposition"] = v.q_decomposition ? decomposition_json(*v.q_decomposition) : json(nullptr);
  });

  // equiv
  std::string relation;
  auto* eq = app.add_subcommand("equiv", "Test q = lambda p (a) or |q| = |p|^kappa (m)");
  eq->add_option("relation", relation, "a | m")->required()->check(CLI::IsMember({"a", "m"}));
  eq->add_option("--p", ptext)->required();
  eq->add_option("--q", qtext)->required();
  add_common(eq);
  eq->callback([&] {
    UniPoly p = parse_uni(ptext), q = parse_uni(qtext);
    out.result = {{"relation", relation}, {"p", to_json(p, "x")}, {"q", to_json(q, "x")}};
    if (relation == "a") {
      auto w = equiv_a(q, p);
      out.result["equivalent"] = w.has_value();
      out.result["lambda"] = w ? json(w->lambda.str()) : json(nullptr);
    } else {
      auto w = equiv_m(q, p);
      out.result["equivalent"] = w.has_value();
      out.result["kappa"] = w ? json(w->kappa().str()) : json(nullptr);
    }
  });

  // implicitize
  auto* imp = app.add_subcommand("implicitize", "F with F(p(t), q(t)) = 0");
  imp->add_option("--p", ptext)->required();
  imp->add_option("--q", qtext)->required();
  add_common(imp);
  imp->callback([&] {
    UniPoly p = parse_uni(ptext), q = parse_uni(qtext);
    ImplicitCurve c = implicitize(p, q);
    out.result = {{"p", to_json(p)}, {"q", to_json(q)}, {"F", to_json(c.F)}, {"degree_bound", c.degree_bound}};
  });

  // line-test, intersect-translate
  std::string fx = "id", fy = "id", ax, ay;
  auto* lt = app.add_subcommand("line-test", "Is (fx(p), fy(q)) contained in a line?");
  lt->add_option("--p", ptext)->required();
  lt->add_option("--q", qtext)->required();
  lt->add_option("--fx", fx, "id | log")->check(CLI::IsMember({"id", "log"}));
  lt->add_option("--fy", fy, "id | log")->check(CLI::IsMember({"id", "log"}));
  add_common(lt);
  lt->callback([&] {
    ParamCurve c(parse_uni(ptext), parse_uni(qtext), parse_transform(fx), parse_transform(fy));
    out.result = {{"curve", curve_json(c)}, {"line", line_json(line_containment(c))}};
  });

  auto* it = app.add_subcommand("intersect-translate", "|C cap (C + a)| for a curve not contained in a line");
  it->add_option("--p", ptext)->required();
  it->add_option("--q", qtext)->required();
  it->add_option("--fx", fx)->check(CLI::IsMember({"id", "log"}));
  it->add_option("--fy", fy)->check(CLI::IsMember({"id", "log"}));
  it->add_option("--ax", ax, "x shift (a positive ratio on a log axis)")->required();
  it->add_option("--ay", ay, "y shift (a positive ratio on a log axis)")->required();
  add_common(it);
  it->callback([&] {
    ParamCurve c(parse_uni(ptext), parse_uni(qtext), parse_transform(fx), parse_transform(fy));
    PlaneVector a{Rational::parse(ax), Rational::parse(ay)};
    std::size_t n = translate_intersection_count(c, a), d = c.delta();
    bool idid = c.fx == Transform::Identity && c.fy == Transform::Identity;
    out.result = {{"curve", curve_json(c)},
                  {"shift", {a.x.str(), a.y.str()}},
                  {"count", n},
                  {"delta", d},
                  {"bound", (idid ? 4 : 16) * d * d}};
  });

  // counting-lemma
  std::string blocks;
  auto* cl = app.add_subcommand("counting-lemma", "Permutation hypothesis vs. the largest-block bound");
  cl->add_option("--blocks", blocks, "partition of 1..d, e.g. \"1,2;3\"")->required();
  cl->add_option("--t", t)->required();
  add_common(cl);
  cl->callback([&] {
    Partition part = Partition::parse(blocks);
    bool hyp = hypothesis_holds(part, t);
    auto w = cyclic_shift_witness(part, t);
    out.result = {{"blocks", part.str()},
                  {"d", part.d()},
                  {"t", t},
                  {"hypothesis", hyp},
                  {"max_block", part.max_block()},
                  {"required", ceil_half(part.d() + t)},
                  {"bound", max_class_bound_check(part, t)}};
    if (w) {
      out.result["witness"] = index_list(*w);
      out.result["witness_fixed"] = equivalent_fixed_count(part, *w);
    } else {
      out.result["witness"] = nullptr;
    }
  });

  // expand
  std::vector<std::string> set_specs;
  bool list_elements = false;
  auto* ex = app.add_subcommand("expand", std::string("|P(A1, ..., Ad)| by full enumeration. ") + kSetHelp);
  ex->add_option("--poly", poly)->required();
  ex->add_option("--sets", set_specs, "one spec per variable (comma separated); one spec is reused")->required();
  ex->add_flag("--list", list_elements, "include the elements");
  add_common(ex);
  ex->callback([&] {
    MultiPoly p = parse_poly(poly);
    std::vector<FiniteSet> sets = set_list(set_specs);
    if (sets.size() == 1 && p.arity() > 1) sets.assign(p.arity(), sets[0]);
    ImageOptions opt{tuple_budget(), common.jobs};
    FiniteSet img = image_set(p, sets, opt);
    json sizes = json::array();
    for (const auto& s : sets) sizes.push_back(s.size());
    out.result = {{"poly", to_json(p)}, {"set_sizes", sizes}, {"size", img.size()}};
    if (list_elements) {
      json el = json::array();
      for (const auto& x : img.elements()) el.push_back(x.str());
      out.result["elements"] = el;
    }
    out.columns = {"size"};
    out.rows = {{std::to_string(img.size())}};
  });

  // experiment
  std::string spec = "lemma42i", utext = "x;x^2", vtext = "x^2;x", kind = "ap";
  std::size_t nmin = 4, nmax = 32;
  auto* exp = app.add_subcommand("experiment", "Product-bound experiment over n = nmin, 2 nmin, ..., nmax");
  exp->add_option("--spec", spec, "lemma42i | lemma42ii | lemma42iii | pdt | pdt-mult | mixed")
      ->check(CLI::IsMember({"lemma42i", "lemma42ii", "lemma42iii", "pdt", "pdt-mult", "mixed"}));
  exp->add_option("--t", t);
  exp->add_option("--u", utext, "u1;...;ud (p1;p2 for the lemma42 kinds)");
  exp->add_option("--v", vtext, "v1;...;vd (q1;q2 for the lemma42 kinds)");
  exp->add_option("--nmin", nmin)->check(CLI::Range(std::size_t{1}, std::size_t{4096}));
  exp->add_option("--nmax", nmax)->check(CLI::Range(std::size_t{1}, std::size_t{4096}));
  exp->add_option("--set-kind", kind, "ap ({1..n}) | gp ({1, 2, .., 2^(n-1)}) | rand (seeded)")
      ->check(CLI::IsMember({"ap", "gp", "rand"}));
  add_common(exp);
  exp->callback([&] {
    out.default_format = "csv";
    require(nmin <= nmax, "need nmin <= nmax");
    BoundSpec s;
    s.kind = parse_bound_kind(spec);
    s.t = t;
    s.u = uni_list(utext);
    s.v = uni_list(vtext);
    std::vector<std::vector<FiniteSet>> fams;
    for (std::size_t n = nmin; n <= nmax; n *= 2) {
      std::vector<FiniteSet> fam;
      for (std::size_t i = 0; i < s.u.size(); ++i) {
        SetParams sp;
        if (kind == "gp") sp.step = 2;
        sp.seed = common.seed + 7919 * i + n;
        fam.push_back(gen_set(kind == "ap" ? SetKind::AP : kind == "gp" ? SetKind::GP : SetKind::Random, n, sp));
      }
      fams.push_back(std::move(fam));
    }
    ExpansionReport rep = product_bound_experiment(s, fams, common.jobs);
    json samples = json::array();
    out.columns = {"n", "size", "bound", "ratio"};
    for (const auto& x : rep.samples) {
      double bound = std::pow(static_cast<double>(x.effective_n), rep.target.to_double());
      double ratio = static_cast<double>(x.size) / bound;
      samples.push_back({{"n", x.n},
                         {"effective_n", x.effective_n},
                         {"left", x.left},
                         {"right", x.right},
                         {"size", x.size},
                         {"bound", bound},
                         {"ratio", ratio},
                         {"meets_bound", x.meets}});
      out.rows.push_back({std::to_string(x.n), std::to_string(x.size), selftest_detail::fmt(bound, 3),
                          selftest_detail::fmt(ratio, 6)});
    }
    out.result = {{"spec", bound_kind_name(s.kind)}, {"target_exponent", rep.target.str()}, {"samples", samples}};
    out.notes.push_back("spec " + bound_kind_name(s.kind) + ", target exponent " + rep.target.str());
    if (rep.fit) {
      out.result["fitted_exponent"] = rep.fit->slope.str();
      out.result["fitted_constant"] = rep.fit->constant.str();
      out.notes.push_back("fitted exponent " + selftest_detail::fmt(rep.fit->slope.to_double()) + ", fitted constant " +
                          selftest_detail::fmt(rep.fit->constant.to_double()));
    } else {
      out.result["fitted_exponent"] = nullptr;
      out.result["fitted_constant"] = nullptr;
    }
  });

  // incidence
  std::string xs, ys, shifts = "0,0";
  auto* inc = app.add_subcommand("incidence", "Incidences between a grid and translates of one curve");
  inc->add_option("--p", ptext)->required();
  inc->add_option("--q", qtext)->required();
  inc->add_option("--fx", fx)->check(CLI::IsMember({"id", "log"}));
  inc->add_option("--fy", fy)->check(CLI::IsMember({"id", "log"}));
  inc->add_option("--xs", xs, "set spec for the x coordinates of the grid")->required();
  inc->add_option("--ys", ys, "set spec for the y coordinates of the grid")->required();
  inc->add_option("--shifts", shifts, "translations \"ax,ay;ax,ay;...\"");
  add_common(inc);
  inc->callback([&] {
    ParamCurve c(parse_uni(ptext), parse_uni(qtext), parse_transform(fx), parse_transform(fy));
    PlanarSet grid = PlanarSet::product(parse_set_spec(xs), parse_set_spec(ys));
    std::vector<std::pair<ParamCurve, PlaneVector>> curves;
    for (const auto& item : split(shifts, ';')) {
      auto xy = split(item, ',');
      require(xy.size() == 2, "shift '" + item + "' must be ax,ay");
      curves.push_back({c, PlaneVector{Rational::parse(xy[0]), Rational::parse(xy[1])}});
    }
    IncidenceResult r = incidence_count(grid, curves);
    out.result = {{"curve", curve_json(c)},
                  {"points", grid.size()},
                  {"curves", curves.size()},
                  {"incidences", r.incidences},
                  {"st_bound", r.st_bound}};
  });

  // selftest
  double scale = 0.1;
  std::vector<std::string> only;
  std::string fault;
  auto* st = app.add_subcommand("selftest", "Acceptance criteria at reduced scale");
  st->add_option("--scale", scale, "corpus scale in (0, 1]")->check(CLI::Range(0.001, 1.0));
  st->add_option("--only", only, "criterion names (comma separated)")->delimiter(',');
  st->add_option("--fault", fault, "test hook: replace the named criterion's key constant");
  add_common(st);
  bool selftest_failed = false;
  st->callback([&] {
    out.default_format = "pretty";
    SelftestConfig cfg;
    cfg.seed = common.seed ? common.seed : cfg.seed;
    cfg.scale = scale;
    cfg.fault = fault;
    cfg.jobs = common.jobs;
    SelftestResult r = run_selftest(cfg, only);
    selftest_failed = !r.all_pass;
    out.result = {{"all_pass", r.all_pass}, {"criteria", r.lines}};
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const HypothesisError& e) {
    std::cerr << "error: hypothesis violated: " << e.what() << "\n";
    if (e.witness) std::cerr << "witness: " << e.witness->str() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  json flags = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    std::string name = opt->get_name();
    name.erase(0, name.find_first_not_of('-'));
    auto res = opt->results();
    std::string joined;
    for (std::size_t k = 0; k < res.size(); ++k) joined += (k ? "," : "") + res[k];
    flags[name] = joined;
  }
  std::string format = common.format.empty() ? out.default_format : common.format;
  std::uint64_t shown_seed = sub->get_name() == "selftest" && common.seed == 0 ? SelftestConfig{}.seed : common.seed;
  config = {{"subcommand", sub->get_name()},
            {"flags", flags},
            {"seed", shown_seed},
            {"format", format},
            {"jobs", common.jobs},
            {"budget", {{"tuples", tuple_budget()}, {"permutation_degree", kMaxPermutationDegree}}}};

  if (format == "json") {
    json doc = {{"tool", "symexp"}, {"version", kVersion}, {"config", config}, {"result", out.result}};
    std::cout << doc.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << "# symexp " << kVersion << " " << sub->get_name() << " seed " << shown_seed << "\n";
    for (const auto& n : out.notes) std::cout << "# " << n << "\n";
    if (out.columns.empty()) {
      std::cout << "key,value\n";
      for (auto jt = out.result.begin(); jt != out.result.end(); ++jt) {
        std::string v = jt.value().is_string() ? jt.value().get<std::string>() : jt.value().dump();
        if (v.find_first_of(",\"\n") != std::string::npos) {
          std::string q = "\"";
          for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          v = q + "\"";
        }
        std::cout << jt.key() << "," << v << "\n";
      }
    } else {
      for (std::size_t k = 0; k < out.columns.size(); ++k) std::cout << (k ? "," : "") << out.columns[k];
      std::cout << "\n";
      for (const auto& row : out.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) std::cout << (k ? "," : "") << row[k];
        std::cout << "\n";
      }
    }
  } else {
    std::cout << "symexp " << kVersion << " " << sub->get_name() << " (seed " << shown_seed << ")\n";
    if (sub->get_name() == "selftest") {
      for (const auto& line : out.result["criteria"]) std::cout << line.get<std::string>() << "\n";
      std::cout << (out.result["all_pass"].get<bool>() ? "all criteria pass" : "some criteria FAIL") << "\n";
    } else {
      print_pretty(out.result, std::cout);
    }
  }
  return selftest_failed ? 1 : 0;
}
