#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "counting.hpp"
#include "curves.hpp"
#include "expansion.hpp"
#include "parse.hpp"
#include "resultant.hpp"
#include "structure.hpp"

namespace symexp {

// Shared by the `selftest` subcommand (reduced scale) and the acceptance
// binary (scale 1). Output lines carry no timings, so reports replay
// byte-for-byte under a fixed seed.
struct SelftestConfig {
  std::uint64_t seed = 20240601;
  double scale = 1.0;
  std::string fault;  // criterion name whose key constant is replaced by a wrong one
  unsigned jobs = 1;
};

struct CriterionOutcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds at scale 1; 0 when none is stated
  std::function<CriterionOutcome(const SelftestConfig&)> run;
};

namespace selftest_detail {

using Rng = std::mt19937_64;

inline Rng rng(const SelftestConfig& c, int id) { return Rng(c.seed * 1000003ULL + static_cast<std::uint64_t>(id)); }

inline std::size_t scaled(const SelftestConfig& c, std::size_t full, std::size_t floor) {
  auto n = static_cast<std::size_t>(static_cast<double>(full) * c.scale + 0.5);
  return std::max(floor, std::min(full, n));
}

template <class T>
T knob(const SelftestConfig& c, const std::string& name, T right, T wrong) {
  return c.fault == name ? wrong : right;
}

inline long pick(Rng& g, long lo, long hi) { return lo + static_cast<long>(g() % static_cast<std::uint64_t>(hi - lo + 1)); }

inline Rational rat(Rng& g, long range = 5, long den = 3) { return Rational{Integer(pick(g, -range, range)), Integer(pick(g, 1, den))}; }

inline Rational nonzero(Rng& g, long range = 5, long den = 3) {
  Rational r;
  while (r.is_zero()) r = rat(g, range, den);
  return r;
}

inline UniPoly uni(Rng& g, std::size_t deg, long range = 5) {
  std::vector<Rational> c(deg + 1);
  for (auto& x : c) x = rat(g, range);
  c[deg] = nonzero(g, range);
  return UniPoly(c);
}

inline MultiPoly multi(Rng& g, std::size_t d, std::size_t max_deg, std::size_t nterms) {
  MultiPoly::TermMap t;
  for (std::size_t k = 0; k < nterms; ++k) {
    Exponent e(d, 0);
    auto budget = static_cast<std::size_t>(pick(g, 0, static_cast<long>(max_deg)));
    for (std::size_t i = 0; i < d && budget > 0; ++i) {
      auto v = static_cast<std::uint32_t>(pick(g, 0, static_cast<long>(budget)));
      e[(i + k) % d] = v;
      budget -= v;
    }
    t[e] = nonzero(g);
  }
  return MultiPoly(d, std::move(t));
}

inline bool uses_every_variable(const MultiPoly& p) {
  for (std::size_t i = 0; i < p.arity(); ++i)
    if (p.deg_in(i) == 0) return false;
  return true;
}

struct Composition {
  DecompositionKind kind;
  UniPoly f;
  std::vector<UniPoly> u;
  MultiPoly p;
};

inline Composition compose(Rng& g, DecompositionKind kind) {
  Composition c{kind, uni(g, static_cast<std::size_t>(pick(g, 1, 3))), {}, MultiPoly(1)};
  std::size_t d = static_cast<std::size_t>(pick(g, 2, 4));
  bool add = kind == DecompositionKind::Additive;
  MultiPoly inner = MultiPoly::constant(d, add ? 0 : 1);
  for (std::size_t i = 0; i < d; ++i) {
    c.u.push_back(uni(g, static_cast<std::size_t>(pick(g, 1, 4))));
    MultiPoly ui = MultiPoly::from_uni(c.u.back(), d, i);
    inner = add ? inner + ui : inner * ui;
  }
  c.p = compose_outer(c.f, inner);
  return c;
}

inline std::vector<Composition> corpus(const SelftestConfig& cfg, std::size_t per_kind) {
  Rng g = rng(cfg, 1);
  std::vector<Composition> out;
  for (auto kind : {DecompositionKind::Additive, DecompositionKind::Multiplicative})
    for (std::size_t k = 0; k < per_kind; ++k) out.push_back(compose(g, kind));
  return out;
}

inline bool recovers(const Composition& c, const Decomposition& dec) {
  if (dec.kind != c.kind || dec.inner.size() != c.u.size()) return false;
  if (expand(dec) != c.p) return false;
  for (std::size_t i = 0; i < c.u.size(); ++i) {
    bool ok = c.kind == DecompositionKind::Additive
                  ? equiv_a(dec.inner[i], c.u[i] - UniPoly::constant(c.u[i].coeff(0))).has_value()
                  : equiv_m(dec.inner[i], c.u[i].monic()).has_value();
    if (!ok) return false;
  }
  return true;
}

inline std::string fmt(double x, int prec = 3) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(prec) << x;
  return s.str();
}

inline CriterionOutcome roundtrip(const SelftestConfig& cfg) {
  std::size_t n = scaled(cfg, 200, 10);
  auto comps = corpus(cfg, n);
  std::size_t ok[2] = {0, 0}, terms = 0;
  for (const auto& c : comps) {
    terms += c.p.terms().size();
    Detection r = c.kind == DecompositionKind::Additive ? detect_additive(c.p) : detect_multiplicative(c.p);
    if (r && recovers(c, *r.decomposition)) ++ok[c.kind == DecompositionKind::Multiplicative];
  }
  std::size_t expected = knob<std::size_t>(cfg, "roundtrip", n, n + 1);
  return {ok[0] == expected && ok[1] == expected,
          "additive " + std::to_string(ok[0]) + "/" + std::to_string(n) + ", multiplicative " +
              std::to_string(ok[1]) + "/" + std::to_string(n) + ", corpus terms " + std::to_string(terms)};
}

inline CriterionOutcome exclusivity(const SelftestConfig& cfg) {
  std::size_t n = scaled(cfg, 200, 10);
  auto comps = corpus(cfg, n);
  Rng g = rng(cfg, 2);
  std::vector<MultiPoly> all;
  for (const auto& c : comps) all.push_back(c.p);
  std::size_t randoms = 0;
  while (randoms < n) {
    MultiPoly p = multi(g, static_cast<std::size_t>(pick(g, 2, 4)), 4, 6);
    if (!uses_every_variable(p)) continue;
    all.push_back(p);
    ++randoms;
  }
  std::size_t both = 0, structured_random = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    bool a = detect_additive(all[k]).found(), m = detect_multiplicative(all[k]).found();
    both += a && m;
    if (k >= comps.size()) structured_random += a || m;
  }
  std::size_t expected = knob<std::size_t>(cfg, "exclusivity", 0, 1);
  return {both == expected, std::to_string(all.size()) + " polynomials, " + std::to_string(both) + " detected as both, " +
                    std::to_string(structured_random) + " random ones structured"};
}

inline CriterionOutcome implicitization(const SelftestConfig& cfg) {
  std::size_t n = scaled(cfg, 100, 10);
  Rng g = rng(cfg, 3);
  std::size_t factor = knob<std::size_t>(cfg, "implicitize", 2, 0);
  std::size_t bad = 0, max_deg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    UniPoly p = uni(g, static_cast<std::size_t>(pick(g, 1, 5))), q = uni(g, static_cast<std::size_t>(pick(g, 1, 5)));
    ImplicitCurve c = implicitize(p, q);
    std::size_t delta = std::max(p.deg(), q.deg()), deg = *c.F.total_degree();
    max_deg = std::max(max_deg, deg);
    if (!substitute_curve(c.F, p, q).is_zero() || deg > factor * delta) ++bad;
  }
  MultiPoly cusp = implicitize(parse_uni("t^2"), parse_uni("t^3")).F, want = parse_poly("y^2-x^3");
  bool cusp_ok = cusp == want || cusp == -want;
  return {bad == 0 && cusp_ok, std::to_string(n) + " curves, " + std::to_string(bad) + " violations, max deg F " +
                                   std::to_string(max_deg) + ", cusp " + cusp.str()};
}

inline CriterionOutcome translates(const SelftestConfig& cfg) {
  std::size_t per_case = scaled(cfg, 6, 3), shifts = scaled(cfg, 100, 10);
  Rng g = rng(cfg, 4);
  std::size_t c16 = knob<std::size_t>(cfg, "translates", 16, 0), c4 = knob<std::size_t>(cfg, "translates", 4, 0);
  const std::pair<Transform, Transform> cases[] = {{Transform::Identity, Transform::Identity},
                                                   {Transform::Identity, Transform::LogAbs},
                                                   {Transform::LogAbs, Transform::Identity},
                                                   {Transform::LogAbs, Transform::LogAbs}};
  std::size_t curves = 0, bad = 0;
  std::string maxima;
  for (const auto& [fx, fy] : cases) {
    std::size_t made = 0, max_count = 0;
    Rational max_ratio;
    while (made < per_case) {
      std::size_t dp = static_cast<std::size_t>(pick(g, 1, 3)), dq = static_cast<std::size_t>(pick(g, 1, 3));
      ParamCurve c(uni(g, dp, 4), uni(g, dq, 4), fx, fy);
      if (line_containment(c).is_line()) continue;
      ++made;
      std::size_t delta = c.delta();
      bool idid = fx == Transform::Identity && fy == Transform::Identity;
      std::size_t bound = (idid ? c4 : c16) * delta * delta;
      for (std::size_t k = 0; k < shifts; ++k) {
        PlaneVector a{fx == Transform::Identity ? rat(g, 6, 4) : Rational{Integer(pick(g, 1, 9)), Integer(pick(g, 1, 4))},
                      fy == Transform::Identity ? rat(g, 6, 4) : Rational{Integer(pick(g, 1, 9)), Integer(pick(g, 1, 4))}};
        if (is_neutral(fx, a.x) && is_neutral(fy, a.y)) continue;
        std::size_t cnt = translate_intersection_count(c, a);
        bad += cnt > bound;
        max_count = std::max(max_count, cnt);
        Rational ratio = Rational(static_cast<long>(cnt)) / Rational(static_cast<long>(delta * delta));
        if (ratio > max_ratio) max_ratio = ratio;
      }
    }
    curves += made;
    maxima += (maxima.empty() ? "" : "; ") + transform_name(fx) + "/" + transform_name(fy) + " max " +
              std::to_string(max_count) + " (max count/delta^2 " + max_ratio.str() + ")";
  }
  return {bad == 0, std::to_string(curves) + " curves x " + std::to_string(shifts) + " shifts, " +
                        std::to_string(bad) + " violations; " + maxima};
}

// A common factor has positive degree in some variable that both f and h
// involve, and then their Sylvester resultant in it vanishes.
inline bool coprime_by_resultants(const MultiPoly& f, const MultiPoly& h) {
  for (std::size_t v = 0; v < 2; ++v)
    if (f.deg_in(v) > 0 && h.deg_in(v) > 0 && sylvester_resultant(f, h, v).is_zero()) return false;
  return true;
}

inline CriterionOutcome bezout(const SelftestConfig& cfg) {
  std::size_t want = scaled(cfg, 100, 10), want_planted = scaled(cfg, 50, 5);
  Rng g = rng(cfg, 5);
  std::size_t factor = knob<std::size_t>(cfg, "bezout", 1, 0);
  std::size_t pairs = 0, bad = 0, max_count = 0;
  while (pairs < want) {
    MultiPoly f = multi(g, 2, static_cast<std::size_t>(pick(g, 1, 4)), 5),
              h = multi(g, 2, static_cast<std::size_t>(pick(g, 1, 4)), 5);
    if (f.is_constant() || h.is_constant() || !coprime_by_resultants(f, h)) continue;
    ++pairs;
    auto v = implicit_intersection(f, h);
    max_count = std::max(max_count, v.count);
    if (v.common_factor || v.count > factor * *f.total_degree() * *h.total_degree()) ++bad;
  }
  std::size_t planted = 0, missed = 0;
  while (planted < want_planted) {
    MultiPoly f = multi(g, 2, 2, 4), h = multi(g, 2, 2, 4), k = multi(g, 2, 2, 3);
    if (f.is_zero() || h.is_zero() || k.is_constant()) continue;
    ++planted;
    missed += !implicit_intersection(f * k, h * k).common_factor;
  }
  return {bad == 0 && missed == 0, std::to_string(pairs) + " coprime pairs (" + std::to_string(bad) +
                                       " violations, max count " + std::to_string(max_count) + "), " +
                                       std::to_string(planted) + " planted (" + std::to_string(missed) + " missed)"};
}

inline CriterionOutcome counting(const SelftestConfig& cfg) {
  std::size_t offset = knob<std::size_t>(cfg, "counting", 0, 1);
  std::size_t cases = 0, refuted = 0, bad = 0;
  for (std::size_t d = 1; d <= 6; ++d)
    for_each_partition(d, [&](const Partition& p) {
      for (std::size_t t = 1; t <= d; ++t) {
        ++cases;
        bool bound = p.max_block() >= ceil_half(d + t) + offset;
        if (hypothesis_holds(p, t) && !bound) ++bad;
        if (!bound) {
          auto w = cyclic_shift_witness(p, t);
          if (!w || equivalent_fixed_count(p, *w) >= t)
            ++bad;
          else
            ++refuted;
        }
      }
    });
  return {bad == 0, std::to_string(cases) + " (partition, t) cases, " + std::to_string(refuted) +
                        " refuted by cyclic shift, " + std::to_string(bad) + " violations"};
}

inline CriterionOutcome chains(const SelftestConfig& cfg) {
  std::size_t n = scaled(cfg, 200, 20);
  Rng g = rng(cfg, 7);
  bool wrong = cfg.fault == "chains";
  std::size_t bad = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t delta = static_cast<std::size_t>(pick(g, 1, 4));
    UniPoly p = uni(g, delta, 4);
    std::size_t size = static_cast<std::size_t>(pick(g, 1, 64));
    std::vector<Rational> v;
    while (v.size() < size) {
      Rational x = rat(g, 80, 1);
      if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
    }
    FiniteSet a(std::move(v));
    FiniteSet img = uni_image(p, a);
    std::size_t logs = abs_set(img).size(), eff = wrong ? 1 : delta;
    bool ok = a.size() <= eff * img.size() && img.size() <= a.size() && img.size() <= 2 * logs + 1 && logs <= img.size();
    bad += !ok;
  }
  return {bad == 0, std::to_string(n) + " (p, A) pairs, " + std::to_string(bad) + " violations"};
}

inline CriterionOutcome growth(const SelftestConfig& cfg) {
  std::vector<std::size_t> ns = {8, 16, 32, 64, 128};
  if (cfg.scale < 0.5) ns.pop_back();
  ImageOptions opt;
  opt.jobs = cfg.jobs;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> samples;
  bool exact = true;
  std::string sizes;
  for (std::size_t n : ns) {
    FiniteSet a = gen_set(SetKind::AP, n, SetParams{});
    std::size_t s = image_set(parse_poly("x+y^2"), {a, a}, opt).size();
    std::size_t e = image_set(parse_poly("(x+y)^2"), {a, a}, opt).size();
    samples.emplace_back(n, s);
    exact = exact && e == 2 * n - 1;
    sizes += (sizes.empty() ? "" : " ") + std::to_string(s);
  }
  Fit fit = fit_exponent(samples);
  Rational threshold = knob(cfg, "growth", Rational(5, 4), Rational(3));
  return {fit.slope >= threshold && exact, "|x+y^2| on AP: " + sizes + ", slope " + fmt(fit.slope.to_double()) +
                                               ", (x+y)^2 gives 2n-1: " + (exact ? "yes" : "no")};
}

inline CriterionOutcome sumproduct(const SelftestConfig& cfg) {
  BoundSpec s;
  s.kind = BoundKind::SumSum;
  s.u = {parse_uni("x"), parse_uni("x")};
  s.v = {parse_uni("x^2"), parse_uni("x")};
  std::vector<std::vector<FiniteSet>> fams;
  std::vector<std::size_t> ns = {8, 16, 32, 64};
  for (std::size_t n : ns) {
    FiniteSet a = gen_set(SetKind::AP, n, SetParams{});
    fams.push_back({a, a});
  }
  ExpansionReport rep = product_bound_experiment(s, fams, cfg.jobs);
  Rational target = knob(cfg, "sumproduct", Rational(5, 2), Rational(4));
  bool all = true;
  std::string sizes;
  for (const auto& x : rep.samples) {
    all = all && meets_power(x.size, x.n, target);
    sizes += (sizes.empty() ? "" : " ") + std::to_string(x.size);
  }
  bool pass = all || (rep.fit && rep.fit->slope >= target - Rational(1, 10));
  return {pass, "products " + sizes + ", all >= n^" + target.str() + ": " + (all ? "yes" : "no") + ", slope " +
                    (rep.fit ? fmt(rep.fit->slope.to_double()) : "n/a") +
                    (rep.fit && !all ? ", constant " + rep.fit->constant.str() : "")};
}

inline CriterionOutcome classifier(const SelftestConfig& cfg) {
  Rational e = knob(cfg, "classifier", Rational(5, 4), Rational(4, 3));
  auto a = classify_single(parse_poly("x+y^2"), 1);
  auto b = classify_single(parse_poly("(x+y)^3"), 1);
  auto c = classify_pair(parse_poly("x+y"), parse_poly("x+y^2"), 1);
  auto d = classify_pair(parse_poly("x*y"), parse_poly("x^2*y^2"), 1);
  bool ka = a.kind == VerdictKind::Expander && a.exponent == e;
  bool kb = b.kind == VerdictKind::ExceptionalAdditive && b.index_set == std::vector<std::size_t>{0, 1};
  bool kc = c.kind == VerdictKind::Expander && c.exponent == e;
  bool kd = d.kind == VerdictKind::ExceptionalMultiplicative && d.witnesses.size() == 2 &&
            d.witnesses[0].value == Rational(2) && d.witnesses[1].value == Rational(2);
  auto yn = [](bool x) { return std::string(x ? "ok" : "MISMATCH"); };
  return {ka && kb && kc && kd, "x+y^2 " + verdict_name(a.kind) + " " + a.exponent.str() + " " + yn(ka) +
                                    "; (x+y)^3 " + verdict_name(b.kind) + " " + yn(kb) + "; (x+y, x+y^2) " +
                                    verdict_name(c.kind) + " " + yn(kc) + "; (xy, x^2y^2) " + verdict_name(d.kind) +
                                    " " + yn(kd)};
}

}  // namespace selftest_detail

// Criteria 1-10. Determinism (11) is checked by the runner.
inline const std::vector<Criterion>& selftest_criteria() {
  namespace s = selftest_detail;
  static const std::vector<Criterion> list = {
      {1, "roundtrip", 180, s::roundtrip},    {2, "exclusivity", 0, s::exclusivity},
      {3, "implicitize", 60, s::implicitization}, {4, "translates", 300, s::translates},
      {5, "bezout", 0, s::bezout},            {6, "counting", 30, s::counting},
      {7, "chains", 0, s::chains},            {8, "growth", 120, s::growth},
      {9, "sumproduct", 0, s::sumproduct},          {10, "classifier", 0, s::classifier},
  };
  return list;
}

inline std::string criterion_line(int id, const std::string& name, const CriterionOutcome& o) {
  std::ostringstream s;
  s << (o.pass ? "PASS" : "FAIL") << " " << std::setw(2) << id << " " << std::left << std::setw(12) << name << " "
    << o.detail;
  return s.str();
}

struct SelftestResult {
  std::vector<std::string> lines;
  bool all_pass = true;
};

// Runs the selected criteria (all when `only` is empty). The observer sees
// each outcome with its wall time; timings never enter the report lines.
inline SelftestResult run_selftest(const SelftestConfig& cfg, const std::vector<std::string>& only = {},
                                   const std::function<void(const Criterion&, const CriterionOutcome&, double)>& observer = {}) {
  auto wanted = [&](const std::string& n) { return only.empty() || std::find(only.begin(), only.end(), n) != only.end(); };
  for (const auto& n : only) {
    bool known = n == "determinism";
    for (const auto& c : selftest_criteria()) known = known || c.name == n;
    require(known, "unknown selftest criterion '" + n + "'");
  }
  SelftestResult r;
  std::vector<std::string> details;
  for (const auto& c : selftest_criteria()) {
    if (!wanted(c.name)) continue;
    auto t0 = std::chrono::steady_clock::now();
    CriterionOutcome o;
    try {
      o = c.run(cfg);
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (observer) observer(c, o, secs);
    r.lines.push_back(criterion_line(c.id, c.name, o));
    details.push_back(o.detail);
    r.all_pass = r.all_pass && o.pass;
  }
  if (wanted("determinism")) {
    // Replay the cheap, seed-driven criteria with a different worker count.
    SelftestConfig again = cfg;
    again.jobs = cfg.jobs + 1;
    if (cfg.fault == "determinism") again.seed = cfg.seed + 1;
    auto t0 = std::chrono::steady_clock::now();
    std::size_t same = 0, total = 0;
    for (const auto& c : selftest_criteria()) {
      if (c.name == "roundtrip" || c.name == "exclusivity" || c.name == "translates") continue;
      SelftestConfig small = cfg;
      small.scale = std::min(cfg.scale, 0.1);
      SelftestConfig small_again = again;
      small_again.scale = small.scale;
      small.fault.clear();
      small_again.fault.clear();
      ++total;
      same += c.run(small).detail == c.run(small_again).detail;
    }
    CriterionOutcome o{same == total, std::to_string(same) + "/" + std::to_string(total) + " replays identical"};
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Criterion det{11, "determinism", 0, {}};
    if (observer) observer(det, o, secs);
    r.lines.push_back(criterion_line(11, "determinism", o));
    r.all_pass = r.all_pass && o.pass;
  }
  return r;
}

}  // namespace symexp
