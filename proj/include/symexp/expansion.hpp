#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "curves.hpp"
#include "errors.hpp"
#include "multipoly.hpp"
#include "rational.hpp"
#include "structure.hpp"
#include "unipoly.hpp"

namespace symexp {

// Sorted, duplicate-free finite set of rationals.
class FiniteSet {
 public:
  FiniteSet() = default;
  explicit FiniteSet(std::vector<Rational> v) : e_(std::move(v)) {
    std::sort(e_.begin(), e_.end());
    e_.erase(std::unique(e_.begin(), e_.end()), e_.end());
  }
  FiniteSet(std::initializer_list<Rational> v) : FiniteSet(std::vector<Rational>(v)) {}

  const std::vector<Rational>& elements() const { return e_; }
  std::size_t size() const { return e_.size(); }
  bool empty() const { return e_.empty(); }
  bool contains(const Rational& x) const { return std::binary_search(e_.begin(), e_.end(), x); }
  friend bool operator==(const FiniteSet& a, const FiniteSet& b) { return a.e_ == b.e_; }

 private:
  std::vector<Rational> e_;
};

using PlanarPoint = std::pair<Rational, Rational>;

class PlanarSet {
 public:
  PlanarSet() = default;
  explicit PlanarSet(std::vector<PlanarPoint> v) : e_(std::move(v)) {
    std::sort(e_.begin(), e_.end());
    e_.erase(std::unique(e_.begin(), e_.end()), e_.end());
  }
  static PlanarSet product(const FiniteSet& xs, const FiniteSet& ys) {
    std::vector<PlanarPoint> v;
    for (const auto& x : xs.elements())
      for (const auto& y : ys.elements()) v.emplace_back(x, y);
    return PlanarSet(std::move(v));
  }

  const std::vector<PlanarPoint>& points() const { return e_; }
  std::size_t size() const { return e_.size(); }
  bool empty() const { return e_.empty(); }

 private:
  std::vector<PlanarPoint> e_;
};

inline constexpr std::uint64_t kDefaultTupleBudget = 10'000'000;

struct ImageOptions {
  std::uint64_t tuple_budget = kDefaultTupleBudget;
  unsigned jobs = 1;
};

// {P(a_1, ..., a_d) : a_i in A_i} over the full Cartesian product. Work is
// split over the first coordinate; the merged result does not depend on jobs.
inline FiniteSet image_set(const MultiPoly& p, const std::vector<FiniteSet>& sets, const ImageOptions& opt = {}) {
  require(p.arity() == sets.size(), "image_set: need one set per variable");
  std::uint64_t tuples = 1;
  for (const auto& s : sets) {
    require(!s.empty(), "image_set: empty input set");
    if (tuples > opt.tuple_budget / s.size() + 1) throw BudgetExceeded("image_set exceeds the tuple budget");
    tuples *= s.size();
  }
  if (tuples > opt.tuple_budget)
    throw BudgetExceeded("image_set needs " + std::to_string(tuples) + " tuples; budget is " +
                         std::to_string(opt.tuple_budget));
  std::size_t d = sets.size(), n0 = sets[0].size();
  // Univariate coefficient polynomials in x_1 for each suffix tuple would
  // need the same work; evaluate directly.
  auto work = [&](std::size_t lo, std::size_t hi) {
    std::vector<Rational> out;
    std::vector<Rational> x(d);
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t a = lo; a < hi; ++a) {
      x[0] = sets[0].elements()[a];
      std::fill(idx.begin() + 1, idx.end(), 0);
      while (true) {
        for (std::size_t i = 1; i < d; ++i) x[i] = sets[i].elements()[idx[i]];
        out.push_back(p.eval(x));
        std::size_t i = d;
        while (--i >= 1) {
          if (++idx[i] < sets[i].size()) break;
          idx[i] = 0;
        }
        if (i == 0) break;
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(n0)));
  if (jobs == 1) return FiniteSet(work(0, n0));
  std::vector<std::future<std::vector<Rational>>> parts;
  for (unsigned j = 0; j < jobs; ++j)
    parts.push_back(std::async(std::launch::async, work, n0 * j / jobs, n0 * (j + 1) / jobs));
  std::vector<Rational> all;
  for (auto& f : parts) {
    auto v = f.get();
    all.insert(all.end(), v.begin(), v.end());
  }
  return FiniteSet(std::move(all));
}

// p(A) for univariate p.
inline FiniteSet uni_image(const UniPoly& p, const FiniteSet& a) {
  std::vector<Rational> v;
  for (const auto& x : a.elements()) v.push_back(p.eval(x));
  return FiniteSet(std::move(v));
}

// {|x| : x in X, x != 0}. In the exponential chart this is the log-abs set
// {log|x|}: the element r stands for log r.
inline FiniteSet abs_set(const FiniteSet& x) {
  std::vector<Rational> v;
  for (const auto& e : x.elements())
    if (!e.is_zero()) v.push_back(e.abs());
  return FiniteSet(std::move(v));
}

enum class SetOp { Sum, Product, LogAbsSum };

inline SetOp parse_set_op(const std::string& s) {
  if (s == "sum") return SetOp::Sum;
  if (s == "product") return SetOp::Product;
  if (s == "logabs_sum" || s == "logabs") return SetOp::LogAbsSum;
  throw PreconditionError("unknown set operation '" + s + "'");
}

// A+B, A.B, or log|A| + log|B| carried as |A|.|B| (an exact stand-in with the
// same cardinality, since log|x| + log|y| = log|xy|).
inline FiniteSet set_algebra(const FiniteSet& a, const FiniteSet& b, SetOp op) {
  require(!a.empty() && !b.empty(), "set_algebra needs nonempty sets");
  if (op == SetOp::LogAbsSum) {
    FiniteSet aa = abs_set(a), bb = abs_set(b);
    require(!aa.empty() && !bb.empty(), "logabs_sum: a set is empty after removing 0");
    return set_algebra(aa, bb, SetOp::Product);
  }
  std::vector<Rational> v;
  v.reserve(a.size() * b.size());
  for (const auto& x : a.elements())
    for (const auto& y : b.elements()) v.push_back(op == SetOp::Sum ? x + y : x * y);
  return FiniteSet(std::move(v));
}

// size >= n^e, decided exactly as size^den >= n^num.
inline bool meets_power(std::uint64_t size, std::uint64_t n, const Rational& e) {
  require(e.sign() >= 0, "meets_power needs a nonnegative exponent");
  Integer lhs, rhs;
  mpz_pow_ui(lhs.get_mpz_t(), Integer(static_cast<unsigned long>(size)).get_mpz_t(), e.den().get_ui());
  mpz_pow_ui(rhs.get_mpz_t(), Integer(static_cast<unsigned long>(n)).get_mpz_t(), e.num().get_ui());
  return lhs >= rhs;
}

struct EnrResult {
  std::size_t size = 0;      // |S + T|
  std::size_t domain = 0;    // |A| after dropping undefined points
  double bound = 0;          // min{|A||T|, |A|^{3/2} |T|^{1/2}}
  double ratio = 0;
};

// S = {(fx(p(a)), fy(q(a)))} and |S + T|. Log axes use the exponential chart
// (|p(a)| stands for log|p(a)|), where translation is multiplication.
inline EnrResult enr_experiment(const ParamCurve& c, const FiniteSet& a, const PlanarSet& t) {
  require(!line_containment(c).is_line(), "enr_experiment needs a curve not contained in a line");
  require(!a.empty() && !t.empty(), "enr_experiment needs nonempty A and T");
  for (const auto& [x, y] : t.points()) check_vector(c, PlaneVector{x, y});
  auto coord = [](Transform f, const Rational& v) -> std::optional<Rational> {
    if (f == Transform::Identity) return v;
    if (v.is_zero()) return std::nullopt;
    return v.abs();
  };
  std::vector<PlanarPoint> s;
  for (const auto& x : a.elements()) {
    auto u = coord(c.fx, c.p.eval(x)), v = coord(c.fy, c.q.eval(x));
    if (u && v) s.emplace_back(*u, *v);
  }
  EnrResult r;
  for (const auto& x : a.elements())
    if (coord(c.fx, c.p.eval(x)) && coord(c.fy, c.q.eval(x))) ++r.domain;
  require(r.domain > 0, "enr_experiment: no point of A lies in the domain");
  auto shift = [](Transform f, const Rational& u, const Rational& v) { return f == Transform::Identity ? u + v : u * v; };
  std::vector<PlanarPoint> sum;
  sum.reserve(s.size() * t.size());
  for (const auto& [sx, sy] : s)
    for (const auto& [tx, ty] : t.points()) sum.emplace_back(shift(c.fx, sx, tx), shift(c.fy, sy, ty));
  r.size = PlanarSet(std::move(sum)).size();
  double na = static_cast<double>(r.domain), nt = static_cast<double>(t.size());
  r.bound = std::min(na * nt, std::pow(na, 1.5) * std::sqrt(nt));
  r.ratio = static_cast<double>(r.size) / r.bound;
  return r;
}

struct Fit {
  Rational slope;     // nearest multiple of 1/1000
  Rational constant;  // exp(intercept), nearest multiple of 1/1024
};

// Least squares through (log n, log size).
inline Fit fit_exponent(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& samples) {
  require(samples.size() >= 3, "fit_exponent needs at least 3 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    require(samples[i].first > 0 && samples[i].second > 0, "fit_exponent needs positive n and sizes");
    require(i == 0 || samples[i].first > samples[i - 1].first, "fit_exponent needs strictly increasing n");
  }
  double k = static_cast<double>(samples.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, s] : samples) {
    double x = std::log(static_cast<double>(n)), y = std::log(static_cast<double>(s));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  double intercept = (sy - slope * sx) / k;
  auto quantize = [](double v, long den) { return Rational(Integer(static_cast<long>(std::llround(v * den))), den); };
  return {quantize(slope, 1000), quantize(std::exp(intercept), 1024)};
}

enum class BoundKind { SumSum, ProductProduct, SumProduct, AdditiveFamily, MultiplicativeFamily, Mixed };

inline BoundKind parse_bound_kind(const std::string& s) {
  if (s == "lemma42i") return BoundKind::SumSum;
  if (s == "lemma42ii") return BoundKind::ProductProduct;
  if (s == "lemma42iii") return BoundKind::SumProduct;
  if (s == "pdt") return BoundKind::AdditiveFamily;
  if (s == "pdt-mult") return BoundKind::MultiplicativeFamily;
  if (s == "mixed") return BoundKind::Mixed;
  throw PreconditionError("unknown experiment spec '" + s + "'");
}

inline std::string bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::SumSum:
      return "lemma42i";
    case BoundKind::ProductProduct:
      return "lemma42ii";
    case BoundKind::SumProduct:
      return "lemma42iii";
    case BoundKind::AdditiveFamily:
      return "pdt";
    case BoundKind::MultiplicativeFamily:
      return "pdt-mult";
    default:
      return "mixed";
  }
}

// The polynomials of an experiment. Two-variable kinds: u = (p1, p2),
// v = (q1, q2) with sets (A, B). Family kinds: u_1..u_d, v_1..v_d over A_1..A_d.
struct BoundSpec {
  BoundKind kind = BoundKind::SumSum;
  std::vector<UniPoly> u, v;
  std::size_t t = 1;
};

// A violated hypothesis, with the equivalence constant that caused it.
class HypothesisError : public PreconditionError {
 public:
  HypothesisError(const std::string& msg, std::optional<Rational> w)
      : PreconditionError(msg), witness(std::move(w)) {}
  std::optional<Rational> witness;
};

inline Rational target_exponent(const BoundSpec& s) {
  switch (s.kind) {
    case BoundKind::AdditiveFamily:
    case BoundKind::MultiplicativeFamily:
      return Rational(3) - Rational(2).pow(static_cast<unsigned>(s.t)).inverse();
    case BoundKind::Mixed:
      return Rational(3) - Rational(2).pow(static_cast<unsigned>(s.u.size() - 1)).inverse();
    default:
      return Rational(5, 2);
  }
}

inline void check_bound_hypotheses(const BoundSpec& s) {
  require(s.u.size() == s.v.size() && s.u.size() >= 2, "experiment needs matching u and v lists of length >= 2");
  for (const auto* list : {&s.u, &s.v})
    for (const auto& p : *list) require(!p.is_constant(), "experiment polynomials must be nonconstant");
  bool two = s.kind == BoundKind::SumSum || s.kind == BoundKind::ProductProduct || s.kind == BoundKind::SumProduct;
  if (two) require(s.u.size() == 2, "two-variable experiments take (p1, p2) and (q1, q2)");
  auto no_constant = [](const std::vector<UniPoly>& l) {
    for (const auto& p : l) require(p.coeff(0).is_zero(), "polynomial " + p.str() + " has a constant term");
  };
  auto monic = [](const std::vector<UniPoly>& l) {
    for (const auto& p : l) require(p.lc().is_one(), "polynomial " + p.str() + " is not monic");
  };
  switch (s.kind) {
    case BoundKind::SumSum: {
      no_constant(s.u);
      no_constant(s.v);
      if (auto w = equiv_a(s.v[0], s.u[0]))
        throw HypothesisError("q1 = lambda p1 with lambda = " + w->lambda.str() + "; need p1 not ~a q1", w->lambda);
      break;
    }
    case BoundKind::ProductProduct: {
      monic(s.u);
      monic(s.v);
      if (auto w = equiv_m(s.v[0], s.u[0]))
        throw HypothesisError("|q1| = |p1|^kappa with kappa = " + w->kappa().str() + "; need p1 not ~m q1",
                              w->kappa());
      break;
    }
    case BoundKind::AdditiveFamily:
    case BoundKind::MultiplicativeFamily: {
      bool add = s.kind == BoundKind::AdditiveFamily;
      if (add) {
        no_constant(s.u);
        no_constant(s.v);
      } else {
        monic(s.u);
        monic(s.v);
      }
      require(s.t >= 1 && s.t + 1 <= s.u.size(), "t must satisfy 1 <= t <= d-1");
      std::size_t mismatched = 0;
      std::optional<Rational> last;
      for (std::size_t i = 0; i < s.u.size(); ++i) {
        std::optional<Rational> w;
        if (add) {
          if (auto e = equiv_a(s.v[i], s.u[i])) w = e->lambda;
        } else if (auto e = equiv_m(s.v[i], s.u[i])) {
          w = e->kappa();
        }
        if (w)
          last = w;
        else
          ++mismatched;
      }
      if (mismatched < s.t)
        throw HypothesisError("only " + std::to_string(mismatched) + " mismatched coordinates; need t = " +
                                  std::to_string(s.t),
                              last);
      break;
    }
    default:
      break;
  }
}

namespace detail {

inline FiniteSet fold(const std::vector<FiniteSet>& parts, SetOp op) {
  FiniteSet acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = set_algebra(acc, parts[i], op);
  return acc;
}

inline FiniteSet nonzero_part(const FiniteSet& a, const std::vector<const UniPoly*>& polys) {
  std::vector<Rational> v;
  for (const auto& x : a.elements()) {
    bool ok = true;
    for (const auto* p : polys) ok = ok && !p->eval(x).is_zero();
    if (ok) v.push_back(x);
  }
  return FiniteSet(std::move(v));
}

}  // namespace detail

struct BoundSample {
  std::uint64_t n = 0;
  std::uint64_t left = 0, right = 0;  // the two factor cardinalities
  std::uint64_t size = 0;             // left * right
  std::uint64_t effective_n = 0;      // n' after dropping zeros (log coordinates)
  bool meets = false;                 // size >= n'^target, exactly
};

// The left side of the bound for one family of sets (A, B) or (A_1..A_d).
inline BoundSample bound_sample(const BoundSpec& s, const std::vector<FiniteSet>& sets) {
  std::size_t d = s.u.size();
  require(sets.size() == d, "experiment needs one set per coordinate");
  for (const auto& a : sets) require(a.size() == sets[0].size() && !a.empty(), "experiment sets must share a size n");
  BoundSample r;
  r.n = r.effective_n = sets[0].size();
  auto images = [&](const std::vector<UniPoly>& polys, const std::vector<FiniteSet>& xs, bool log) {
    std::vector<FiniteSet> out;
    for (std::size_t i = 0; i < d; ++i) {
      FiniteSet img = uni_image(polys[i], xs[i]);
      out.push_back(log ? abs_set(img) : img);
    }
    return out;
  };
  switch (s.kind) {
    case BoundKind::SumSum:
    case BoundKind::AdditiveFamily:
      r.left = detail::fold(images(s.u, sets, false), SetOp::Sum).size();
      r.right = detail::fold(images(s.v, sets, false), SetOp::Sum).size();
      break;
    case BoundKind::ProductProduct:
      r.left = detail::fold(images(s.u, sets, false), SetOp::Product).size();
      r.right = detail::fold(images(s.v, sets, false), SetOp::Product).size();
      break;
    case BoundKind::SumProduct:
      r.left = detail::fold(images(s.u, sets, false), SetOp::Sum).size();
      r.right = detail::fold(images(s.v, sets, false), SetOp::Product).size();
      break;
    case BoundKind::MultiplicativeFamily:
    case BoundKind::Mixed: {
      // A_i' drops zeros of the factors that enter through log|.|.
      bool mult = s.kind == BoundKind::MultiplicativeFamily;
      std::vector<FiniteSet> trimmed;
      for (std::size_t i = 0; i < d; ++i) {
        std::vector<const UniPoly*> zs{&s.v[i]};
        if (mult) zs.push_back(&s.u[i]);
        trimmed.push_back(detail::nonzero_part(sets[i], zs));
        require(!trimmed.back().empty(), "every set loses all points to zeros");
        r.effective_n = std::min<std::uint64_t>(r.effective_n, trimmed.back().size());
      }
      r.left = detail::fold(images(s.u, trimmed, mult), mult ? SetOp::Product : SetOp::Sum).size();
      r.right = detail::fold(images(s.v, trimmed, true), SetOp::Product).size();
      break;
    }
  }
  r.size = r.left * r.right;
  r.meets = meets_power(r.size, r.effective_n, target_exponent(s));
  return r;
}

struct ExpansionReport {
  BoundKind kind = BoundKind::SumSum;
  Rational target;
  std::vector<BoundSample> samples;
  std::optional<Fit> fit;  // needs 3 or more samples
};

// Hypotheses first, then one sample per family of sets; samples run on up to
// `jobs` threads and are reported in input order.
inline ExpansionReport product_bound_experiment(const BoundSpec& s, const std::vector<std::vector<FiniteSet>>& families,
                                                unsigned jobs = 1) {
  check_bound_hypotheses(s);
  require(!families.empty(), "experiment needs at least one family of sets");
  ExpansionReport rep;
  rep.kind = s.kind;
  rep.target = target_exponent(s);
  rep.samples.resize(families.size());
  std::size_t next = 0;
  while (next < families.size()) {
    std::vector<std::future<BoundSample>> batch;
    std::size_t start = next;
    for (unsigned j = 0; j < std::max(1u, jobs) && next < families.size(); ++j, ++next)
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, bound_sample, std::cref(s),
                                 std::cref(families[next])));
    for (std::size_t k = 0; k < batch.size(); ++k) rep.samples[start + k] = batch[k].get();
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pts;
  for (const auto& x : rep.samples) pts.emplace_back(x.n, x.size);
  bool increasing = true;
  for (std::size_t i = 1; i < pts.size(); ++i) increasing = increasing && pts[i].first > pts[i - 1].first;
  if (pts.size() >= 3 && increasing) rep.fit = fit_exponent(pts);
  return rep;
}

struct IncidenceResult {
  std::size_t incidences = 0;
  double st_bound = 0;  // |Pi|^{2/3} |Gamma|^{2/3} + |Pi| + |Gamma|
};

// Incidences between points and translates C + a.
inline IncidenceResult incidence_count(const PlanarSet& points,
                                       const std::vector<std::pair<ParamCurve, PlaneVector>>& curves) {
  for (const auto& [c, a] : curves)
    require(!line_containment(c).is_line(), "incidence_count needs curves not contained in a line");
  IncidenceResult r;
  for (const auto& [c, a] : curves)
    for (const auto& [x, y] : points.points()) r.incidences += on_translate(c, PlaneVector{x, y}, a);
  double np = static_cast<double>(points.size()), nc = static_cast<double>(curves.size());
  r.st_bound = std::cbrt(np * np * nc * nc) + np + nc;
  return r;
}

enum class SetKind { AP, GP, Random, List };

// ap: a, a+step, ...; gp: a, a*ratio, ...; random: n distinct rationals with
// numerators in [-range, range] and denominators in [1, den], drawn from
// mt19937_64 by modular reduction.
struct SetParams {
  Rational start = 1, step = 1;  // step doubles as the gp ratio
  std::uint64_t seed = 0;
  long range = 0;  // 0: max(16, 4n)
  long den = 1;
};

inline FiniteSet gen_set(SetKind kind, std::size_t n, const SetParams& p) {
  require(n >= 1, "gen_set needs n >= 1");
  std::vector<Rational> v;
  switch (kind) {
    case SetKind::AP: {
      require(!p.step.is_zero(), "ap step must be nonzero");
      for (std::size_t k = 0; k < n; ++k) v.push_back(p.start + p.step * Rational(static_cast<long>(k)));
      break;
    }
    case SetKind::GP: {
      require(!p.start.is_zero(), "gp start must be nonzero");
      require(!p.step.is_zero() && p.step.abs() != Rational(1), "gp ratio must not be 0 or +-1");
      Rational x = p.start;
      for (std::size_t k = 0; k < n; ++k, x *= p.step) v.push_back(x);
      break;
    }
    case SetKind::Random: {
      long range = p.range > 0 ? p.range : std::max<long>(16, 4 * static_cast<long>(n));
      require(p.den >= 1, "random denominator bound must be >= 1");
      require(static_cast<std::size_t>(2 * range + 1) >= n, "random range too small for n distinct values");
      std::mt19937_64 g(p.seed);
      while (v.size() < n) {
        long num = static_cast<long>(g() % static_cast<std::uint64_t>(2 * range + 1)) - range;
        long den = 1 + static_cast<long>(g() % static_cast<std::uint64_t>(p.den));
        Rational x{Integer(num), Integer(den)};
        if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
      }
      break;
    }
    default:
      throw PreconditionError("gen_set: use parse_set_spec for explicit lists");
  }
  FiniteSet s(std::move(v));
  ensure(s.size() == n, "gen_set produced duplicates");
  return s;
}

// Set-spec mini-language: ap:start:step:n, gp:start:ratio:n,
// rand:seed:n[:range[:den]], list:a|b|c.
inline FiniteSet parse_set_spec(const std::string& text) {
  std::vector<std::string> f;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) f.push_back(part);
  require(!f.empty(), "empty set spec");
  auto num = [&](std::size_t i) {
    require(i < f.size(), "set spec '" + text + "' is missing fields");
    return Rational::parse(f[i]);
  };
  auto count = [&](std::size_t i) {
    Rational r = num(i);
    require(r.is_integer() && r.sign() > 0 && r <= Rational(1 << 20), "set size must be a positive integer");
    return static_cast<std::size_t>(r.num().get_ui());
  };
  auto uint = [&](std::size_t i) {
    Rational r = num(i);
    require(r.is_integer() && r.sign() >= 0, "seed must be a nonnegative integer");
    return static_cast<std::uint64_t>(r.num().get_ui());
  };
  const std::string& kind = f[0];
  if (kind == "ap" || kind == "gp") {
    require(f.size() == 4, "expected " + kind + ":start:" + (kind == "ap" ? "step" : "ratio") + ":n");
    SetParams p;
    p.start = num(1);
    p.step = num(2);
    return gen_set(kind == "ap" ? SetKind::AP : SetKind::GP, count(3), p);
  }
  if (kind == "rand" || kind == "random") {
    require(f.size() >= 3 && f.size() <= 5, "expected rand:seed:n[:range[:den]]");
    SetParams p;
    p.seed = uint(1);
    if (f.size() >= 4) p.range = static_cast<long>(uint(3));
    if (f.size() == 5) p.den = static_cast<long>(uint(4));
    return gen_set(SetKind::Random, count(2), p);
  }
  if (kind == "list") {
    require(f.size() == 2 && !f[1].empty(), "expected list:a|b|c");
    std::vector<Rational> v;
    std::stringstream ls(f[1]);
    std::string item;
    while (std::getline(ls, item, '|')) v.push_back(Rational::parse(item));
    return FiniteSet(std::move(v));
  }
  throw PreconditionError("unknown set kind '" + kind + "' (ap, gp, rand, list)");
}

}  // namespace symexp
