#pragma once

#include <json.hpp>

#include <string>

#include "multipoly.hpp"
#include "unipoly.hpp"

namespace symexp {

using json = nlohmann::ordered_json;

inline json to_json(const Rational& r) { return r.str(); }

// {"arity": d, "terms": [{"exp": [...], "coef": "a/b"}, ...]} in grlex order.
inline json to_json(const MultiPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exp", e}, {"coef", c.str()}});
  return {{"arity", p.arity()}, {"terms", std::move(terms)}, {"text", p.str()}};
}

inline json to_json(const UniPoly& u, const std::string& var = "t") {
  json coeffs = json::array();
  for (const auto& c : u.coeffs()) coeffs.push_back(c.str());
  return {{"coeffs", std::move(coeffs)}, {"text", u.str(var)}};
}

inline MultiPoly multipoly_from_json(const json& j) {
  try {
    std::size_t arity = j.at("arity").get<std::size_t>();
    require(arity >= 1, "arity must be positive");
    MultiPoly::TermMap terms;
    for (const auto& t : j.at("terms")) {
      Exponent e = t.at("exp").get<Exponent>();
      require(e.size() == arity, "exponent length differs from arity");
      Rational c = Rational::parse(t.at("coef").get<std::string>());
      require(!c.is_zero(), "zero coefficient in term list");
      require(terms.emplace(std::move(e), c).second, "duplicate exponent in term list");
    }
    return MultiPoly(arity, std::move(terms));
  } catch (const json::exception& ex) {
    throw PreconditionError(std::string("malformed polynomial json: ") + ex.what());
  }
}

}  // namespace symexp
