#pragma once

// JSON forms of the library types. nlohmann::json keeps object keys sorted,
// and every container below is already ordered, so output is byte-stable.

#include <json.hpp>

#include "symqva/bicharacter/braiding.hpp"
#include "symqva/bicharacter/fields.hpp"
#include "symqva/orthopoly.hpp"

namespace symqva::json_io {

using nlohmann::json;

inline json to_json(const Partition& p) { return json(p.parts()); }

inline json to_json(const ParamSeries& s) {
  json terms = json::array();
  for (const auto& t : s.terms()) terms.push_back({{"q", t.exp.q}, {"t", t.exp.t}, {"coeff", t.coeff.get_str()}});
  return {{"order", s.order()}, {"terms", std::move(terms)}};
}

inline json to_json(const RatFunc& f) { return f.to_string(); }

/// {"basis": "p", "terms": [{"partition": [...], "coeff": "..."}]}
inline json to_json(const SymFunc& f) {
  json terms = json::array();
  for (const auto& [lam, c] : f.terms()) terms.push_back({{"partition", to_json(lam)}, {"coeff", to_json(c)}});
  return {{"basis", "p"}, {"terms", std::move(terms)}};
}

inline json to_json(const MonomialCoeffs& f) {
  json terms = json::array();
  for (const auto& [lam, c] : f) terms.push_back({{"partition", to_json(lam)}, {"coeff", to_json(c)}});
  return {{"basis", "m"}, {"terms", std::move(terms)}};
}

inline json to_json(const LatticeState& s) {
  json terms = json::array();
  for (const auto& [key, c] : s.terms())
    terms.push_back({{"partition", to_json(key.first)}, {"charge", key.second}, {"coeff", to_json(c)}});
  return {{"basis", "p"}, {"terms", std::move(terms)}};
}

inline json to_json(const VMono& m) { return {{"h", to_json(m.h)}, {"charge", m.charge}}; }

inline json coeff_json(const Rational& c) { return c.get_str(); }
inline json coeff_json(const RatFunc& c) { return to_json(c); }
inline json coeff_json(const ParamSeries& c) { return to_json(c); }

template <class C>
json to_json(const VElementT<C>& a) {
  json terms = json::array();
  for (const auto& [m, c] : a.terms()) terms.push_back({{"mono", to_json(m)}, {"coeff", coeff_json(c)}});
  return {{"terms", std::move(terms)}};
}

inline json to_json(const KElement& k) {
  json plain = json::array(), poles = json::array();
  for (const auto& [key, c] : k.terms()) {
    if (key.pole) poles.push_back({{"zw_pow", key.a}, {"w", key.b}, {"coeff_series", to_json(c)}});
    else plain.push_back({{"z", key.a}, {"w", key.b}, {"coeff_series", to_json(c)}});
  }
  return {{"order", k.order()}, {"plain", std::move(plain)}, {"poles", std::move(poles)}};
}

inline json to_json(const LaurentZ& f) {
  json terms = json::array();
  for (const auto& [k, c] : f.terms()) terms.push_back({{"z", k}, {"coeff_series", to_json(c)}});
  return {{"order", f.order()}, {"terms", std::move(terms)}};
}

inline json to_json(const RTensor& t) {
  json terms = json::array();
  for (const auto& [key, k] : t)
    terms.push_back({{"left", to_json(key.first)}, {"right", to_json(key.second)}, {"k", to_json(k)}});
  return {{"terms", std::move(terms)}};
}

inline json to_json(const FieldModes& modes) {
  json out = json::array();
  for (const auto& [k, v] : modes) out.push_back({{"z", k}, {"value", to_json(v)}});
  return out;
}

}  // namespace symqva::json_io
