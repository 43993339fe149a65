// JSON forms of the public value types. Indices are 1-based on the wire;
// ruling pairs are sorted by closer, morphism terms by canonical key order.

#pragma once

#include <json.hpp>

#include "flagtangle/functor.hpp"

namespace flagtangle {

using nlohmann::json;

inline json to_json(const SkeinScalar& s) {
    json coeffs = json::array();
    for (const BigInt& c : s.coeffs()) coeffs.push_back(c.str());
    return json{{"coeffs", coeffs}, {"lowExp", s.low_exp()}, {"denomPow", s.denom_pow()}};
}

inline json to_json(const ExactRational& r) {
    return json{{"num", r.num().str()}, {"den", r.den().str()}};
}

inline json to_json(const GradedOrderedSet& x) { return json{{"degrees", x.degrees}}; }

inline json to_json(const PartialRuling& r) {
    json pairs = json::array();
    for (auto [o, c] : r.pairs) pairs.push_back(json::array({o + 1, c + 1}));
    return json{{"pairs", pairs}};
}

inline json to_json(const SkeinVector& v) {
    json terms = json::array();
    for (const auto& [r, c] : v.terms)
        terms.push_back(json{{"ruling", to_json(r)}, {"coeff", to_json(c)}});
    return json{{"src", to_json(v.src)}, {"terms", terms}};
}

inline json to_json(const HMorphism& m) {
    json terms = json::array();
    for (const auto& [k, c] : m.terms)
        terms.push_back(json{{"key", to_json(k.coneRuling)}, {"coeff", to_json(c)}});
    return json{{"q", m.q}, {"src", to_json(m.src)}, {"dst", to_json(m.dst)}, {"terms", terms}};
}

inline json to_json(const CheckReport& r) {
    return json{{"check", r.check}, {"instances", r.instances}, {"failures", r.failures}};
}

// ---- plain-text forms shared by the CLI and the golden corpus ----

inline std::string ruling_str(const PartialRuling& r) {
    if (r.pairs.empty()) return "[]";
    std::string s = "[";
    for (size_t i = 0; i < r.pairs.size(); ++i) {
        if (i) s += ", ";
        s += "(" + std::to_string(r.pairs[i].first + 1) + "," +
             std::to_string(r.pairs[i].second + 1) + ")";
    }
    return s + "]";
}

inline std::string gos_str(const GradedOrderedSet& x) {
    std::string s = "[";
    for (int i = 0; i < x.size(); ++i) s += (i ? ", " : "") + std::to_string(x.deg(i));
    return s + "]";
}

inline std::string skein_vector_str(const SkeinVector& v) {
    if (v.terms.empty()) return "0\n";
    std::string out;
    for (const auto& [r, c] : v.terms) out += c.str() + " * " + ruling_str(r) + "\n";
    return out;
}

inline std::string hmorphism_str(const HMorphism& m) {
    std::string out = "Hom(" + gos_str(m.src) + " -> " + gos_str(m.dst) +
                      ") at q=" + std::to_string(m.q) + "\n";
    if (m.terms.empty()) return out + "0\n";
    for (const auto& [k, c] : m.terms) out += c.str() + " * key" + ruling_str(k.coneRuling) + "\n";
    return out;
}

}  // namespace flagtangle
