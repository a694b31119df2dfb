#pragma once

#include <json.hpp>

#include "enrlat/types.hpp"

namespace enrlat {

// Rationals are serialized as exact integer pairs in decimal strings, never
// as decimal fractions: parsing the emitted report reproduces the value.
inline nlohmann::json rat_to_json(const Rat& r) {
    return nlohmann::json{{"num", r.num().get_str()}, {"den", r.den().get_str()}};
}

inline Rat rat_from_json(const nlohmann::json& j) {
    return Rat(Int(j.at("num").get<std::string>()), Int(j.at("den").get<std::string>()));
}

inline nlohmann::json vec_to_json(const VecQ& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(rat_to_json(v[i]));
    return a;
}

inline VecQ vec_from_json(const nlohmann::json& j) {
    VecQ v(static_cast<Index>(j.size()));
    for (Index i = 0; i < v.size(); ++i) v[i] = rat_from_json(j.at(static_cast<size_t>(i)));
    return v;
}

}  // namespace enrlat
