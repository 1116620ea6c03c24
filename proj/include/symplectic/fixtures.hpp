#pragma once

#include <fstream>
#include <map>
#include <string>

#include <json.hpp>

#include "symplectic/weierstrass.hpp"

#ifndef SYMPLECTIC_FIXTURES_PATH
#define SYMPLECTIC_FIXTURES_PATH "data/fixtures.json"
#endif

namespace symplectic {

inline constexpr const char* kDefaultFixturesPath = SYMPLECTIC_FIXTURES_PATH;

// [a1, a2, a3, a4, a6], or [a, b] for y^2 = x^3 + a x + b; entries are JSON integers or decimal strings.
inline WeierstrassModel model_from_json(const nlohmann::json& j) {
    require(j.is_array() && (j.size() == 5 || j.size() == 2), ErrorCode::InvalidArgument,
            "curve must be an array of five coefficients or a short pair [a, b]");
    Integer c[5];
    for (size_t i = 0; i < j.size(); ++i) {
        const auto& x = j[i];
        std::string s;
        if (x.is_string()) s = x.get<std::string>();
        else if (x.is_number_integer()) s = x.dump();
        else fail(ErrorCode::InvalidArgument, "coefficient is not an integer: " + x.dump());
        if (c[i].set_str(s, 10) != 0) fail(ErrorCode::InvalidArgument, "bad integer coefficient: " + s);
    }
    if (j.size() == 2) return short_model(c[0], c[1]);
    return {c[0], c[1], c[2], c[3], c[4]};
}

inline WeierstrassModel parse_model(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("curve is not valid JSON: ") + e.what());
    }
    return model_from_json(j);
}

using FixtureMap = std::map<std::string, WeierstrassModel>;

inline FixtureMap load_fixtures(const std::string& path = kDefaultFixturesPath) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::InvalidArgument, "cannot open fixture file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidArgument, "fixture file " + path + " is not valid JSON: " + e.what());
    }
    require(j.is_object(), ErrorCode::InvalidArgument, "fixture file must map labels to coefficient arrays");
    FixtureMap out;
    for (auto it = j.begin(); it != j.end(); ++it) out.emplace(it.key(), model_from_json(it.value()));
    return out;
}

inline WeierstrassModel fixture(const FixtureMap& m, const std::string& label) {
    auto it = m.find(label);
    require(it != m.end(), ErrorCode::InvalidArgument, "unknown fixture label " + label);
    return it->second;
}

}  // namespace symplectic
