#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fmankit/series.hpp"

namespace fmankit {

enum class Family {
    Thm5_2,
    Thm5_4a,
    Thm5_4b,
    Thm5_4c,
    Thm5_6,
    Lem5_8,
    Ex6_2_A3,
    Ex6_2_B3,
    Ex6_2_H3,
    Lem6_4,
    Lem6_5,
    Thm7_1a,
    Thm7_1b,
    Thm7_1c,
    Thm7_1d,
    Thm7_1e,
    Cor7_2_ai,
    Cor7_2_aii,
    Cor7_2_aiii,
    Cor7_2_b,
    Cor7_2_c,
    Cor7_2_d,
    Cor7_2_e,
    Prod_A1A1A1,
    Prod_A1I2m,
    Prod_A1N2,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);  // UnknownFamily
const std::vector<Family>& all_families();

// Series parameters are parsed at this truncation and cut down at build time.
inline constexpr int kParamTruncation = 64;

struct FamilySpec {
    Family family = Family::Thm5_4a;
    int p = 2;
    int q = 2;
    int m = 3;
    int p2 = 2;
    int p3 = 2;
    std::vector<Rat> gamma;    // gamma_0 ... gamma_{p-2}; missing entries read as 0
    std::optional<Rat> tau0;   // base point shift for Cor7_2_ai, Cor7_2_aii, Cor7_2_c
    Rat c1 = 0;                // constant part of eps1
    Rat c2 = 1;                // unit shifts of the further factors in products
    Rat c3 = 2;
    // Free series parameters, keyed by b2, f, f1, f2, h, eps2, eps30, eps3.
    // For Prod_A1N2, eps3 is the d3-coefficient g(t3) of the Euler field.
    std::map<std::string, Series2> series;

    Rat gamma_at(int i) const { return i < static_cast<int>(gamma.size()) ? gamma[i] : Rat(0); }
    const Series2* find_series(const std::string& key) const;

    // Parse a "key=value" parameter as used on the command line. gamma takes a
    // comma list; gamma0, gamma1, ... set single entries.
    void set_param(const std::string& key, const std::string& value);
};

}  // namespace fmankit
