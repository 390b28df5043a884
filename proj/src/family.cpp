#include "fmankit/family.hpp"

#include <algorithm>
#include <utility>

namespace fmankit {

namespace {

const std::vector<std::pair<Family, std::string>>& names() {
    static const std::vector<std::pair<Family, std::string>> table = {
        {Family::Thm5_2, "Thm5_2"},
        {Family::Thm5_4a, "Thm5_4a"},
        {Family::Thm5_4b, "Thm5_4b"},
        {Family::Thm5_4c, "Thm5_4c"},
        {Family::Thm5_6, "Thm5_6"},
        {Family::Lem5_8, "Lem5_8"},
        {Family::Ex6_2_A3, "Ex6_2_A3"},
        {Family::Ex6_2_B3, "Ex6_2_B3"},
        {Family::Ex6_2_H3, "Ex6_2_H3"},
        {Family::Lem6_4, "Lem6_4"},
        {Family::Lem6_5, "Lem6_5"},
        {Family::Thm7_1a, "Thm7_1a"},
        {Family::Thm7_1b, "Thm7_1b"},
        {Family::Thm7_1c, "Thm7_1c"},
        {Family::Thm7_1d, "Thm7_1d"},
        {Family::Thm7_1e, "Thm7_1e"},
        {Family::Cor7_2_ai, "Cor7_2_ai"},
        {Family::Cor7_2_aii, "Cor7_2_aii"},
        {Family::Cor7_2_aiii, "Cor7_2_aiii"},
        {Family::Cor7_2_b, "Cor7_2_b"},
        {Family::Cor7_2_c, "Cor7_2_c"},
        {Family::Cor7_2_d, "Cor7_2_d"},
        {Family::Cor7_2_e, "Cor7_2_e"},
        {Family::Prod_A1A1A1, "Prod_A1A1A1"},
        {Family::Prod_A1I2m, "Prod_A1I2m"},
        {Family::Prod_A1N2, "Prod_A1N2"},
    };
    return table;
}

const std::vector<std::string>& series_keys() {
    static const std::vector<std::string> keys = {"b2", "f", "f1", "f2", "h", "eps2", "eps30", "eps3"};
    return keys;
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError("parameter " + key + " expects an integer, got '" + value + "'");
    }
}

}  // namespace

std::string family_name(Family f) {
    for (const auto& [fam, name] : names())
        if (fam == f) return name;
    throw UnknownFamily("unnamed family");
}

Family family_from_name(const std::string& name) {
    for (const auto& [fam, n] : names())
        if (n == name) return fam;
    throw UnknownFamily("unknown family '" + name + "'");
}

const std::vector<Family>& all_families() {
    static const std::vector<Family> fams = [] {
        std::vector<Family> v;
        for (const auto& entry : names()) v.push_back(entry.first);
        return v;
    }();
    return fams;
}

const Series2* FamilySpec::find_series(const std::string& key) const {
    const auto it = series.find(key);
    return it == series.end() ? nullptr : &it->second;
}

void FamilySpec::set_param(const std::string& key, const std::string& value) {
    if (key == "p") p = parse_int(key, value);
    else if (key == "q") q = parse_int(key, value);
    else if (key == "m") m = parse_int(key, value);
    else if (key == "p2") p2 = parse_int(key, value);
    else if (key == "p3") p3 = parse_int(key, value);
    else if (key == "c1") c1 = parse_rat(value);
    else if (key == "c2") c2 = parse_rat(value);
    else if (key == "c3") c3 = parse_rat(value);
    else if (key == "tau0") tau0 = parse_rat(value);
    else if (key == "gamma") {
        gamma.clear();
        std::size_t start = 0;
        while (start <= value.size()) {
            const std::size_t comma = value.find(',', start);
            const std::string part = value.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            gamma.push_back(parse_rat(part));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    } else if (key.rfind("gamma", 0) == 0 && key.size() > 5) {
        const int idx = parse_int(key, key.substr(5));
        if (idx < 0 || idx > 64) throw ParseError("bad gamma index in " + key);
        if (static_cast<int>(gamma.size()) <= idx) gamma.resize(idx + 1, Rat(0));
        gamma[idx] = parse_rat(value);
    } else if (std::find(series_keys().begin(), series_keys().end(), key) != series_keys().end()) {
        series[key] = Series2::parse(value, kParamTruncation);
    } else {
        throw ParseError("unknown parameter '" + key + "'");
    }
}

}  // namespace fmankit
