#include "fmankit/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fmankit/family.hpp"

namespace fmankit {

using json = nlohmann::ordered_json;

namespace {

const char* kTableFormat = "fmankit-table/1";
const char* kFieldFormat = "fmankit-field/1";
const char* kInitFormat = "fmankit-pde-init/1";

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + " must be an object");
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k)) throw ParseError("unknown key '" + k + "' in " + where);
}

const json& member(const json& obj, const std::string& key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError("missing key '" + key + "' in " + where);
    return *it;
}

Rat rat_value(const json& v, const std::string& where) {
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return parse_rat(v.dump());
    throw ParseError(where + ": coefficient must be a string \"num/den\" or an integer");
}

Series2 series_from_json(const json& arr, int D, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + " must be an array of [i, j, \"num/den\"]");
    Series2 s(D);
    std::set<std::pair<int, int>> seen;
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw ParseError(where + ": entries are [i, j, \"num/den\"]");
        const long long i = e[0].get<long long>(), j = e[1].get<long long>();
        if (i < 0 || j < 0) throw ParseError(where + ": negative exponent");
        if (i + j >= D)
            throw ParseError(where + ": entry t2^" + std::to_string(i) + " t3^" + std::to_string(j) +
                             " lies outside truncation " + std::to_string(D));
        if (!seen.insert({static_cast<int>(i), static_cast<int>(j)}).second)
            throw ParseError(where + ": duplicate entry");
        s.set(static_cast<int>(i), static_cast<int>(j), rat_value(e[2], where));
    }
    return s;
}

std::string series_text(const Series2& s) {
    std::string out = "[";
    bool first = true;
    for (const auto& t : s.terms()) {
        if (!first) out += ", ";
        first = false;
        out += "[" + std::to_string(t.i) + ", " + std::to_string(t.j) + ", " + json(format_rat(t.c)).dump() + "]";
    }
    return out + "]";
}

int truncation_value(const json& v) {
    if (!v.is_number_integer()) throw ParseError("truncation must be an integer");
    const long long D = v.get<long long>();
    if (D < 1 || D > 512) throw ParseError("truncation out of range");
    return static_cast<int>(D);
}

Mero mero_from_json(const json& v, const std::string& where) {
    if (v.is_array()) return Mero(series_from_json(v, kParamTruncation, where));
    only_keys(v, {"pole", "series"}, where);
    const json& pole = member(v, "pole", where);
    if (!pole.is_number_integer() || pole.get<long long>() < 0 || pole.get<long long>() > 64)
        throw ParseError(where + ": pole must be a small non-negative integer");
    return Mero(series_from_json(member(v, "series", where), kParamTruncation, where),
                static_cast<int>(pole.get<long long>()));
}

}  // namespace

std::string frame_name(Frame f) {
    switch (f) {
        case Frame::Tilde: return "tilde";
        case Frame::Abc: return "abc";
        default: return "gh";
    }
}

const std::vector<std::string>& coefficient_names(Frame f) {
    static const std::vector<std::string> tilde = {"at1", "at2", "a3", "bt1", "b2", "b3", "ct1", "c2", "ct3"};
    static const std::vector<std::string> abc = {"a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3"};
    static const std::vector<std::string> gh = {"g2", "g1", "g0", "h2", "h1", "h0"};
    switch (f) {
        case Frame::Tilde: return tilde;
        case Frame::Abc: return abc;
        default: return gh;
    }
}

MultTable TableDocument::table() const {
    const auto& c = coefficients;
    switch (frame) {
        case Frame::Tilde:
            return {c.at("at1"), c.at("at2"), c.at("a3"), c.at("bt1"), c.at("b2"),
                    c.at("b3"), c.at("ct1"), c.at("c2"), c.at("ct3")};
        case Frame::Abc:
            return abc_to_table({c.at("a1"), c.at("a2"), c.at("a3"), c.at("b1"), c.at("b2"), c.at("b3"),
                                 c.at("c1"), c.at("c2"), c.at("c3")});
        default:
            return gh_to_table(*gh());
    }
}

std::optional<GhFrame> TableDocument::gh() const {
    if (frame != Frame::Gh) return std::nullopt;
    const auto& c = coefficients;
    return GhFrame{c.at("g2"), c.at("g1"), c.at("g0"), c.at("h2"), c.at("h1"), c.at("h0")};
}

TableDocument TableDocument::from_table(const MultTable& t) {
    TableDocument d;
    d.truncation = t.truncation();
    d.frame = Frame::Tilde;
    const Series2* v[] = {&t.at1, &t.at2, &t.a3, &t.bt1, &t.b2, &t.b3, &t.ct1, &t.c2, &t.ct3};
    const auto& names = coefficient_names(Frame::Tilde);
    for (std::size_t k = 0; k < names.size(); ++k) d.coefficients[names[k]] = v[k]->truncated(d.truncation);
    return d;
}

TableDocument TableDocument::from_gh(const GhFrame& gh) {
    TableDocument d;
    d.frame = Frame::Gh;
    const Series2* v[] = {&gh.g2, &gh.g1, &gh.g0, &gh.h2, &gh.h1, &gh.h0};
    d.truncation = v[0]->truncation();
    for (const Series2* s : v) d.truncation = std::min(d.truncation, s->truncation());
    const auto& names = coefficient_names(Frame::Gh);
    for (std::size_t k = 0; k < names.size(); ++k) d.coefficients[names[k]] = v[k]->truncated(d.truncation);
    return d;
}

TableDocument parse_table_document(const std::string& text) {
    const json j = parse_json(text);
    only_keys(j, {"format", "truncation", "frame", "coefficients"}, "table document");
    const json& fmt = member(j, "format", "table document");
    if (!fmt.is_string() || fmt.get<std::string>() != kTableFormat)
        throw ParseError(std::string("format must be \"") + kTableFormat + "\"");
    TableDocument d;
    d.truncation = truncation_value(member(j, "truncation", "table document"));
    const json& fr = member(j, "frame", "table document");
    const std::string frame = fr.is_string() ? fr.get<std::string>() : "";
    if (frame == "tilde") d.frame = Frame::Tilde;
    else if (frame == "abc") d.frame = Frame::Abc;
    else if (frame == "gh") d.frame = Frame::Gh;
    else throw ParseError("frame must be tilde, abc or gh");
    const auto& names = coefficient_names(d.frame);
    const json& coeffs = member(j, "coefficients", "table document");
    only_keys(coeffs, std::set<std::string>(names.begin(), names.end()), "coefficients of frame " + frame);
    for (const auto& n : names) {
        const auto it = coeffs.find(n);
        d.coefficients[n] = it == coeffs.end() ? Series2(d.truncation) : series_from_json(*it, d.truncation, n);
    }
    return d;
}

std::string serialize(const TableDocument& d) {
    std::ostringstream os;
    os << "{\n  \"format\": \"" << kTableFormat << "\",\n  \"truncation\": " << d.truncation
       << ",\n  \"frame\": \"" << frame_name(d.frame) << "\",\n  \"coefficients\": {\n";
    const auto& names = coefficient_names(d.frame);
    for (std::size_t k = 0; k < names.size(); ++k) {
        const auto it = d.coefficients.find(names[k]);
        const Series2 s = it == d.coefficients.end() ? Series2(d.truncation) : it->second;
        os << "    \"" << names[k] << "\": " << series_text(s) << (k + 1 < names.size() ? ",\n" : "\n");
    }
    os << "  }\n}\n";
    return os.str();
}

VectorField parse_field_document(const std::string& text) {
    const json j = parse_json(text);
    only_keys(j, {"format", "c", "eps1", "eps2", "eps3"}, "field document");
    const json& fmt = member(j, "format", "field document");
    if (!fmt.is_string() || fmt.get<std::string>() != kFieldFormat)
        throw ParseError(std::string("format must be \"") + kFieldFormat + "\"");
    const Rat c = rat_value(member(j, "c", "field document"), "c");
    const Series2 e1 = series_from_json(member(j, "eps1", "field document"), kParamTruncation, "eps1");
    return VectorField::make(c, e1, mero_from_json(member(j, "eps2", "field document"), "eps2"),
                             mero_from_json(member(j, "eps3", "field document"), "eps3"));
}

std::string serialize(const VectorField& E0) {
    const VectorField E = E0.canonical();
    std::ostringstream os;
    os << "{\n  \"format\": \"" << kFieldFormat << "\",\n  \"c\": " << json(format_rat(E.c)).dump()
       << ",\n  \"eps1\": " << series_text(E.eps1_0) << ",\n  \"eps2\": {\"pole\": " << E.eps2.pole
       << ", \"series\": " << series_text(E.eps2.num) << "},\n  \"eps3\": {\"pole\": " << E.eps3.pole
       << ", \"series\": " << series_text(E.eps3.num) << "}\n}\n";
    return os.str();
}

InitialData parse_pde_init(const std::string& text) {
    const json j = parse_json(text);
    only_keys(j, {"format", "truncation", "g2", "g1", "g0", "h2", "h1", "h0", "h0_mode", "order"}, "initial data");
    const json& fmt = member(j, "format", "initial data");
    if (!fmt.is_string() || fmt.get<std::string>() != kInitFormat)
        throw ParseError(std::string("format must be \"") + kInitFormat + "\"");
    const int D = truncation_value(member(j, "truncation", "initial data"));
    InitialData in;
    auto get = [&](const char* key) {
        const auto it = j.find(key);
        return it == j.end() ? Series2(D) : series_from_json(*it, D, key);
    };
    in.g2 = get("g2");
    in.g1 = get("g1");
    in.g0 = get("g0");
    in.h2 = get("h2");
    in.h1 = get("h1");
    in.h0 = get("h0");
    if (const auto it = j.find("order"); it != j.end()) {
        if (!it->is_number_integer()) throw ParseError("order must be an integer");
        in.order = static_cast<int>(it->get<long long>());
    } else {
        in.order = D - 1;
    }
    if (const auto it = j.find("h0_mode"); it != j.end()) {
        const std::string m = it->is_string() ? it->get<std::string>() : "";
        if (m == "given") in.h0_mode = H0Mode::Given;
        else if (m == "trace-free") in.h0_mode = H0Mode::TraceFree;
        else throw ParseError("h0_mode must be given or trace-free");
    }
    return in;
}

std::string serialize(const InitialData& in, int D) {
    std::ostringstream os;
    os << "{\n  \"format\": \"" << kInitFormat << "\",\n  \"truncation\": " << D << ",\n";
    const std::pair<const char*, const Series2*> fields[] = {{"g2", &in.g2}, {"g1", &in.g1}, {"g0", &in.g0},
                                                             {"h2", &in.h2}, {"h1", &in.h1}, {"h0", &in.h0}};
    for (const auto& [name, s] : fields) os << "  \"" << name << "\": " << series_text(s->truncated(D)) << ",\n";
    os << "  \"order\": " << in.order << ",\n  \"h0_mode\": \""
       << (in.h0_mode == H0Mode::TraceFree ? "trace-free" : "given") << "\"\n}\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
    if (!out) throw Error("cannot write " + path);
}

}  // namespace fmankit
