// fmankit: batch verification, classification and generation of 3-dimensional
// F-manifold germs. Exit codes: 0 verdict true, 1 verdict false, 2 input error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fmankit/catalog.hpp"
#include "fmankit/io.hpp"
#include "fmankit/pde.hpp"
#include "fmankit/spectrum.hpp"

using namespace fmankit;

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kInputError = 2;

struct Globals {
    int truncation = 8;
    bool truncation_given = false;
};

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void line(const std::string& key, const std::string& value) { std::cout << key << ": " << value << "\n"; }

// A document's own truncation, cut down by an explicit --truncation.
TableDocument load_table(const std::string& path, const Globals& g, int& D) {
    TableDocument doc = parse_table_document(read_file(path));
    D = doc.truncation;
    if (g.truncation_given && g.truncation < D) {
        D = g.truncation;
        for (auto& [name, s] : doc.coefficients) s = s.truncated(D);
        doc.truncation = D;
    }
    return doc;
}

std::string point_text(const Rat& a, const Rat& b) { return "(" + format_rat(a) + ", " + format_rat(b) + ")"; }

SpectrumIdeal ideal_of(const TableDocument& doc, const MultTable& t) {
    if (const auto gh = doc.gh()) return spectrum_ideal(*gh);
    return spectrum_ideal(t);
}

int cmd_check(const std::string& path, const Globals& g) {
    int D = 0;
    const TableDocument doc = load_table(path, g, D);
    const MultTable t = doc.table();
    line("truncation", std::to_string(D));
    line("frame", frame_name(doc.frame));

    const auto assoc = associativity_residuals(t);
    const bool associative = is_associative(t);
    line("associative", yes_no(associative));
    if (!associative) {
        for (int k = 0; k < 3; ++k)
            if (!assoc[k].is_zero()) line("associativity residual " + std::to_string(k + 1), assoc[k].to_string());
        line("F-manifold", "no");
        return kFalse;
    }

    const FVerdict closed = is_f_manifold_closed_form(t);
    const BracketVerdict brackets = f_condition_bracket(ideal_of(doc, t));
    line("F-manifold (closed form)", yes_no(closed.f_manifold));
    line("F-manifold (brackets)", yes_no(brackets.closed));
    line("methods agree", yes_no(closed.f_manifold == brackets.closed));
    const bool f = closed.f_manifold && brackets.closed;
    line("F-manifold", yes_no(f));
    if (f) {
        line("case", closed.trivial_case ? "trivial" : closed.invariant_case ? "invariant" : "none");
        return kTrue;
    }
    static const char* names[] = {"A2", "A2dual", "A3"};
    for (int k = 0; k < 3; ++k)
        if (!closed.residuals[k].is_zero()) line("residual " + std::string(names[k]), closed.residuals[k].to_string());
    for (const auto& r : brackets.residuals)
        if (!r.normal_form.is_zero())
            line("bracket {" + r.left + ", " + r.right + "}", r.normal_form.to_string());
    return kFalse;
}

int cmd_classify(const std::string& path, const std::vector<std::string>& at, int caustic_degree,
                 const Globals& g) {
    int D = 0;
    const TableDocument doc = load_table(path, g, D);
    const MultTable t = doc.table();
    line("truncation", std::to_string(D));
    if (!is_associative(t)) {
        line("associative", "no");
        return kFalse;
    }
    const GenericType gt = generic_type(t);
    line("generic type", to_string(gt.type));
    if (!gt.warning.empty()) line("warning", gt.warning);
    std::vector<std::pair<Rat, Rat>> points;
    for (std::size_t k = 0; k + 1 < at.size(); k += 2) points.push_back({parse_rat(at[k]), parse_rat(at[k + 1])});
    if (points.empty()) points.push_back({Rat(0), Rat(0)});
    for (const auto& [a, b] : points) line("type at " + point_text(a, b), to_string(classify_at(t, a, b)));
    const int cut = std::min(D, caustic_degree + 1);
    const RInvariants r = r_invariants(t);
    line("disc", r.disc.truncated(cut).to_string());
    line("R1", r.R1.truncated(cut).to_string());
    line("R2", r.R2.truncated(cut).to_string());
    line("R3", r.R3.truncated(cut).to_string());
    return kTrue;
}

std::string stem_of(const std::string& path) {
    const std::filesystem::path p(path);
    return p.extension() == ".json" ? (p.parent_path() / p.stem()).string() : path;
}

int cmd_generate(const std::string& name, const std::vector<std::string>& params, const std::string& out,
                 const Globals& g) {
    FamilySpec spec;
    spec.family = family_from_name(name);
    for (const auto& kv : params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ParseError("parameter '" + kv + "' is not key=value");
        spec.set_param(kv.substr(0, eq), kv.substr(eq + 1));
    }
    const int D = g.truncation;
    const BuildResult b = build(spec, D);
    line("family", family_name(spec.family));
    line("truncation", std::to_string(D));

    // Self-check before anything is written.
    bool ok = is_associative(b.table) && is_f_manifold_closed_form(b.table).f_manifold;
    for (const auto& E : b.euler) ok = ok && lie_residual(b.table, E).is_zero();
    line("self-check", ok ? "passed" : "failed");
    if (!ok) return kFalse;

    const TableDocument doc = b.gh ? TableDocument::from_gh(*b.gh) : TableDocument::from_table(b.table);
    write_file(out, serialize(doc));
    line("table", out);
    const std::string stem = stem_of(out);
    for (std::size_t i = 0; i < b.euler.size(); ++i) {
        const std::string fp = stem + ".euler" + std::to_string(i) + ".json";
        write_file(fp, serialize(b.euler[i]));
        line("euler field", fp);
    }
    line("generic type (claimed)", to_string(b.meta.generic_type));
    const AlgebraType seen = generic_type(b.table).type;
    line("generic type (computed)", to_string(seen));
    if (seen != b.meta.generic_type) line("suggested truncation", std::to_string(suggested_truncation(spec)));
    line("type at origin", to_string(b.meta.origin_type));
    line("caustic", b.meta.caustic);
    for (const auto& s : b.meta.caustic_samples) line("caustic sample " + point_text(s.t2, s.t3), to_string(s.type));
    if (!b.meta.note.empty()) line("note", b.meta.note);
    return kTrue;
}

int cmd_euler_check(const std::string& table_path, const std::string& field_path, bool regular,
                    const Globals& g) {
    int D = 0;
    const TableDocument doc = load_table(table_path, g, D);
    const MultTable t = doc.table();
    const VectorField E = parse_field_document(read_file(field_path));
    line("truncation", std::to_string(D));
    const LieResidual r = lie_residual(t, E);
    line("cleared by", "t2^" + std::to_string(r.cleared_by));
    line("Euler", yes_no(r.is_zero()));
    if (!r.is_zero()) line("residual", r.first_nonzero());
    bool ok = r.is_zero();
    if (regular) {
        bool reg = false;
        try {
            reg = regular_at(t, E, Rat(0), Rat(0));
        } catch (const PoleAtPoint&) {
            reg = false;
        }
        line("regular at 0", yes_no(reg));
        ok = ok && reg;
    }
    return ok ? kTrue : kFalse;
}

int cmd_pde_solve(const std::string& init_path, std::optional<int> order, const std::string& out,
                  const Globals& g) {
    InitialData init = parse_pde_init(read_file(init_path));
    if (g.truncation_given) {
        for (Series2* s : {&init.g2, &init.g1, &init.g0, &init.h2, &init.h1, &init.h0})
            if (g.truncation < s->truncation()) *s = s->truncated(g.truncation);
    }
    if (order) init.order = *order;
    const PdeSolution sol = solve(init);
    line("truncation", std::to_string(init.g2.truncation()));
    line("order", std::to_string(sol.order));
    line("precision", std::to_string(sol.precision));
    const GhBracket br = gh_bracket_residuals(sol.gh);
    const bool f = br.f_manifold();
    line("F-manifold", yes_no(f));
    write_file(out, serialize(TableDocument::from_gh(sol.gh)));
    line("table", out);
    return f ? kTrue : kFalse;
}

// b2 is the only nonzero ABC coefficient.
bool b2_only(const MultTable& t) {
    const AbcFrame f = table_to_abc(t);
    for (const Series2* s : {&f.a1, &f.a2, &f.a3, &f.b1, &f.b3, &f.c1, &f.c2, &f.c3})
        if (!s->is_zero()) return false;
    return !f.b2.is_zero();
}

int cmd_spectrum(const std::string& path, const Globals& g) {
    int D = 0;
    const TableDocument doc = load_table(path, g, D);
    const MultTable t = doc.table();
    const SpectrumIdeal ideal = ideal_of(doc, t);
    line("truncation", std::to_string(D));
    line("frame", ideal.frame == IdealFrame::Y ? "Y" : "Z");
    for (std::size_t k = 0; k < ideal.generators.size(); ++k)
        line("generator " + ideal.names[k], ideal.generators[k].to_string());
    const BracketVerdict v = f_condition_bracket(ideal);
    for (const auto& r : v.residuals)
        line("bracket {" + r.left + ", " + r.right + "} reduced", r.normal_form.to_string());
    line("brackets closed", yes_no(v.closed));
    if (doc.frame != Frame::Gh && b2_only(t)) {
        const Series2 b2 = table_to_abc(t).b2;
        const CotangentPoly y2 = CotangentPoly::y(2, D);
        const CotangentPoly y3b = CotangentPoly::y(3, D) - CotangentPoly::constant(b2);
        const CotangentPoly br = poisson(y2, y3b);
        line("radical", "(y1 - 1, y2, y3 - b2)");
        line("radical bracket {y2, y3 - b2}", br.to_string());
        line("radical bracket-closed", yes_no(br.is_zero()));
    }
    return v.closed ? kTrue : kFalse;
}

int cmd_families() {
    for (Family f : all_families()) std::cout << family_name(f) << "\n";
    return kTrue;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fmankit: exact verification and generation of 3-dimensional F-manifold germs"};
    app.require_subcommand(1);
    Globals g;
    auto* topt = app.add_option("--truncation", g.truncation, "total-degree truncation D")
                     ->envname("FMANKIT_TRUNCATION")
                     ->check(CLI::Range(2, 512));

    std::string path, field_path, out, family, init_path;
    std::vector<std::string> params, at;
    int caustic_degree = 4;
    bool regular = false;
    std::optional<int> order;

    auto* check = app.add_subcommand("check", "associativity and F-manifold verdicts");
    check->add_option("table", path, "table document")->required();

    auto* classify = app.add_subcommand("classify", "generic and pointwise algebra types, caustic data");
    classify->add_option("table", path, "table document")->required();
    classify->add_option("--at", at, "point t2 t3 (repeatable)")->expected(2)->take_all();
    classify->add_option("--caustic-degree", caustic_degree, "print invariants up to this total degree");

    auto* generate = app.add_subcommand("generate", "build a catalog family");
    generate->add_option("family", family, "family name")->required();
    generate->add_option("--param", params, "key=value");
    generate->add_option("-o,--output", out, "table document to write")->required();

    auto* euler = app.add_subcommand("euler-check", "Euler field verdict for a table and a field");
    euler->add_option("table", path, "table document")->required();
    euler->add_option("field", field_path, "field document")->required();
    euler->add_flag("--regular-at-origin", regular, "also test regularity at 0");

    auto* pde = app.add_subcommand("pde-solve", "power-series solution from data at t3 = 0");
    pde->add_option("--init", init_path, "initial data document")->required();
    pde->add_option("--order", order, "t3-order N");
    pde->add_option("-o,--output", out, "gh-frame table document to write")->required();

    auto* spectrum = app.add_subcommand("spectrum", "spectrum generators and bracket normal forms");
    spectrum->add_option("table", path, "table document")->required();

    auto* families = app.add_subcommand("families", "list family names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kTrue : kInputError;
    }
    g.truncation_given = topt->count() > 0;

    // "--at a b --at c d" arrives flattened.
    if (at.size() % 2 != 0) {
        std::cerr << "error: --at takes two values\n";
        return kInputError;
    }

    try {
        if (*check) return cmd_check(path, g);
        if (*classify) return cmd_classify(path, at, caustic_degree, g);
        if (*generate) return cmd_generate(family, params, out, g);
        if (*euler) return cmd_euler_check(path, field_path, regular, g);
        if (*pde) return cmd_pde_solve(init_path, order, out, g);
        if (*spectrum) return cmd_spectrum(path, g);
        if (*families) return cmd_families();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
