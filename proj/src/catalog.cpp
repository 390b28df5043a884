#include "fmankit/catalog.hpp"

#include <algorithm>

namespace fmankit {

namespace {

using Q = AlgebraType;

void require(bool ok, const std::string& msg) {
    if (!ok) throw InvalidParameters(msg);
}

Series2 t2pow(int k, int D) { return Series2::monomial(1, k, 0, D); }
Series2 cst(const Rat& c, int D) { return Series2::constant(c, D); }
Rat frac(long a, long b) {
    Rat r(a, b);
    r.canonicalize();
    return r;
}

Series2 param(const FamilySpec& s, const std::string& key, const Series2& fallback, int D) {
    const Series2* v = s.find_series(key);
    return v ? v->truncated(D) : fallback;
}

VectorField field(const Rat& c1, const Series2& e2, const Mero& e3, int D) {
    return VectorField::make(1, cst(c1, D), Mero(e2), e3);
}

VectorField weighted_field(const Rat& c1, const Rat& w2, const Rat& w3, int D) {
    return field(c1, Series2::t2(D) * w2, Mero(Series2::t3(D) * w3), D);
}

// Integer points of a small grid where pred holds.
template <class Pred>
std::vector<CausticSample> grid_samples(Pred pred, Q type) {
    std::vector<CausticSample> out;
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
            if (a == 0 && b == 0) continue;
            if (pred(Rat(a), Rat(b))) out.push_back({Rat(a), Rat(b), type});
        }
    return out;
}

// ---- Thm7_1 normal forms ------------------------------------------------

struct Seven {
    char variant;  // 'a' .. 'e'
    int p, q;
    std::vector<Rat> gamma;
};

Series2 rho_of(const Seven& s, int D) {
    Series2 r = Series2::monomial(1, s.p - 2, 1, D);
    for (int i = 0; i <= s.p - 2 && i < static_cast<int>(s.gamma.size()); ++i)
        r.add_to(i, 0, s.gamma[i]);
    return r;
}

// (a + t2 d2)(rho)
Series2 rho_op(const Rat& a, const Series2& rho) { return rho * a + rho.deriv(2).mul_t2_pow(1); }

ExtSeries ext(int k, const Series2& s) { return ExtSeries::from_series(k, s); }

void build_seven(const Seven& s, const Rat& c1, int D, BuildResult& out) {
    const int E = D + 1;  // potentials lose one order under d2
    const Series2 rho = rho_of(s, E);
    std::vector<ExtSeries> pots;
    int k = 1;
    switch (s.variant) {
        case 'a':
            pots = {ExtSeries(1, E), ext(1, t2pow(s.p, E)), ext(1, rho.mul_t2_pow(s.q).truncated(E))};
            break;
        case 'b':
            k = 2;
            pots = {ExtSeries::t2_power(2 * s.p + 1, 2, E) + ext(2, rho.mul_t2_pow(s.p + 1).truncated(E))};
            break;
        case 'c':
            k = 2;
            pots = {rho * ExtSeries::t2_power(2 * s.q + 1, 2, E) + ExtSeries::t2_power(2 * s.p, 2, E)};
            break;
        case 'd':
            k = 3;
            pots = {ExtSeries::t2_power(3 * s.p + 1, 3, E) + rho * ExtSeries::t2_power(3 * s.p + 2, 3, E)};
            break;
        default:
            k = 3;
            pots = {rho * ExtSeries::t2_power(3 * s.p + 4, 3, E) + ExtSeries::t2_power(3 * s.p + 2, 3, E)};
            break;
    }

    GhFrame gh;
    if (k == 1) {
        const Series2 s1 = pots[0].deriv(2).part(0), s2 = pots[1].deriv(2).part(0), s3 = pots[2].deriv(2).part(0);
        gh.g2 = s1 + s2 + s3;
        gh.g1 = -(s1 * s2 + s1 * s3 + s2 * s3);
        gh.g0 = s1 * s2 * s3;
    } else {
        const std::vector<Series2> rhs = charpoly_mult(pots[0].deriv(2)).monic_rhs();
        gh.g2 = rhs[0];
        gh.g1 = rhs[1];
        // The smooth component f = 0 contributes the factor y2.
        gh.g0 = k == 3 ? rhs[2] : Series2(rhs[1].truncation());
    }

    const Series2 r = rho.truncated(D);
    const Series2 t2 = Series2::t2(D);
    const int p = s.p, q = s.q;
    Series2 h2, h1, h0(D);
    Rat w;            // eps2 = t2 / w
    Series2 eps3num;  // eps3 = -(1/w) t2^(2-p) eps3num
    switch (s.variant) {
        case 'a': {
            const Series2 P = rho_op(q, r);
            h2 = (P * (P.mul_t2_pow(q - p) - cst(p, D))).invert();
            h1 = h2 * (t2pow(p - 1, D) * Rat(-p));
            w = p;
            eps3num = rho_op(q - p, r);
            break;
        }
        case 'b': {
            const Series2 P = rho_op(1 + p, r);
            w = frac(2 * p + 1, 2);
            h2 = (cst(w * w, D) - (P * P).mul_t2_pow(1)).invert();
            h1 = h2 * (P.mul_t2_pow(p) * Rat(-2));
            eps3num = rho_op(frac(1, 2), r);
            break;
        }
        case 'c': {
            const Series2 P = rho_op(frac(2 * q + 1, 2), r);
            const Series2 P2 = P * P;
            h2 = (P * (cst(p, D) - P2.mul_t2_pow(1 + 2 * (q - p)) * frac(1, p))).invert();
            h1 = h2 * (t2pow(p - 1, D) * Rat(-p) - P2.mul_t2_pow(2 * q - p) * frac(1, p));
            w = p;
            eps3num = rho_op(frac(2 * (q - p) + 1, 2), r);
            break;
        }
        case 'd': {
            const Series2 P = rho_op(frac(3 * p + 2, 3), r);
            w = frac(3 * p + 1, 3);
            h2 = (cst(w * w, D) - (P * P * P).mul_t2_pow(1) / w).invert();
            h1 = h2 * (-(P * P).mul_t2_pow(p) / w);
            h0 = h2 * (P.mul_t2_pow(2 * p - 1) * (-2 * w));
            eps3num = rho_op(frac(1, 3), r);
            break;
        }
        default: {
            const Series2 P = rho_op(frac(3 * p + 4, 3), r);
            w = frac(3 * p + 2, 3);
            h2 = (cst(w * w, D) - (P * P * P).mul_t2_pow(2) / w).invert();
            h1 = h2 * (-(P * P).mul_t2_pow(p + 1) / w);
            h0 = h2 * (P.mul_t2_pow(2 * p) * (-2 * w));
            eps3num = rho_op(frac(2, 3), r);
            break;
        }
    }
    gh.h2 = h2.truncated(D);
    gh.h1 = h1.truncated(D);
    gh.h0 = h0.truncated(D);
    gh.g2 = gh.g2.truncated(D);
    gh.g1 = gh.g1.truncated(D);
    gh.g0 = gh.g0.truncated(D);

    out.table = gh_to_table(gh);
    out.gh = gh;
    out.potentials = pots;
    out.euler.push_back(field(c1, t2 / w, Mero(eps3num / (-w), p - 2), D));
    out.meta.generic_type = Q::Q4;
    out.meta.origin_type = Q::Q2;
    out.meta.caustic = "t2 = 0";
    // For p = 2 in variants a and c, h2 has a pole at t3 = -gamma0 on the caustic; stay inside it.
    const bool scaled = (s.variant == 'a' || s.variant == 'c') && !s.gamma.empty() && sgn(s.gamma[0]) != 0;
    const Rat scale = scaled ? Rat(abs(s.gamma[0])) : Rat(1);
    out.meta.caustic_samples = {{Rat(0), scale * frac(1, 5), Q::Q2}, {Rat(0), scale * frac(-1, 7), Q::Q2}};
}

Seven seven_from(const FamilySpec& s) {
    Seven v;
    v.p = s.p;
    v.q = s.q;
    v.gamma = s.gamma;
    require(s.p >= 2, "p must be at least 2");
    require(static_cast<int>(s.gamma.size()) <= s.p - 1, "gamma has more than p-1 entries");
    switch (s.family) {
        case Family::Thm7_1a: v.variant = 'a'; break;
        case Family::Thm7_1b: v.variant = 'b'; break;
        case Family::Thm7_1c: v.variant = 'c'; break;
        case Family::Thm7_1d: v.variant = 'd'; break;
        default: v.variant = 'e'; break;
    }
    if (v.variant == 'a' || v.variant == 'c') {
        require(s.q >= s.p, "q must be at least p");
        if (v.gamma.empty()) v.gamma = {Rat(2)};
        require(sgn(v.gamma[0]) != 0, "gamma0 must be nonzero");
        if (v.variant == 'a' && s.p == s.q) require(v.gamma[0] != 1, "gamma0 must differ from 1 when p = q");
    }
    return v;
}

Seven corollary_from(const FamilySpec& s) {
    Seven v;
    switch (s.family) {
        case Family::Cor7_2_ai: {
            const Rat tau = s.tau0.value_or(Rat(2));
            require(sgn(tau) != 0 && tau != 1, "tau0 must avoid 0 and 1");
            v = {'a', 2, 2, {tau}};
            break;
        }
        case Family::Cor7_2_aii: {
            const Rat tau = s.tau0.value_or(Rat(1));
            require(sgn(tau) != 0, "tau0 must be nonzero");
            require(s.q >= 3, "q must be at least 3");
            v = {'a', 2, s.q, {tau}};
            break;
        }
        case Family::Cor7_2_aiii: {
            require(s.p >= 3, "p must be at least 3");
            const Rat g0 = s.gamma.empty() ? Rat(2) : s.gamma[0];
            require(sgn(g0) != 0 && g0 != 1, "gamma0 must avoid 0 and 1");
            for (std::size_t i = 1; i < s.gamma.size(); ++i)
                require(sgn(s.gamma[i]) == 0, "only gamma0 may be nonzero");
            v = {'a', s.p, s.p, {g0}};
            break;
        }
        case Family::Cor7_2_b:
            require(s.p >= 2, "p must be at least 2");
            v = {'b', s.p, s.p, {}};
            break;
        case Family::Cor7_2_c: {
            const Rat tau = s.tau0.value_or(Rat(1));
            require(sgn(tau) != 0, "tau0 must be nonzero");
            require(s.q >= 2, "q must be at least 2");
            v = {'c', 2, s.q, {tau}};
            break;
        }
        case Family::Cor7_2_d:
            require(s.p >= 2, "p must be at least 2");
            v = {'d', s.p, s.p, {}};
            break;
        default:
            require(s.p >= 2, "p must be at least 2");
            v = {'e', s.p, s.p, {}};
            break;
    }
    return v;
}

// ---- Section 5 families -------------------------------------------------

std::vector<VectorField> linear_basis(int D) {
    const Series2 z(D), one = cst(1, D), t2 = Series2::t2(D), t3 = Series2::t3(D);
    auto f = [&](const Series2& e2, const Series2& e3) { return VectorField::make(0, z, Mero(e2), Mero(e3)); };
    return {f(t2, z), f(one, z), f(t3, z), f(z, t3), f(z, one), f(z, t2)};
}

void attach_solved(BuildResult& out, std::vector<VectorField> basis, const Rat& c1) {
    const auto E = solve_euler(out.table, basis);
    if (E) out.euler.push_back(shift_by_unit(*E, c1));
    else out.meta.note = "no Euler field with linear coefficients";
}

void build_5_2(const FamilySpec& s, int D, BuildResult& out) {
    const Series2 b2 = param(s, "b2", Series2(D), D);
    for (const auto& t : b2.terms()) require(t.i >= 1, "b2 must lie in t2*C{t2,t3}");
    AbcFrame f{Series2(D), Series2(D), Series2(D), Series2(D), b2, Series2(D), Series2(D), Series2(D), Series2(D)};
    out.table = abc_to_table(f);
    out.meta = {Q::Q1, Q::Q1, "empty", {}, ""};

    const Series2* e2p = s.find_series("eps2");
    const Series2* e3p = s.find_series("eps3");
    const Series2 e2 = e2p ? e2p->truncated(D) : Series2::t2(D);
    const Series2 e3 = e3p ? e3p->truncated(D) : Series2::t3(D);
    // d2 eps1 = -b2 d2 eps3,  d3 eps1 = -eps2 d2 b2 - d3(eps3 b2) + b2
    const Series2 p2 = -(b2 * e3.deriv(2));
    const Series2 p3 = -(e2 * b2.deriv(2)) - (e3 * b2).deriv(3) + b2;
    try {
        const Series2 eps1 = potential(p2, p3) + cst(s.c1, D);
        out.euler.push_back(VectorField::make(1, eps1.truncated(D), Mero(e2), Mero(e3)));
        return;
    } catch (const PreconditionFailed&) {
        if (e2p || e3p) throw InvalidParameters("eps2, eps3 admit no eps1 for this b2");
    }
    std::vector<VectorField> basis = linear_basis(D);
    for (int n = 1; n < D; ++n)
        for (int j = 0; j <= n; ++j)
            basis.push_back(VectorField::make(0, Series2::monomial(1, n - j, j, D), Mero(Series2(D)), Mero(Series2(D))));
    attach_solved(out, basis, s.c1);
}

void build_5_4a(const FamilySpec& s, int D, BuildResult& out) {
    out.table = MultTable::zero(D);
    out.table.a3 = cst(1, D);
    out.gh = GhFrame{Series2(D), Series2(D), Series2(D), cst(1, D), Series2(D), Series2(D)};
    out.meta = {Q::Q2, Q::Q2, "empty", {}, ""};
    const Series2 e2 = param(s, "eps2", cst(1, D), D);
    const Series2 e30 = param(s, "eps30", Series2(D), D);
    require(!e2.depends_on_t3() && !e30.depends_on_t3(), "eps2 and eps30 must be series in t2");
    const Series2 e3 = e30 + Series2::t3(D) * (e2.deriv(2) * Rat(2) - cst(1, D));
    out.euler.push_back(field(s.c1, e2, Mero(e3.truncated(D)), D));
}

void build_5_4b(const FamilySpec& s, int D, BuildResult& out) {
    const Series2 f = param(s, "f", Series2::t2(D), D);
    require(sgn(f.constant_term()) == 0 && !f.is_zero(), "f must lie in m - {0}");
    out.table = MultTable::zero(D);
    out.table.a3 = f;
    out.meta = {Q::Q2, Q::Q1, "f = 0", {}, ""};
    out.meta.caustic_samples = grid_samples([&](const Rat& a, const Rat& b) { return sgn(f.eval(a, b)) == 0; }, Q::Q1);
    attach_solved(out, linear_basis(D), s.c1);
}

void build_5_4c(const FamilySpec& s, int D, BuildResult& out) {
    const Series2 f1 = param(s, "f1", Series2::t2(D), D);
    const Series2 f2 = param(s, "f2", Series2::t3(D), D);
    const Series2 h = param(s, "h", cst(1, D), D);
    require(sgn(f1.constant_term()) == 0 && sgn(f2.constant_term()) == 0, "f1 and f2 must lie in m");
    require(!h.is_zero(), "h must be nonzero");
    require(coprime_at_origin(f1, f2), "gcd(f1, f2) must be 1");
    MultTable& t = out.table;
    t = MultTable::zero(D);
    t.at2 = h * f1 * f1 * f2;
    t.a3 = h * f1 * f1 * f1;
    t.b2 = -(h * f1 * f2 * f2);
    t.b3 = -(h * f1 * f1 * f2);
    t.c2 = h * f2 * f2 * f2;
    t.ct3 = h * f1 * f2 * f2;
    out.meta = {Q::Q2, Q::Q1, "h = 0 or f1 = f2 = 0", {}, ""};
    out.meta.caustic_samples = grid_samples(
        [&](const Rat& a, const Rat& b) {
            return sgn(h.eval(a, b)) == 0 || (sgn(f1.eval(a, b)) == 0 && sgn(f2.eval(a, b)) == 0);
        },
        Q::Q1);
    attach_solved(out, linear_basis(D), s.c1);
}

void build_5_6(const FamilySpec& s, int D, BuildResult& out) {
    const int p = s.p;
    require(p >= 2, "p must be at least 2");
    const Series2 phi = cst(p, D) + Series2::monomial(2 * p - 2, p - 2, 1, D);
    MultTable& t = out.table;
    t = MultTable::zero(D);
    t.a3 = phi * phi;
    t.b3 = phi.mul_t2_pow(p - 1).truncated(D);
    t.ct3 = t2pow(2 * p - 2, D);
    const Series2 inv = phi.invert();
    out.gh = GhFrame{t.b3, Series2(D), Series2(D), inv * inv, Series2(D), Series2(D)};
    out.potentials = {ext(1, t2pow(p, D + 1) + Series2::monomial(1, 2 * p - 2, 1, D + 1))};
    out.meta = {Q::Q3, Q::Q2, "t2 = 0", {{Rat(0), Rat(1), Q::Q2}, {Rat(0), frac(1, 2), Q::Q2}}, ""};

    const Series2 e30 = param(s, "eps30", Series2(D), D);
    require(!e30.depends_on_t3(), "eps30 must be a series in t2");
    const Series2 u = e30.mul_t2_pow(p - 2).truncated(D);
    const Series2 e2 = (Series2::t2(D) * (cst(1, D) - u)) / Rat(p);
    const Series2 e3 = e30 + (Series2::t3(D) * (cst(2 - p, D) + u * Rat(2 * p - 2))) / Rat(p);
    out.euler.push_back(field(s.c1, e2, Mero(e3), D));
}

void build_5_8(const FamilySpec& s, int D, BuildResult& out) {
    const int p = s.p;
    require(p >= 2, "p must be at least 2");
    out.table = MultTable::zero(D);
    out.table.at2 = t2pow(p - 1, D) * Rat(p);
    out.meta = {Q::Q3, Q::Q1, "t2 = 0", {{Rat(0), Rat(5), Q::Q1}, {Rat(0), Rat(-1), Q::Q1}}, ""};
    const Series2 e3 = param(s, "eps3", Series2(D), D);
    require(!e3.depends_on_t2(), "eps3 must be a series in t3");
    out.euler.push_back(field(s.c1, Series2::t2(D) / Rat(p), Mero(e3), D));
}

// ---- Section 6 ----------------------------------------------------------

void build_6_2(Family fam, const Rat& c1, int D, BuildResult& out) {
    const Series2 t2 = Series2::t2(D), t3 = Series2::t3(D), z(D);
    GhFrame gh{z, z, z, cst(1, D), z, z};
    out.meta.generic_type = Q::Q4;
    out.meta.origin_type = Q::Q2;
    if (fam == Family::Ex6_2_A3) {
        gh.g1 = t3 * Rat(-2);
        gh.g0 = -t2;
        out.meta.caustic = "27 t2^2 + 32 t3^3 = 0";
        out.meta.caustic_samples = {{Rat(16), Rat(-6), Q::Q3}, {Rat(-16), Rat(-6), Q::Q3}};
        out.euler.push_back(weighted_field(c1, frac(3, 4), frac(1, 2), D));
    } else if (fam == Family::Ex6_2_B3) {
        gh.g2 = t3 * Rat(-2);
        gh.g1 = -t2;
        out.meta.caustic = "t2 (t2 - t3^2) = 0";
        out.meta.caustic_samples = {{Rat(0), Rat(1), Q::Q3}, {Rat(1), Rat(1), Q::Q3}, {Rat(4), Rat(-2), Q::Q3}};
        out.euler.push_back(weighted_field(c1, frac(2, 3), frac(1, 3), D));
    } else {
        // xi^3 = (2 xi t3 + t2)^2
        gh.g2 = t3 * t3 * Rat(4);
        gh.g1 = t2 * t3 * Rat(4);
        gh.g0 = t2 * t2;
        out.meta.caustic = "t2^3 (27 t2 + 32 t3^3) = 0";
        out.meta.caustic_samples = {{Rat(0), Rat(1), Q::Q3}, {Rat(32), Rat(-3), Q::Q3}};
        out.euler.push_back(weighted_field(c1, frac(3, 5), frac(1, 5), D));
    }
    out.gh = gh;
    out.table = gh_to_table(gh);
}

void build_6_4(const FamilySpec& s, int D, BuildResult& out) {
    require(s.p2 >= 2 && s.p3 >= 2, "p2 and p3 must be at least 2");
    out.table = MultTable::zero(D);
    out.table.at2 = t2pow(s.p2 - 1, D) * Rat(s.p2);
    out.table.ct3 = Series2::monomial(s.p3, 0, s.p3 - 1, D);
    out.meta = {Q::Q4, Q::Q1, "t2 t3 = 0",
                {{Rat(0), Rat(1), Q::Q3}, {Rat(1), Rat(0), Q::Q3}, {Rat(0), Rat(-2), Q::Q3}}, ""};
    out.euler.push_back(weighted_field(s.c1, frac(1, s.p2), frac(1, s.p3), D));
}

void build_6_5(const Rat& c1, int D, BuildResult& out) {
    const Series2 t2 = Series2::t2(D), t3 = Series2::t3(D);
    AbcFrame f;
    f.a2 = t3 * frac(-3, 2);
    f.a3 = t2 * frac(-3, 2);
    f.b2 = t2 * frac(-1, 2);
    f.b3 = t3 * frac(1, 2);
    f.c2 = t3 * frac(-1, 2);
    f.c3 = t2 * frac(3, 2);
    f.a1 = t2 * t2 * frac(9, 4);
    f.b1 = t2 * t3 * frac(3, 4);
    f.c1 = t3 * t3 * frac(-3, 4);
    out.table = abc_to_table(f);
    out.meta = {Q::Q4, Q::Q1, "t3^4 + 6 t2^2 t3^2 - 3 t2^4 = 0", {}, ""};
    out.euler.push_back(weighted_field(c1, frac(1, 2), frac(1, 2), D));
}

ProductData product_data(const FamilySpec& s, int D) {
    ProductData d;
    d.m = s.m;
    d.c1 = s.c1;
    d.c2 = s.c2;
    d.c3 = s.c3;
    if (const Series2* g = s.find_series("eps3")) d.g = g->truncated(D);
    return d;
}

}  // namespace

BuildResult build(const FamilySpec& spec, int D) {
    if (D < 2) throw InvalidParameters("truncation must be at least 2");
    BuildResult out;
    switch (spec.family) {
        case Family::Thm5_2: build_5_2(spec, D, out); break;
        case Family::Thm5_4a: build_5_4a(spec, D, out); break;
        case Family::Thm5_4b: build_5_4b(spec, D, out); break;
        case Family::Thm5_4c: build_5_4c(spec, D, out); break;
        case Family::Thm5_6: build_5_6(spec, D, out); break;
        case Family::Lem5_8: build_5_8(spec, D, out); break;
        case Family::Ex6_2_A3:
        case Family::Ex6_2_B3:
        case Family::Ex6_2_H3: build_6_2(spec.family, spec.c1, D, out); break;
        case Family::Lem6_4: build_6_4(spec, D, out); break;
        case Family::Lem6_5: build_6_5(spec.c1, D, out); break;
        case Family::Thm7_1a:
        case Family::Thm7_1b:
        case Family::Thm7_1c:
        case Family::Thm7_1d:
        case Family::Thm7_1e: build_seven(seven_from(spec), spec.c1, D, out); break;
        case Family::Cor7_2_ai:
        case Family::Cor7_2_aii:
        case Family::Cor7_2_aiii:
        case Family::Cor7_2_b:
        case Family::Cor7_2_c:
        case Family::Cor7_2_d:
        case Family::Cor7_2_e: build_seven(corollary_from(spec), spec.c1, D, out); break;
        case Family::Prod_A1A1A1:
        case Family::Prod_A1I2m:
        case Family::Prod_A1N2: {
            const Factor2d f = spec.family == Family::Prod_A1A1A1 ? Factor2d::A1A1
                               : spec.family == Family::Prod_A1I2m ? Factor2d::I2
                                                                     : Factor2d::N2;
            ProductResult pr = product(f, product_data(spec, D), D);
            out.table = pr.table;
            out.euler.push_back(pr.euler);
            if (f == Factor2d::A1A1) out.meta = {Q::Q4, Q::Q4, "empty", {}, ""};
            else if (f == Factor2d::I2)
                out.meta = {Q::Q4, Q::Q3, "t3 = 0", {{Rat(1), Rat(0), Q::Q3}, {Rat(-2), Rat(0), Q::Q3}}, ""};
            else out.meta = {Q::Q3, Q::Q3, "empty", {}, ""};
            break;
        }
    }
    return out;
}

ProductResult product(Factor2d factor, const ProductData& d, int D) {
    // t1 = u1, t2 = v1 - u1, t3 = v2: d1 = e, d2 = unit of the second factor.
    ProductResult r;
    MultTable& t = r.table;
    t = MultTable::zero(D);
    const Series2 t2 = Series2::t2(D), t3 = Series2::t3(D);
    const Series2 base1 = cst(d.c1, D);
    const Series2 shift2 = t2 + cst(d.c2 - d.c1, D);
    switch (factor) {
        case Factor2d::A1A1:
            t.at2 = cst(1, D);
            t.ct3 = cst(1, D);
            r.euler = VectorField::make(1, base1, Mero(shift2), Mero(t3 + cst(d.c3 - d.c1, D)));
            break;
        case Factor2d::I2:
            if (d.m < 3) throw InvalidParameters("m must be at least 3");
            t.at2 = cst(1, D);
            t.b3 = cst(1, D);
            t.c2 = Series2::monomial(1, 0, d.m - 2, D);
            r.euler = VectorField::make(1, base1, Mero(shift2), Mero(t3 * frac(2, d.m)));
            break;
        case Factor2d::N2: {
            const Series2 g = d.g ? d.g->truncated(D) : cst(1, D);
            if (g.depends_on_t2()) throw InvalidParameters("g must be a series in t3");
            t.at2 = cst(1, D);
            t.b3 = cst(1, D);
            r.euler = VectorField::make(1, base1, Mero(shift2), Mero(g));
            break;
        }
    }
    return r;
}

std::optional<VectorField> solve_euler(const MultTable& t, const std::vector<VectorField>& basis) {
    const int D = t.truncation();
    const VectorField E0 = VectorField::make(1, Series2(D), Mero(Series2(D)), Mero(Series2(D)));
    const LieResidual r0 = lie_residual(t, E0);
    std::vector<LieResidual> rk;
    int clear = r0.cleared_by;
    for (const auto& b : basis) {
        rk.push_back(symmetry_residual(t, b));
        clear = std::max(clear, rk.back().cleared_by);
    }
    const int n = static_cast<int>(basis.size());
    std::vector<std::vector<Rat>> rows;
    for (std::size_t e = 0; e < r0.entries.size(); ++e)
        for (int c = 0; c < 3; ++c) {
            auto lift = [&](const LieResidual& r) { return r.entries[e].value[c].mul_t2_pow(clear - r.cleared_by); };
            std::vector<Series2> cols;
            int dmin = lift(r0).truncation();
            for (const auto& r : rk) {
                cols.push_back(lift(r));
                dmin = std::min(dmin, cols.back().truncation());
            }
            const Series2 rhs = lift(r0);
            for (int deg = 0; deg < dmin; ++deg)
                for (int j = 0; j <= deg; ++j) {
                    std::vector<Rat> row(n + 1);
                    bool any = false;
                    for (int k = 0; k < n; ++k) {
                        row[k] = cols[k].coeff(deg - j, j);
                        any = any || sgn(row[k]) != 0;
                    }
                    row[n] = -rhs.coeff(deg - j, j);
                    if (!any && sgn(row[n]) == 0) continue;
                    rows.push_back(std::move(row));
                }
        }
    // Reduced row echelon form.
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (int c = 0; c < n && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && sgn(rows[piv][c]) == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        const Rat inv = 1 / rows[r][c];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || sgn(rows[i][c]) == 0) continue;
            const Rat f = rows[i][c];
            for (int k = c; k <= n; ++k) rows[i][k] -= f * rows[r][k];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i)
        if (sgn(rows[i][n]) != 0) return std::nullopt;
    std::vector<Rat> x(n, Rat(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = rows[i][n];

    Series2 e1(D);
    Mero e2{Series2(D)}, e3{Series2(D)};
    for (int k = 0; k < n; ++k) {
        if (sgn(x[k]) == 0) continue;
        e1 += basis[k].eps1_0 * x[k];
        e2 = e2 + Mero(basis[k].eps2.num * x[k], basis[k].eps2.pole);
        e3 = e3 + Mero(basis[k].eps3.num * x[k], basis[k].eps3.pole);
    }
    VectorField E = VectorField::make(1, e1, e2, e3);
    if (!lie_residual(t, E).is_zero()) return std::nullopt;
    return E;
}

int suggested_truncation(const FamilySpec& spec) {
    for (int D = 8; D <= 60; D += 2) {
        FamilySpec s = spec;
        const BuildResult b = build(s, D);
        if (generic_type(b.table).type == b.meta.generic_type) return D;
    }
    return 60;
}

// ---- closed-form Euler constraints --------------------------------------

namespace {

bool const_series(const Series2& s) { return !s.depends_on_t2() && !s.depends_on_t3(); }

bool same(const Mero& a, const Mero& b) { return (a - b).canonical().is_zero(); }

}  // namespace

bool euler_constraint_check(const FamilySpec& spec, const VectorField& E0, int D) {
    const VectorField E = E0.canonical();
    if (E.c != 1) return false;
    const bool holo = E.max_pole() == 0;
    const Series2 t2 = Series2::t2(D), t3 = Series2::t3(D);
    const Series2 e1 = E.eps1_0.truncated(std::min(D, E.eps1_0.truncation()));
    const Series2 e2 = E.eps2.num, e3 = E.eps3.num;
    auto weights = [&](const Rat& w2, const Rat& w3) {
        return holo && const_series(e1) && e2 == t2 * w2 && e3 == t3 * w3;
    };
    switch (spec.family) {
        case Family::Thm5_2: {
            if (!holo) return false;
            const Series2 b2 = param(spec, "b2", Series2(D), D);
            return e1.deriv(2) == -(b2 * e3.deriv(2)) &&
                   e1.deriv(3) == -(e2 * b2.deriv(2)) - (e3 * b2).deriv(3) + b2;
        }
        case Family::Thm5_4a:
            return holo && const_series(e1) && !e2.depends_on_t3() &&
                   !(e3 - t3 * (e2.deriv(2) * Rat(2) - cst(1, D))).depends_on_t3();
        case Family::Thm5_4b: {
            if (!holo || !const_series(e1) || e2.depends_on_t3()) return false;
            const Series2 f = param(spec, "f", Series2::t2(D), D);
            const Series2 c = e2 * f.deriv(2) + e3 * f.deriv(3) +
                              f * (e2.deriv(2) * Rat(2) - e3.deriv(3) - cst(1, D));
            return c.is_zero();
        }
        case Family::Thm5_4c: {
            if (!holo || !const_series(e1)) return false;
            const Series2 f1 = param(spec, "f1", t2, D), f2 = param(spec, "f2", t3, D);
            const Series2 h = param(spec, "h", cst(1, D), D);
            auto along = [&](const Series2& g) { return e2 * g.deriv(2) + e3 * g.deriv(3); };
            const Series2 c13 = h * along(f1) * Rat(3) + f1 * along(h) +
                                h * (f1 * e2.deriv(2) * Rat(2) - f2 * e3.deriv(2) * Rat(3) - f1 * e3.deriv(3) - f1);
            const Series2 c14 = h * along(f2) * Rat(3) + f2 * along(h) +
                                h * (f2 * e3.deriv(3) * Rat(2) - f1 * e2.deriv(3) * Rat(3) - f2 * e2.deriv(2) - f2);
            return c13.is_zero() && c14.is_zero();
        }
        case Family::Thm5_6: {
            if (!holo || !const_series(e1)) return false;
            const int p = spec.p;
            const Series2 e30 = e3.restrict_t3_zero();
            const Series2 u = e30.mul_t2_pow(p - 2).truncated(D);
            return e2 == (t2 * (cst(1, D) - u)) / Rat(p) &&
                   e3 == e30 + (t3 * (cst(2 - p, D) + u * Rat(2 * p - 2))) / Rat(p);
        }
        case Family::Lem5_8:
            return holo && const_series(e1) && e2 == t2 / Rat(spec.p) && !e3.depends_on_t2();
        case Family::Ex6_2_A3: return weights(frac(3, 4), frac(1, 2));
        case Family::Ex6_2_B3: return weights(frac(2, 3), frac(1, 3));
        case Family::Ex6_2_H3: return weights(frac(3, 5), frac(1, 5));
        case Family::Lem6_4: return weights(frac(1, spec.p2), frac(1, spec.p3));
        case Family::Lem6_5: return weights(frac(1, 2), frac(1, 2));
        case Family::Prod_A1A1A1:
            return holo && const_series(e1) && const_series(e2 - t2) && const_series(e3 - t3);
        case Family::Prod_A1I2m:
            return holo && const_series(e1) && const_series(e2 - t2) && e3 == t3 * frac(2, spec.m);
        case Family::Prod_A1N2:
            return holo && const_series(e1) && const_series(e2 - t2) && !e3.depends_on_t2();
        default: {
            // Thm7_1 and Cor7_2 families: the field is unique up to c1.
            if (!const_series(e1)) return false;
            const VectorField ref = build(spec, D).euler.at(0);
            return same(E.eps2, ref.eps2) && same(E.eps3, ref.eps3);
        }
    }
}

}  // namespace fmankit
