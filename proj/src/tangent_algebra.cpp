#include "fmankit/tangent_algebra.hpp"

#include <algorithm>

namespace fmankit {

namespace {

Series2 d(const Series2& s, int var) { return s.deriv(var); }

const Rat kThird(1, 3);

}  // namespace

Vec3 basis_vector(int k, int truncation) {
    Vec3 v{Series2(truncation), Series2(truncation), Series2(truncation)};
    v[k - 1] = Series2::constant(1, truncation);
    return v;
}

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator*(const Series2& s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }
bool is_zero(const Vec3& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

std::string to_string(AlgebraType t) {
    switch (t) {
        case AlgebraType::Q1: return "Q1";
        case AlgebraType::Q2: return "Q2";
        case AlgebraType::Q3: return "Q3";
        case AlgebraType::Q4: return "Q4";
    }
    return "?";
}

MultTable MultTable::zero(int D) {
    const Series2 z(D);
    return {z, z, z, z, z, z, z, z, z};
}

int MultTable::truncation() const {
    return std::min({at1.truncation(), at2.truncation(), a3.truncation(), bt1.truncation(),
                     b2.truncation(), b3.truncation(), ct1.truncation(), c2.truncation(),
                     ct3.truncation()});
}

Vec3 MultTable::product(int i, int j) const {
    if (i > j) std::swap(i, j);
    const int D = truncation();
    if (i == 1) return basis_vector(j, D);
    if (j == 2) return {at1, at2, a3};
    if (i == 2) return {bt1, b2, b3};
    return {ct1, c2, ct3};
}

AbcFrame table_to_abc(const MultTable& t) {
    AbcFrame f;
    f.a3 = t.a3;
    f.b2 = t.b2;
    f.b3 = t.b3;
    f.c2 = t.c2;
    f.a2 = t.at2 - Rat(2) * t.b3;
    f.c3 = t.ct3 - Rat(2) * t.b2;
    f.a1 = t.at1 + t.b3 * t.b3 + f.a2 * t.b3 + t.a3 * t.b2;
    f.b1 = t.bt1 + t.b2 * t.b3;
    f.c1 = t.ct1 + t.b2 * t.b2 + t.c2 * t.b3 + f.c3 * t.b2;
    return f;
}

MultTable abc_to_table(const AbcFrame& f) {
    MultTable t;
    t.a3 = f.a3;
    t.b2 = f.b2;
    t.b3 = f.b3;
    t.c2 = f.c2;
    t.at2 = f.a2 + Rat(2) * f.b3;
    t.ct3 = f.c3 + Rat(2) * f.b2;
    t.at1 = f.a1 - f.b3 * f.b3 - f.a2 * f.b3 - f.a3 * f.b2;
    t.bt1 = f.b1 - f.b2 * f.b3;
    t.ct1 = f.c1 - f.b2 * f.b2 - f.c2 * f.b3 - f.c3 * f.b2;
    return t;
}

namespace {

// Elements c0 + c1 y + c2 y^2 of Series2[y]/(y^3 - g2 y^2 - g1 y - g0).
using Cubic = std::array<Series2, 3>;

Cubic times_y(const Cubic& p, const GhFrame& gh) {
    return {p[2] * gh.g0, p[0] + p[2] * gh.g1, p[1] + p[2] * gh.g2};
}

Cubic cubic_mul(const Cubic& p, const Cubic& q, const GhFrame& gh) {
    Cubic acc{q[0] * p[0], q[0] * p[1], q[0] * p[2]};
    Cubic yp = p;
    for (int k = 1; k < 3; ++k) {
        yp = times_y(yp, gh);
        for (int r = 0; r < 3; ++r) acc[r] += q[k] * yp[r];
    }
    return acc;
}

}  // namespace

MultTable gh_to_table(const GhFrame& gh) {
    if (sgn(gh.h2.constant_term()) == 0) throw FrameDegenerate("h2 is not a unit");
    const Series2 hinv = gh.h2.invert();
    const int D = std::min({gh.g2.truncation(), gh.g1.truncation(), gh.g0.truncation(),
                            gh.h2.truncation(), gh.h1.truncation(), gh.h0.truncation()});
    const Series2 zero(D), one = Series2::constant(1, D);
    // y^2 = hinv (d3 - h1 d2 - h0 d1)
    auto to_frame = [&](const Cubic& p) -> Vec3 {
        const Series2 s = p[2] * hinv;
        return {p[0] - s * gh.h0, p[1] - s * gh.h1, s};
    };
    const Cubic y{zero, one, zero};
    const Cubic H{gh.h0, gh.h1, gh.h2};
    const Vec3 p22 = to_frame(cubic_mul(y, y, gh));
    const Vec3 p23 = to_frame(cubic_mul(y, H, gh));
    const Vec3 p33 = to_frame(cubic_mul(H, H, gh));
    return {p22[0], p22[1], p22[2], p23[0], p23[1], p23[2], p33[0], p33[1], p33[2]};
}

GhFrame table_to_gh(const MultTable& t) {
    if (sgn(t.a3.constant_term()) == 0)
        throw FrameDegenerate("(e, d2, d2^2) is not a frame: a3 is not a unit");
    GhFrame gh;
    const Series2 inv = t.a3.invert();
    gh.h2 = inv;
    gh.h1 = -(t.at2 * inv);
    gh.h0 = -(t.at1 * inv);
    // d2^3 = (at2 at1 + a3 bt1) d1 + (at1 + at2^2 + a3 b2) d2 + a3 (at2 + b3) d3
    const Series2 C = t.a3 * (t.at2 + t.b3);
    gh.g2 = t.at2 + t.b3;
    gh.g1 = t.at1 + t.at2 * t.at2 + t.a3 * t.b2 + C * gh.h1;
    gh.g0 = t.at2 * t.at1 + t.a3 * t.bt1 + C * gh.h0;
    return gh;
}

Vec3 mult(const MultTable& t, const Vec3& v, const Vec3& w) {
    const int D = std::min({t.truncation(), v[0].truncation(), v[1].truncation(), v[2].truncation(),
                            w[0].truncation(), w[1].truncation(), w[2].truncation()});
    Vec3 r{Series2(D), Series2(D), Series2(D)};
    for (int i = 1; i <= 3; ++i) {
        if (v[i - 1].is_zero()) continue;
        for (int j = 1; j <= 3; ++j) {
            if (w[j - 1].is_zero()) continue;
            r = r + (v[i - 1] * w[j - 1]) * t.product(i, j);
        }
    }
    return r;
}

std::array<Series2, 3> associativity_residuals(const MultTable& t) {
    const AbcFrame f = table_to_abc(t);
    return {f.a1 + f.a3 * f.c3, f.b1 - f.a3 * f.c2, f.c1 + f.a2 * f.c2};
}

bool is_associative(const MultTable& t) {
    const auto r = associativity_residuals(t);
    return r[0].is_zero() && r[1].is_zero() && r[2].is_zero();
}

namespace {

void require_associative(const MultTable& t) {
    if (!is_associative(t)) throw NotAssociative("multiplication table is not associative");
}

struct RPart {
    Series2 R1, R2, R3, disc;
};

RPart r_part(const AbcFrame& f) {
    RPart r;
    r.R1 = f.a3 * f.c3 - kThird * (f.a2 * f.a2);
    r.R2 = f.a2 * f.c2 - kThird * (f.c3 * f.c3);
    r.R3 = f.a3 * f.c2 - Rat(1, 9) * (f.a2 * f.c3);
    r.disc = Rat(9) * (r.R3 * r.R3) - Rat(4) * (r.R1 * r.R2);
    return r;
}

}  // namespace

std::array<Series2, 3> a_invariants(const AbcFrame& f) {
    // a_{ji} denotes d_i a_j
    const Series2 a22 = d(f.a2, 2), a23 = d(f.a2, 3), a32 = d(f.a3, 2), a33 = d(f.a3, 3);
    const Series2 b22 = d(f.b2, 2), b33 = d(f.b3, 3);
    const Series2 c22 = d(f.c2, 2), c23 = d(f.c2, 3), c32 = d(f.c3, 2), c33 = d(f.c3, 3);
    return {f.a2 * (-b22 + b33 + a23) + f.a3 * (Rat(-2) * c22 - c33) - a32 * f.c2 - a33 * f.c3,
            f.c3 * (-b33 + b22 + c32) + f.c2 * (Rat(-2) * a33 - a22) - c23 * f.a3 - c22 * f.a2,
            Rat(-3) * b22 + Rat(3) * b33 + a23 - c32};
}

RInvariants r_invariants(const MultTable& t) {
    require_associative(t);
    const AbcFrame f = table_to_abc(t);
    const RPart rp = r_part(f);
    RInvariants r;
    r.R1 = rp.R1;
    r.R2 = rp.R2;
    r.R3 = rp.R3;
    r.disc = rp.disc;
    const auto A = a_invariants(f);
    r.A2 = A[0];
    r.A2dual = A[1];
    r.A3 = A[2];
    return r;
}

FVerdict is_f_manifold_closed_form(const MultTable& t) {
    const RInvariants inv = r_invariants(t);
    const AbcFrame f = table_to_abc(t);
    FVerdict v;
    v.residuals = {inv.A2, inv.A2dual, inv.A3};
    v.trivial_case = f.a2.is_zero() && f.a3.is_zero() && f.c2.is_zero() && f.c3.is_zero();
    v.invariant_case = inv.A2.is_zero() && inv.A2dual.is_zero() && inv.A3.is_zero();
    v.f_manifold = v.trivial_case || v.invariant_case;
    return v;
}

AlgebraType classify_at(const MultTable& t, const Rat& t2, const Rat& t3) {
    require_associative(t);
    const AbcFrame f = table_to_abc(t);
    const RPart r = r_part(f);
    auto at = [&](const Series2& s) { return s.eval(t2, t3); };
    if (sgn(at(r.disc)) != 0) return AlgebraType::Q4;
    if (sgn(at(r.R1)) != 0 || sgn(at(r.R2)) != 0 || sgn(at(r.R3)) != 0) return AlgebraType::Q3;
    if (sgn(at(f.a3)) != 0 || sgn(at(f.c2)) != 0) return AlgebraType::Q2;
    return AlgebraType::Q1;
}

GenericType generic_type(const MultTable& t) {
    require_associative(t);
    const AbcFrame f = table_to_abc(t);
    const RPart r = r_part(f);
    GenericType g;
    if (!r.disc.is_zero()) g.type = AlgebraType::Q4;
    else if (!r.R1.is_zero() || !r.R2.is_zero() || !r.R3.is_zero()) g.type = AlgebraType::Q3;
    else if (!f.a3.is_zero() || !f.c2.is_zero() || !f.a2.is_zero() || !f.c3.is_zero())
        g.type = AlgebraType::Q2;
    else g.type = AlgebraType::Q1;
    if (g.type != AlgebraType::Q4 && t.truncation() < 4)
        g.warning = "vanishing read at truncation " + std::to_string(t.truncation()) +
                    " may be an artifact of the truncation";
    return g;
}

PsiCubic psi_cubic(const MultTable& t, const Series2& l1, const Series2& l2) {
    const AbcFrame f = table_to_abc(t);
    const RPart r = r_part(f);
    PsiCubic c;
    c.P = r.R1 * l1 * l1 - Rat(3) * r.R3 * l1 * l2 + r.R2 * l2 * l2;
    const Series2 k30 = Rat(2, 9) * f.a2 * r.R1 - f.a3 * r.R3;
    const Series2 k21 = Rat(2, 3) * f.c3 * r.R1 - f.a2 * r.R3;
    const Series2 k12 = Rat(2, 3) * f.a2 * r.R2 - f.c3 * r.R3;
    const Series2 k03 = Rat(2, 9) * f.c3 * r.R2 - f.c2 * r.R3;
    c.Q = k30 * l1.pow(3) - k21 * l1 * l1 * l2 - k12 * l1 * l2 * l2 + k03 * l2.pow(3);
    return c;
}

Vec3 psi_relation_residual(const MultTable& t, const Series2& l1, const Series2& l2) {
    require_associative(t);
    const AbcFrame f = table_to_abc(t);
    const int D = t.truncation();
    const Series2 one = Series2::constant(1, D), zero(D);
    const Vec3 psi1{-f.b3 - kThird * f.a2, one, zero};
    const Vec3 psi2{-f.b2 - kThird * f.c3, zero, one};
    const Vec3 psi = l1 * psi1 + l2 * psi2;
    const Vec3 cube = mult(t, mult(t, psi, psi), psi);
    const PsiCubic c = psi_cubic(t, l1, l2);
    return cube + c.P * psi + c.Q * basis_vector(1, D);
}

Series2 potential(const Series2& p2, const Series2& p3) {
    if (!(p2.deriv(3) == p3.deriv(2))) throw PreconditionFailed("1-form is not closed");
    Series2 f = p2.integrate(2);
    Series2 rest(p3.truncation());
    for (const auto& term : p3.terms())
        if (term.i == 0) rest.set(0, term.j, term.c);
    return f + rest.integrate(3);
}

Series2 normalizing_tau(const MultTable& t) {
    const AbcFrame f = table_to_abc(t);
    return potential(-f.b3 - kThird * f.a2, -f.b2 - kThird * f.c3);
}

MultTable normalize(const MultTable& t) {
    const FVerdict v = is_f_manifold_closed_form(t);
    if (!v.invariant_case) throw PreconditionFailed("normalization needs A2 = A2dual = A3 = 0");
    AbcFrame f = table_to_abc(t);
    f.b3 = -(kThird * f.a2);
    f.b2 = -(kThird * f.c3);
    return abc_to_table(f);
}

}  // namespace fmankit
