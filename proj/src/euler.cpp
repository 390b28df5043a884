#include "fmankit/euler.hpp"

#include <algorithm>

namespace fmankit {

Mero Mero::canonical() const {
    Mero r = *this;
    if (r.num.is_zero()) return {r.num, 0};
    while (r.pole > 0 && r.num.t2_valuation() > 0) {
        r.num = r.num.div_t2_pow(1);
        --r.pole;
    }
    return r;
}

Series2 Mero::over(int m) const { return num.mul_t2_pow(m - pole); }

Mero Mero::deriv(int var) const {
    if (var == 3) return {num.deriv(3), pole};
    // d/dt2 (t2^-m s) = t2^(-m-1) (t2 ds/dt2 - m s)
    return {num.deriv(2).mul_t2_pow(1) - num * Rat(pole), pole + 1};
}

Rat Mero::eval(const Rat& t2, const Rat& t3) const {
    const Mero c = canonical();
    if (c.pole == 0) return c.num.eval(t2, t3);
    if (sgn(t2) == 0) throw PoleAtPoint("vector field has a pole along t2 = 0");
    Rat denom = 1;
    for (int k = 0; k < c.pole; ++k) denom *= t2;
    return c.num.eval(t2, t3) / denom;
}

Mero operator+(const Mero& a, const Mero& b) {
    const int m = std::max(a.pole, b.pole);
    return {a.over(m) + b.over(m), m};
}

Mero operator-(const Mero& a, const Mero& b) {
    const int m = std::max(a.pole, b.pole);
    return {a.over(m) - b.over(m), m};
}

Mero operator*(const Mero& a, const Mero& b) { return {a.num * b.num, a.pole + b.pole}; }
Mero operator*(const Series2& s, const Mero& a) { return {s * a.num, a.pole}; }
Mero operator-(const Mero& a) { return {-a.num, a.pole}; }

VectorField VectorField::make(const Rat& c, Series2 eps1_0, Mero eps2, Mero eps3) {
    VectorField E;
    E.c = c;
    E.eps1_0 = std::move(eps1_0);
    E.eps2 = eps2.canonical();
    E.eps3 = eps3.canonical();
    return E;
}

VectorField VectorField::canonical() const { return make(c, eps1_0, eps2, eps3); }

VectorField operator-(const VectorField& a, const VectorField& b) {
    return VectorField::make(a.c - b.c, a.eps1_0 - b.eps1_0, a.eps2 - b.eps2, a.eps3 - b.eps3);
}

VectorField shift_by_unit(const VectorField& E, const Rat& c) {
    VectorField r = E;
    r.eps1_0 += Series2::constant(c, E.eps1_0.truncation());
    return r;
}

namespace {

using MeroVec = std::array<Mero, 3>;

MeroVec lift(const Vec3& v) { return {Mero(v[0]), Mero(v[1]), Mero(v[2])}; }

MeroVec sub(const MeroVec& a, const MeroVec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

// v∘d_j for a meromorphic vector v.
MeroVec times_basis(const MultTable& t, const MeroVec& v, int j) {
    const int D = t.truncation();
    MeroVec r{Mero(Series2(D)), Mero(Series2(D)), Mero(Series2(D))};
    for (int i = 1; i <= 3; ++i) {
        const Vec3 p = t.product(i, j);
        for (int k = 0; k < 3; ++k) r[k] = r[k] + p[k] * v[i - 1];
    }
    return r;
}

// [E, X] for a t1-independent holomorphic X.
MeroVec bracket(const VectorField& E, const Vec3& x) {
    const Mero e1(E.eps1_0);
    MeroVec r;
    for (int k = 0; k < 3; ++k) {
        const Mero xk(x[k]);
        const Mero along = E.eps2 * xk.deriv(2) + E.eps3 * xk.deriv(3);
        const Mero& ek = k == 0 ? e1 : (k == 1 ? E.eps2 : E.eps3);
        Mero back = x[1] * ek.deriv(2) + x[2] * ek.deriv(3);
        if (k == 0) back = back + Mero(x[0] * E.c);
        r[k] = along - back;
    }
    return r;
}

LieResidual residual(const MultTable& t, const VectorField& E, bool with_product_term) {
    const int D = t.truncation();
    std::vector<std::pair<std::pair<int, int>, MeroVec>> raw;
    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j) {
            const Vec3 pij = t.product(i, j);
            MeroVec r = bracket(E, pij);
            r = sub(r, times_basis(t, bracket(E, basis_vector(i, D)), j));
            r = sub(r, times_basis(t, bracket(E, basis_vector(j, D)), i));
            if (with_product_term) r = sub(r, lift(pij));
            for (auto& x : r) x = x.canonical();
            raw.push_back({{i, j}, r});
        }
    LieResidual out;
    for (const auto& [ij, r] : raw)
        for (const auto& x : r)
            if (!x.is_zero()) out.cleared_by = std::max(out.cleared_by, x.pole);
    for (const auto& [ij, r] : raw)
        out.entries.push_back({ij.first, ij.second,
                               {r[0].over(out.cleared_by), r[1].over(out.cleared_by),
                                r[2].over(out.cleared_by)}});
    return out;
}

}  // namespace

bool LieResidual::is_zero() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const Entry& e) { return fmankit::is_zero(e.value); });
}

std::string LieResidual::first_nonzero() const {
    for (const auto& e : entries)
        for (int k = 0; k < 3; ++k)
            if (!e.value[k].is_zero())
                return "(" + std::to_string(e.i) + "," + std::to_string(e.j) + ") component d" +
                       std::to_string(k + 1) + ": " + e.value[k].to_string();
    return "";
}

LieResidual lie_residual(const MultTable& t, const VectorField& E) {
    if (!is_associative(t)) throw NotAssociative("Euler check needs an associative table");
    return residual(t, E, true);
}

LieResidual symmetry_residual(const MultTable& t, const VectorField& E) {
    if (!is_associative(t)) throw NotAssociative("symmetry check needs an associative table");
    return residual(t, E, false);
}

namespace {

using Mat = std::array<std::array<Rat, 3>, 3>;

Mat matmul(const Mat& a, const Mat& b) {
    Mat r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rat acc = 0;
            for (int k = 0; k < 3; ++k) acc += a[i][k] * b[k][j];
            r[i][j] = acc;
        }
    return r;
}

int rank(std::vector<std::vector<Rat>> rows) {
    int r = 0;
    const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (sgn(rows[i][c]) != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || sgn(rows[i][c]) == 0) continue;
            const Rat f = rows[i][c] / rows[r][c];
            for (int k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
        }
        ++r;
    }
    return r;
}

}  // namespace

bool regular_at(const MultTable& t, const VectorField& E, const Rat& t2, const Rat& t3) {
    if (!is_associative(t)) throw NotAssociative("regularity needs an associative table");
    const Rat e1 = E.eps1_0.eval(t2, t3);  // at t1 = 0; the t1 part only shifts by a scalar
    const Rat e2 = E.eps2.eval(t2, t3);
    const Rat e3 = E.eps3.eval(t2, t3);
    // Column j of M is E∘d_j.
    Mat M{};
    for (int j = 1; j <= 3; ++j) {
        const Vec3 p2 = t.product(2, j), p3 = t.product(3, j);
        for (int k = 0; k < 3; ++k) {
            Rat v = e2 * p2[k].eval(t2, t3) + e3 * p3[k].eval(t2, t3);
            if (k == j - 1) v += e1;
            M[k][j - 1] = v;
        }
    }
    const Mat M2 = matmul(M, M);
    std::vector<std::vector<Rat>> rows(3, std::vector<Rat>(9, Rat(0)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            rows[0][3 * i + j] = i == j ? 1 : 0;
            rows[1][3 * i + j] = M[i][j];
            rows[2][3 * i + j] = M2[i][j];
        }
    return rank(rows) == 3;
}

}  // namespace fmankit
