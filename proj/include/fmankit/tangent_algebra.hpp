#pragma once

#include <array>
#include <string>

#include "fmankit/series.hpp"

namespace fmankit {

// Coordinates of a vector field in the frame (d1 = e, d2, d3).
using Vec3 = std::array<Series2, 3>;

Vec3 basis_vector(int k, int truncation);  // k in {1, 2, 3}
Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(const Series2& s, const Vec3& v);
bool is_zero(const Vec3& v);

// d2∘d2 = at1 d1 + at2 d2 + a3 d3
// d2∘d3 = bt1 d1 + b2 d2 + b3 d3
// d3∘d3 = ct1 d1 + c2 d2 + ct3 d3
struct MultTable {
    Series2 at1, at2, a3, bt1, b2, b3, ct1, c2, ct3;

    static MultTable zero(int truncation);
    int truncation() const;
    // d_i∘d_j for i, j in {1, 2, 3}.
    Vec3 product(int i, int j) const;
};

// (d2 - b3 d1)^2          = a1 d1 + a2 (d2 - b3 d1) + a3 (d3 - b2 d1)
// (d2 - b3 d1)(d3 - b2 d1) = b1 d1
// (d3 - b2 d1)^2          = c1 d1 + c2 (d2 - b3 d1) + c3 (d3 - b2 d1)
struct AbcFrame {
    Series2 a1, a2, a3, b1, b2, b3, c1, c2, c3;
};

// d2^3 = g2 d2^2 + g1 d2 + g0 d1,   d3 = h2 d2^2 + h1 d2 + h0 d1
struct GhFrame {
    Series2 g2, g1, g0, h2, h1, h0;
};

enum class AlgebraType { Q1, Q2, Q3, Q4 };
std::string to_string(AlgebraType t);

struct RInvariants {
    Series2 R1, R2, R3, disc;
    Series2 A2, A2dual, A3;
};

AbcFrame table_to_abc(const MultTable& t);
MultTable abc_to_table(const AbcFrame& f);
MultTable gh_to_table(const GhFrame& gh);
GhFrame table_to_gh(const MultTable& t);

Vec3 mult(const MultTable& t, const Vec3& v, const Vec3& w);

std::array<Series2, 3> associativity_residuals(const MultTable& t);
bool is_associative(const MultTable& t);
RInvariants r_invariants(const MultTable& t);
// (A2, A2dual, A3); defined for any table.
std::array<Series2, 3> a_invariants(const AbcFrame& f);

struct FVerdict {
    bool f_manifold = false;
    bool trivial_case = false;    // a2 = a3 = c2 = c3 = 0
    bool invariant_case = false;  // A2 = A2dual = A3 = 0
    std::array<Series2, 3> residuals;  // A2, A2dual, A3
};
FVerdict is_f_manifold_closed_form(const MultTable& t);

AlgebraType classify_at(const MultTable& t, const Rat& t2, const Rat& t3);

struct GenericType {
    AlgebraType type;
    std::string warning;  // empty unless the verdict rests on a very short truncation
};
GenericType generic_type(const MultTable& t);

// psi^3 + P psi + Q d1 for psi = l1 psi1 + l2 psi2; zero for associative tables.
Vec3 psi_relation_residual(const MultTable& t, const Series2& l1, const Series2& l2);
struct PsiCubic {
    Series2 P, Q;
};
PsiCubic psi_cubic(const MultTable& t, const Series2& l1, const Series2& l2);

MultTable normalize(const MultTable& t);
// tau with d2 tau = -b3 - a2/3 and d3 tau = -b2 - c3/3.
Series2 normalizing_tau(const MultTable& t);
// f with d2 f = p2, d3 f = p3 and f(0) = 0; PreconditionFailed unless closed.
Series2 potential(const Series2& p2, const Series2& p3);

}  // namespace fmankit
