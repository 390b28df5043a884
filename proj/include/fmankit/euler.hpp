#pragma once

#include <array>
#include <vector>

#include "fmankit/family.hpp"
#include "fmankit/tangent_algebra.hpp"

namespace fmankit {

// t2^(-pole) * num.
struct Mero {
    Series2 num;
    int pole = 0;

    Mero() = default;
    Mero(Series2 s, int m = 0) : num(std::move(s)), pole(m) {}

    bool is_zero() const { return num.is_zero(); }
    // Smallest pole order: strips t2 factors from num while pole > 0.
    Mero canonical() const;
    // Same value written over t2^m, m >= pole.
    Series2 over(int m) const;
    Mero deriv(int var) const;
    Rat eval(const Rat& t2, const Rat& t3) const;  // PoleAtPoint when t2 = 0 and pole > 0
};

Mero operator+(const Mero& a, const Mero& b);
Mero operator-(const Mero& a, const Mero& b);
Mero operator*(const Mero& a, const Mero& b);
Mero operator*(const Series2& s, const Mero& a);
Mero operator-(const Mero& a);

// eps1 = c t1 + eps1_0, eps2, eps3 possibly with poles along t2 = 0.
struct VectorField {
    Rat c = 1;
    Series2 eps1_0;
    Mero eps2;
    Mero eps3;

    static VectorField make(const Rat& c, Series2 eps1_0, Mero eps2, Mero eps3);
    int max_pole() const { return std::max(eps2.pole, eps3.pole); }
    VectorField canonical() const;
};

VectorField operator-(const VectorField& a, const VectorField& b);
VectorField shift_by_unit(const VectorField& E, const Rat& c);

struct LieResidual {
    struct Entry {
        int i, j;
        Vec3 value;  // multiplied by t2^cleared_by
    };
    int cleared_by = 0;
    std::vector<Entry> entries;  // (1,1), (1,2), (1,3), (2,2), (2,3), (3,3)

    bool is_zero() const;
    // First nonzero entry as "(i,j) component k"; empty when zero.
    std::string first_nonzero() const;
};

// Lie_E(d_i∘d_j) - (Lie_E d_i)∘d_j - (Lie_E d_j)∘d_i - d_i∘d_j.
LieResidual lie_residual(const MultTable& t, const VectorField& E);
// Same residual without the final -d_i∘d_j term: zero iff E is a symmetry of ∘.
LieResidual symmetry_residual(const MultTable& t, const VectorField& E);

bool euler_constraint_check(const FamilySpec& spec, const VectorField& E, int truncation);

bool regular_at(const MultTable& t, const VectorField& E, const Rat& t2, const Rat& t3);

}  // namespace fmankit
