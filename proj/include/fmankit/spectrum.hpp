#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "fmankit/tangent_algebra.hpp"

namespace fmankit {

// Polynomial in y1, y2, y3 with Series2 coefficients in (t2, t3).
class CotangentPoly {
public:
    using Exponent = std::array<int, 3>;

    explicit CotangentPoly(int truncation = 8) : D_(truncation) {}
    static CotangentPoly constant(const Series2& s);
    static CotangentPoly y(int k, int truncation);  // k in {1, 2, 3}
    static CotangentPoly monomial(const Series2& s, const Exponent& e);

    int truncation() const { return D_; }
    const std::map<Exponent, Series2>& terms() const { return terms_; }
    Series2 coeff(const Exponent& e) const;
    bool is_zero() const;
    int y_degree() const;

    CotangentPoly deriv_y(int k) const;
    CotangentPoly deriv_t(int k) const;  // k = 1 gives zero
    // Substitute y1 = 1.
    CotangentPoly dehomogenize() const;

    CotangentPoly& operator+=(const CotangentPoly& o);
    CotangentPoly& operator-=(const CotangentPoly& o);
    friend CotangentPoly operator+(CotangentPoly a, const CotangentPoly& b) { return a += b; }
    friend CotangentPoly operator-(CotangentPoly a, const CotangentPoly& b) { return a -= b; }
    friend CotangentPoly operator*(const CotangentPoly& a, const CotangentPoly& b);
    friend CotangentPoly operator*(const Series2& s, const CotangentPoly& a);
    CotangentPoly operator-() const;
    friend bool operator==(const CotangentPoly& a, const CotangentPoly& b) { return (a - b).is_zero(); }

    std::string to_string() const;

private:
    void add_term(const Exponent& e, const Series2& s);
    void prune();

    int D_;
    std::map<Exponent, Series2> terms_;
};

// {f, g} = H_f(g) with H_f = sum_k (df/dt_k d/dy_k - df/dy_k d/dt_k).
CotangentPoly poisson(const CotangentPoly& f, const CotangentPoly& g);

enum class IdealFrame { Y, Z };

struct SpectrumIdeal {
    IdealFrame frame;
    MultTable table;
    GhFrame gh;  // meaningful for the Z frame
    std::vector<std::string> names;
    std::vector<CotangentPoly> generators;
};

// Generators y1 - 1 and y_i y_j - sum_k a_ij^k y_k for 2 <= i <= j <= 3.
SpectrumIdeal spectrum_ideal(const MultTable& t);
// Generators y1 - 1, Z2, Z3.
SpectrumIdeal spectrum_ideal(const GhFrame& gh);

// Y22, Y23, Y33 written through the ABC coefficients.
struct YGenerators {
    CotangentPoly Y22, Y23, Y33;
};
YGenerators y_generators(const AbcFrame& f);

// The decompositions of {Y23, Y22}, {Y23, Y33}, {Y33, Y22} into
// Y-combinations plus A-invariant terms; each equals the bracket for any table.
struct YBracketDecomposition {
    CotangentPoly b22_23, b33_23, b22_33;
};
YBracketDecomposition y_bracket_decomposition(const AbcFrame& f);

enum class ReductionOrder { Y3First, Y2First };
CotangentPoly reduce(const CotangentPoly& p, const SpectrumIdeal& ideal,
                     ReductionOrder order = ReductionOrder::Y3First);

struct BracketResidual {
    std::string left, right;
    CotangentPoly normal_form;
};
struct BracketVerdict {
    bool closed = true;
    std::vector<BracketResidual> residuals;  // all generator pairs
};
BracketVerdict f_condition_bracket(const SpectrumIdeal& ideal);

// {Z2, Z3} = Z2 (cofactor0 + cofactor1 y2) + r2 y2^2 + r1 y2 + r0.
struct GhBracket {
    Series2 cofactor0, cofactor1, r2, r1, r0;
    bool f_manifold() const { return r2.is_zero() && r1.is_zero() && r0.is_zero(); }
};
GhBracket gh_bracket_residuals(const GhFrame& gh);
CotangentPoly z2_generator(const GhFrame& gh);
CotangentPoly z3_generator(const GhFrame& gh);

}  // namespace fmankit
