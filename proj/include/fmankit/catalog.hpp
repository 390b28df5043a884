#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fmankit/euler.hpp"
#include "fmankit/family.hpp"
#include "fmankit/tangent_algebra.hpp"

namespace fmankit {

struct CausticSample {
    Rat t2, t3;
    AlgebraType type;
};

struct Metadata {
    AlgebraType generic_type = AlgebraType::Q4;
    AlgebraType origin_type = AlgebraType::Q4;
    std::string caustic;                  // human-readable description
    std::vector<CausticSample> caustic_samples;
    std::string note;                     // e.g. why no Euler field is attached
};

struct BuildResult {
    MultTable table;
    std::optional<GhFrame> gh;
    std::vector<VectorField> euler;
    Metadata meta;
    // Potentials f with y2 = d2 f, y3 = d3 f on a component of the spectrum.
    // Order-k entries stand for all k conjugates.
    std::vector<ExtSeries> potentials;
};

BuildResult build(const FamilySpec& spec, int truncation);

// Smallest truncation at which the generic type of the family is visible
// (the discriminant or the R-invariants are nonzero).
int suggested_truncation(const FamilySpec& spec);

enum class Factor2d { I2, N2, A1A1 };

struct ProductData {
    int m = 3;                      // for I2(m)
    Rat c1 = 0, c2 = 1, c3 = 2;     // unit shifts of the factor Euler fields
    std::optional<Series2> g;       // d3-coefficient for N2, a series in t3; default 1
};

struct ProductResult {
    MultTable table;
    VectorField euler;
};

ProductResult product(Factor2d factor, const ProductData& data, int truncation);

// Solve Lie_E(∘) = ∘ for E = t1 d1 + sum x_k B_k over the given fields B_k
// (with c = 0). Returns the solution with free unknowns set to 0.
std::optional<VectorField> solve_euler(const MultTable& t, const std::vector<VectorField>& basis);

}  // namespace fmankit
