#pragma once

#include "fmankit/tangent_algebra.hpp"

namespace fmankit {

enum class H0Mode {
    Given,      // h0 as supplied
    TraceFree,  // h0 = -((g2^2 + 2 g1) h2 + g2 h1) / 3, recomputed from the current g's
};

struct InitialData {
    Series2 g2, g1, g0;  // values at t3 = 0; must not involve t3
    Series2 h2, h1, h0;  // h2 a unit
    int order = 5;       // t3-order N of the solution
    H0Mode h0_mode = H0Mode::Given;
};

struct PdeSolution {
    GhFrame gh;
    int order;      // t3-order solved for
    int precision;  // every series is exact modulo total degree >= precision
};

// Power-series solution of d3 (g2, g1, g0) = RHS(g, h) with the given values at t3 = 0.
// InvalidParameters if h2 is not a unit, an initial g depends on t3, or N exceeds the
// truncation budget (N <= D - 1).
PdeSolution solve(const InitialData& init);

struct NormalizedGh {
    GhFrame gh;  // g2 = 0 and 2 g1 h2 + 3 h0 = 0
    Series2 tau;  // t1 = s1 + tau
};

// PreconditionFailed unless the frame is an F-manifold.
NormalizedGh normalize_gh(const GhFrame& gh);

}  // namespace fmankit
