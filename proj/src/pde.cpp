#include "fmankit/pde.hpp"

#include <algorithm>

#include "fmankit/spectrum.hpp"

namespace fmankit {

namespace {

Series2 trace_free_h0(const Series2& g2, const Series2& g1, const Series2& h2, const Series2& h1) {
    return -((g2 * g2 + g1 * Rat(2)) * h2 + g2 * h1) / Rat(3);
}

// Coefficient of t3^k in s, written back as a t3^k-homogeneous slice.
void add_slice(Series2& target, const Series2& s, int k, const Rat& factor, int shift) {
    for (const auto& t : s.terms())
        if (t.j == k) target.add_to(t.i, k + shift, t.c * factor);
}

}  // namespace

PdeSolution solve(const InitialData& in) {
    const int D = std::min({in.g2.truncation(), in.g1.truncation(), in.g0.truncation(), in.h2.truncation(),
                            in.h1.truncation(), in.h0.truncation()});
    if (sgn(in.h2.constant_term()) == 0) throw InvalidParameters("h2 must be a unit");
    if (in.g2.depends_on_t3() || in.g1.depends_on_t3() || in.g0.depends_on_t3())
        throw InvalidParameters("initial g's must be series in t2");
    if (in.order < 0 || in.order > D - 1)
        throw InvalidParameters("t3-order " + std::to_string(in.order) + " exceeds the budget " +
                                std::to_string(D - 1) + " at truncation " + std::to_string(D));

    Series2 g2 = in.g2.truncated(D), g1 = in.g1.truncated(D), g0 = in.g0.truncated(D);
    const Series2 h2 = in.h2.truncated(D), h1 = in.h1.truncated(D);
    Series2 h0 = in.h0.truncated(D);
    const Series2 h22 = h2.deriv(2), h12 = h1.deriv(2);

    for (int k = 0; k < in.order; ++k) {
        if (in.h0_mode == H0Mode::TraceFree) h0 = trace_free_h0(g2, g1, h2, h1).truncated(D);
        const Series2 g22 = g2.deriv(2), g12 = g1.deriv(2), g02 = g0.deriv(2), h02 = h0.deriv(2);
        const Series2 r2 = ((g2 * g2 + g1 * Rat(2)) * h2 + g2 * h1 + h0 * Rat(3)).deriv(2);
        const Series2 r1 = (g22 * g1 * Rat(2) + g02 * Rat(2)) * h2 + (g2 * g1 + g0 * Rat(3)) * h22 + g12 * h1 +
                           g1 * h12 * Rat(2) - g2 * h02 * Rat(2);
        const Series2 r0 = g22 * g0 * h2 * Rat(2) + g2 * g0 * h22 + g02 * h1 + g0 * h12 * Rat(3) - g1 * h02;
        const Rat inv(1, k + 1);
        add_slice(g2, r2, k, inv, 1);
        add_slice(g1, r1, k, inv, 1);
        add_slice(g0, r0, k, inv, 1);
    }
    if (in.h0_mode == H0Mode::TraceFree) h0 = trace_free_h0(g2, g1, h2, h1).truncated(D);

    const int P = std::min(D, in.order + 1);
    PdeSolution out;
    out.gh = {g2.truncated(P), g1.truncated(P), g0.truncated(P), h2.truncated(P), h1.truncated(P), h0.truncated(P)};
    out.order = in.order;
    out.precision = P;
    return out;
}

NormalizedGh normalize_gh(const GhFrame& gh) {
    if (!gh_bracket_residuals(gh).f_manifold())
        throw PreconditionFailed("normalization needs an F-manifold GH frame");
    const Series2& g2 = gh.g2;
    const Series2& g1 = gh.g1;
    const Series2& g0 = gh.g0;
    const Series2 s = g2 / Rat(3);
    const Series2 d3tau = -((g2 * g2 + g1 * Rat(2)) * gh.h2 + g2 * gh.h1 + gh.h0 * Rat(3)) / Rat(3);
    NormalizedGh out;
    out.tau = potential(-s, d3tau);
    const int D = std::min({g2.truncation(), g1.truncation(), g0.truncation(), gh.h2.truncation(),
                            gh.h1.truncation(), gh.h0.truncation()});
    out.gh.g2 = Series2(D);
    out.gh.g1 = (g1 + g2 * g2 / Rat(3)).truncated(D);
    out.gh.g0 = (g0 + g1 * g2 / Rat(3) + g2 * g2 * g2 * Rat(2, 27)).truncated(D);
    out.gh.h2 = gh.h2.truncated(D);
    out.gh.h1 = (gh.h1 + s * gh.h2 * Rat(2)).truncated(D);
    out.gh.h0 = (gh.h0 + gh.h1 * s + gh.h2 * s * s + d3tau).truncated(D);
    return out;
}

}  // namespace fmankit
