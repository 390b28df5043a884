#include <gtest/gtest.h>

#include "fmankit/catalog.hpp"
#include "fmankit/pde.hpp"
#include "fmankit/spectrum.hpp"

using namespace fmankit;

namespace {

constexpr int D = 8;

Series2 S(const std::string& text) { return Series2::parse(text, D); }

InitialData init(const std::string& g2, const std::string& g1, const std::string& g0, const std::string& h2,
                 const std::string& h1, const std::string& h0, int order = D - 1) {
    InitialData in;
    in.g2 = S(g2);
    in.g1 = S(g1);
    in.g0 = S(g0);
    in.h2 = S(h2);
    in.h1 = S(h1);
    in.h0 = S(h0);
    in.order = order;
    return in;
}

InitialData restriction(const GhFrame& gh) {
    InitialData in;
    in.g2 = gh.g2.restrict_t3_zero();
    in.g1 = gh.g1.restrict_t3_zero();
    in.g0 = gh.g0.restrict_t3_zero();
    in.h2 = gh.h2;
    in.h1 = gh.h1;
    in.h0 = gh.h0;
    in.order = gh.g2.truncation() - 1;
    return in;
}

}  // namespace

TEST(PdeSolve, ZeroIsFixed) {
    const PdeSolution s = solve(init("0", "0", "0", "1", "0", "0"));
    EXPECT_TRUE(s.gh.g2.is_zero() && s.gh.g1.is_zero() && s.gh.g0.is_zero());
    EXPECT_EQ(s.precision, D);
}

TEST(PdeSolve, RecoversB3) {
    const PdeSolution s = solve(init("0", "-t2", "0", "1", "0", "0"));
    EXPECT_EQ(s.gh.g2, S("-2*t3"));
    EXPECT_EQ(s.gh.g1, S("-t2"));
    EXPECT_TRUE(s.gh.g0.is_zero());
}

TEST(PdeSolve, RecoversA3) {
    const PdeSolution s = solve(init("0", "0", "-t2", "1", "0", "0", 5));
    EXPECT_EQ(s.precision, 6);
    EXPECT_TRUE(s.gh.g2.is_zero());
    EXPECT_EQ(s.gh.g1, Series2::parse("-2*t3", 6));
    EXPECT_EQ(s.gh.g0, Series2::parse("-t2", 6));
}

TEST(PdeSolve, Refusals) {
    EXPECT_THROW(solve(init("0", "0", "0", "t2", "0", "0")), InvalidParameters);
    EXPECT_THROW(solve(init("t3", "0", "0", "1", "0", "0")), InvalidParameters);
    EXPECT_THROW(solve(init("0", "0", "0", "1", "0", "0", D)), InvalidParameters);
    EXPECT_THROW(solve(init("0", "0", "0", "1", "0", "0", -1)), InvalidParameters);
}

TEST(PdeSolve, Deterministic) {
    const InitialData in = init("t2", "1 - t2^2", "3*t2", "2 + t3", "t2*t3", "-1/3*t2");
    const PdeSolution a = solve(in), b = solve(in);
    EXPECT_EQ(a.gh.g2, b.gh.g2);
    EXPECT_EQ(a.gh.g1, b.gh.g1);
    EXPECT_EQ(a.gh.g0, b.gh.g0);
    EXPECT_TRUE(gh_bracket_residuals(a.gh).f_manifold());
}

TEST(PdeSolve, CatalogRoundTrip) {
    std::vector<FamilySpec> specs;
    for (Family f : {Family::Ex6_2_A3, Family::Ex6_2_B3, Family::Ex6_2_H3, Family::Thm5_6, Family::Thm7_1b}) {
        FamilySpec s;
        s.family = f;
        specs.push_back(s);
    }
    specs[3].p = 3;
    for (const auto& spec : specs) {
        const BuildResult b = build(spec, D);
        ASSERT_TRUE(b.gh) << family_name(spec.family);
        const PdeSolution s = solve(restriction(*b.gh));
        EXPECT_EQ(s.gh.g2, b.gh->g2) << family_name(spec.family);
        EXPECT_EQ(s.gh.g1, b.gh->g1) << family_name(spec.family);
        EXPECT_EQ(s.gh.g0, b.gh->g0) << family_name(spec.family);
    }
}

TEST(PdeSolve, TraceFreeConstruction) {
    // (g2, h2, h1, h0) = (0, 1, t2, -2/3 g1) keeps the bracket cofactor at 3.
    InitialData in = init("0", "t2 + 1/2*t2^2", "t2^3 - t2", "1", "t2", "0");
    in.h0_mode = H0Mode::TraceFree;
    const PdeSolution s = solve(in);
    EXPECT_TRUE(s.gh.g2.is_zero());
    EXPECT_EQ(s.gh.h0, -(s.gh.g1 * Rat(2, 3)));
    const GhBracket br = gh_bracket_residuals(s.gh);
    EXPECT_TRUE(br.f_manifold());
    EXPECT_EQ(br.cofactor0, Series2::constant(3, s.precision));
    EXPECT_TRUE(br.cofactor1.is_zero());
}

TEST(NormalizeGh, A3) {
    FamilySpec spec;
    spec.family = Family::Ex6_2_A3;
    const GhFrame gh = *build(spec, D).gh;
    const NormalizedGh n = normalize_gh(gh);
    EXPECT_TRUE(n.gh.g2.is_zero());
    EXPECT_TRUE((n.gh.g1 * n.gh.h2 * Rat(2) + n.gh.h0 * Rat(3)).is_zero());
    EXPECT_TRUE(n.tau.deriv(2).is_zero());
    EXPECT_EQ(n.tau.deriv(3), -(gh.g1 * gh.h2 * Rat(2, 3)));
    EXPECT_TRUE(gh_bracket_residuals(n.gh).f_manifold());
}

TEST(NormalizeGh, IdentityOnNormalized) {
    FamilySpec spec;
    spec.family = Family::Ex6_2_A3;
    const GhFrame once = normalize_gh(*build(spec, D).gh).gh;
    const NormalizedGh twice = normalize_gh(once);
    EXPECT_EQ(twice.gh.g1, once.g1);
    EXPECT_EQ(twice.gh.g0, once.g0);
    EXPECT_EQ(twice.gh.h1, once.h1);
    EXPECT_EQ(twice.gh.h0, once.h0);
    EXPECT_TRUE(twice.tau.is_zero());
}

TEST(NormalizeGh, ShiftedB3) {
    FamilySpec spec;
    spec.family = Family::Ex6_2_B3;
    const NormalizedGh n = normalize_gh(*build(spec, D).gh);
    EXPECT_TRUE(n.gh.g2.is_zero());
    EXPECT_TRUE((n.gh.g1 * n.gh.h2 * Rat(2) + n.gh.h0 * Rat(3)).is_zero());
    EXPECT_TRUE(gh_bracket_residuals(n.gh).f_manifold());
}

TEST(NormalizeGh, Gate) {
    const GhFrame gh{Series2(D), Series2(D), S("-t2"), S("1"), Series2(D), S("t3")};
    EXPECT_THROW(normalize_gh(gh), PreconditionFailed);
}
