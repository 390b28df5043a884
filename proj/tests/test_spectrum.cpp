#include <gtest/gtest.h>

#include "fmankit/catalog.hpp"
#include "fmankit/spectrum.hpp"

using namespace fmankit;

namespace {

constexpr int D = 8;

Series2 S(const std::string& text) { return Series2::parse(text, D); }
CotangentPoly Y(int k) { return CotangentPoly::y(k, D); }
CotangentPoly C(const std::string& text) { return CotangentPoly::constant(S(text)); }

BuildResult built(Family f, std::initializer_list<std::pair<const char*, const char*>> params = {}) {
    FamilySpec spec;
    spec.family = f;
    for (const auto& [k, v] : params) spec.set_param(k, v);
    return build(spec, D);
}

Rat det3(const std::array<std::array<Rat, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

TEST(Poisson, Convention) {
    EXPECT_EQ(poisson(Y(2), C("t2")), C("-1"));
    EXPECT_EQ(poisson(C("t3"), Y(3)), C("1"));
    EXPECT_TRUE(poisson(Y(2), Y(3)).is_zero());
    EXPECT_TRUE(poisson(Y(1), C("t2^2 + t3")).is_zero());
}

TEST(Poisson, Antisymmetric) {
    const CotangentPoly f = C("t2*t3") * Y(2) * Y(2) + C("1 - t3") * Y(3);
    const CotangentPoly g = C("t2^2") * Y(3) * Y(2) + C("t3") * Y(1);
    EXPECT_EQ(poisson(f, g), -poisson(g, f));
}

TEST(Poisson, BracketDecompositionOnThm5_4c) {
    const AbcFrame f = table_to_abc(built(Family::Thm5_4c, {{"f1", "t2 + t3^2"}, {"f2", "t3"}, {"h", "1 + t2"}}).table);
    const YGenerators g = y_generators(f);
    const YBracketDecomposition d = y_bracket_decomposition(f);
    EXPECT_EQ(poisson(g.Y23, g.Y22), d.b22_23);
    EXPECT_EQ(poisson(g.Y23, g.Y33), d.b33_23);
    EXPECT_EQ(poisson(g.Y33, g.Y22), d.b22_33);
}

TEST(Reduce, Relations) {
    const SpectrumIdeal a = spectrum_ideal(built(Family::Thm5_4a).table);
    EXPECT_EQ(reduce(Y(2) * Y(2), a), Y(3));
    for (const auto& gen : a.generators) EXPECT_TRUE(reduce(gen, a).is_zero());
    const SpectrumIdeal l = spectrum_ideal(built(Family::Lem5_8, {{"p", "2"}}).table);
    EXPECT_TRUE(reduce(Y(2) * Y(3), l).is_zero());
}

TEST(Reduce, NeedsAssociativity) {
    MultTable t = built(Family::Lem6_5).table;
    t.b2 += S("1");
    EXPECT_THROW(reduce(Y(2) * Y(3), spectrum_ideal(t)), NotAssociative);
}

TEST(Reduce, BothOrdersAgree) {
    const SpectrumIdeal l = spectrum_ideal(built(Family::Lem6_5).table);
    const CotangentPoly p = C("t2") * Y(2) * Y(2) * Y(3) + C("1 + t3") * Y(3) * Y(3) * Y(3) - Y(2) * Y(3);
    EXPECT_EQ(reduce(p, l, ReductionOrder::Y3First), reduce(p, l, ReductionOrder::Y2First));
}

TEST(FConditionBracket, CatalogTables) {
    for (Family f : {Family::Thm5_4a, Family::Lem6_5, Family::Ex6_2_B3, Family::Thm5_6, Family::Lem5_8}) {
        const BracketVerdict v = f_condition_bracket(spectrum_ideal(built(f).table));
        EXPECT_TRUE(v.closed) << family_name(f);
        EXPECT_EQ(v.residuals.size(), 6u);
    }
}

TEST(FConditionBracket, GhNonExample) {
    const GhFrame gh{Series2(D), Series2(D), S("-t2"), S("1"), Series2(D), S("t3")};
    const GhBracket br = gh_bracket_residuals(gh);
    EXPECT_FALSE(br.f_manifold());
    const BracketVerdict v = f_condition_bracket(spectrum_ideal(gh));
    EXPECT_FALSE(v.closed);
    bool found = false;
    for (const auto& r : v.residuals) found = found || !r.normal_form.is_zero();
    EXPECT_TRUE(found);
}

TEST(FConditionBracket, Thm5_2WithNonClosedRadical) {
    const MultTable t = built(Family::Thm5_2, {{"b2", "t2*t3"}}).table;
    EXPECT_TRUE(f_condition_bracket(spectrum_ideal(t)).closed);
    // Reduced ideal (y1 - 1, y2, y3 - b2): its bracket is d2 b2, a nonzero function.
    const CotangentPoly br = poisson(Y(2), Y(3) - C("t2*t3"));
    EXPECT_EQ(br, C("t3"));
}

TEST(GhBracket, A3AndThm5_6) {
    const BuildResult a3 = built(Family::Ex6_2_A3);
    ASSERT_TRUE(a3.gh);
    EXPECT_TRUE(gh_bracket_residuals(*a3.gh).f_manifold());
    for (const char* p : {"2", "3", "4"}) {
        const BuildResult b = built(Family::Thm5_6, {{"p", p}});
        ASSERT_TRUE(b.gh);
        EXPECT_TRUE(gh_bracket_residuals(*b.gh).f_manifold()) << p;
        EXPECT_TRUE(f_condition_bracket(spectrum_ideal(*b.gh)).closed) << p;
    }
}

TEST(Spectrum, EulerEigenvaluesOnLem6_4) {
    // Normal form of alpha(E) evaluated on the fiber gives the eigenvalues of E∘.
    const BuildResult b = built(Family::Lem6_4, {{"p2", "2"}, {"p3", "2"}});
    const VectorField& E = b.euler.at(0);
    const SpectrumIdeal I = spectrum_ideal(b.table);
    const CotangentPoly alpha =
        CotangentPoly::constant(E.eps1_0) + CotangentPoly::constant(E.eps2.num) * Y(2) +
        CotangentPoly::constant(E.eps3.num) * Y(3);
    const CotangentPoly nf = reduce(alpha, I).dehomogenize();
    for (const auto& [t2, t3] : {std::pair{Rat(1), Rat(2)}, {Rat(-3), Rat(1, 2)}}) {
        // Fiber points of y2^2 = 2 t2 y2, y3^2 = 2 t3 y3, y2 y3 = 0.
        const std::array<std::pair<Rat, Rat>, 3> fiber{{{0, 0}, {2 * t2, 0}, {0, 2 * t3}}};
        std::array<std::array<Rat, 3>, 3> M{};
        for (int j = 1; j <= 3; ++j) {
            const Vec3 v = E.eps2.num * b.table.product(2, j) + E.eps3.num * b.table.product(3, j) +
                           E.eps1_0 * basis_vector(j, D);
            for (int k = 0; k < 3; ++k) M[k][j - 1] = v[k].eval(t2, t3);
        }
        for (const auto& [y2, y3] : fiber) {
            const Rat lambda = nf.coeff({0, 0, 0}).eval(t2, t3) + nf.coeff({0, 1, 0}).eval(t2, t3) * y2 +
                               nf.coeff({0, 0, 1}).eval(t2, t3) * y3;
            auto shifted = M;
            for (int k = 0; k < 3; ++k) shifted[k][k] -= lambda;
            EXPECT_EQ(det3(shifted), Rat(0));
        }
    }
}
