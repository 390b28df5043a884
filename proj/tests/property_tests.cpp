// Randomized identities. Seeds are fixed so failures reproduce.

#include <gtest/gtest.h>

#include "fmankit/catalog.hpp"
#include "fmankit/io.hpp"
#include "fmankit/pde.hpp"
#include "fmankit/spectrum.hpp"
#include "generators.hpp"

using namespace fmankit;
using testgen::Gen;

namespace {

constexpr int D = 8;

}  // namespace

TEST(SeriesProperties, RingAxioms) {
    Gen g(11);
    for (int n = 0; n < 50; ++n) {
        const Series2 a = g.poly(5, D), b = g.poly(5, D), c = g.poly(5, D);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_TRUE((a - a).is_zero());
    }
}

TEST(SeriesProperties, InverseOfUnits) {
    Gen g(12);
    for (int n = 0; n < 50; ++n) {
        const Series2 u = g.unit(4, D);
        EXPECT_EQ(u * u.invert(), Series2::constant(1, D));
    }
}

TEST(SeriesProperties, MixedPartialsAndAntiderivatives) {
    Gen g(13);
    for (int n = 0; n < 50; ++n) {
        const Series2 a = g.poly(7, D);
        EXPECT_EQ(a.deriv(2).deriv(3), a.deriv(3).deriv(2));
        EXPECT_EQ(a.integrate(2).deriv(2), a);
        EXPECT_EQ(a.integrate(3).deriv(3), a);
    }
}

TEST(SeriesProperties, CharpolyKillsBranches) {
    Gen g(14);
    for (int n = 0; n < 30; ++n) {
        const int k = g.uniform(2, 3);
        // Monomial branches c t2^(num/k) plus a t3-dependent series part.
        ExtSeries f = ExtSeries::t2_power(g.uniform(1, 7), k, D);
        f = ExtSeries::from_series(k, Series2::constant(g.nonzero_rat(), D)) * f;
        f += ExtSeries::from_series(k, g.poly(3, D));
        const CharPoly c = charpoly_mult(f);
        EXPECT_TRUE(c.evaluate(f).is_zero());
        if (k == 2) EXPECT_TRUE(c.evaluate(f.conjugate()).is_zero());
        for (const auto& e : c.e) EXPECT_EQ(e.truncation(), D);
    }
}

TEST(TableProperties, ClosedFormMatchesBrackets) {
    Gen g(21);
    int f_true = 0, f_false = 0;
    for (int n = 0; n < 60; ++n) {
        MultTable t = n % 3 == 0 ? g.trivial_case_table(3, D) : g.associative_table(2, D);
        const FVerdict a = is_f_manifold_closed_form(t);
        const BracketVerdict b = f_condition_bracket(spectrum_ideal(t));
        EXPECT_EQ(a.f_manifold, b.closed) << n;
        (a.f_manifold ? f_true : f_false)++;
    }
    EXPECT_GT(f_true, 0);
    EXPECT_GT(f_false, 0);
}

TEST(TableProperties, BracketDecompositionIsAnIdentity) {
    Gen g(22);
    for (int n = 0; n < 30; ++n) {
        AbcFrame f;
        for (Series2* s : {&f.a1, &f.a2, &f.a3, &f.b1, &f.b2, &f.b3, &f.c1, &f.c2, &f.c3}) *s = g.poly(3, D);
        const YGenerators Y = y_generators(f);
        const YBracketDecomposition d = y_bracket_decomposition(f);
        EXPECT_EQ(poisson(Y.Y23, Y.Y22), d.b22_23);
        EXPECT_EQ(poisson(Y.Y23, Y.Y33), d.b33_23);
        EXPECT_EQ(poisson(Y.Y33, Y.Y22), d.b22_33);
    }
}

TEST(TableProperties, PointwiseImplications) {
    // a3(t) != 0 and R1(t) = R3(t) = 0 force R2(t) = 0; dually with c2 and R1.
    Gen g(23);
    int hits = 0;
    for (int n = 0; n < 60; ++n) {
        const MultTable t = g.associative_table(2, D);
        const AbcFrame f = table_to_abc(t);
        const RInvariants r = r_invariants(t);
        for (int a = -2; a <= 2; ++a)
            for (int b = -2; b <= 2; ++b) {
                const Rat x(a), y(b);
                const bool r1 = sgn(r.R1.eval(x, y)) == 0, r2 = sgn(r.R2.eval(x, y)) == 0,
                           r3 = sgn(r.R3.eval(x, y)) == 0;
                if (sgn(f.a3.eval(x, y)) != 0 && r1 && r3) {
                    ++hits;
                    EXPECT_TRUE(r2);
                }
                if (sgn(f.c2.eval(x, y)) != 0 && r2 && r3) {
                    ++hits;
                    EXPECT_TRUE(r1);
                }
            }
    }
    EXPECT_GT(hits, 0);
}

TEST(TableProperties, PsiCubicRelation) {
    Gen g(24);
    for (int n = 0; n < 30; ++n) {
        const MultTable t = g.associative_table(2, D);
        EXPECT_TRUE(is_zero(psi_relation_residual(t, g.poly(2, D), g.poly(2, D))));
    }
}

TEST(TableProperties, GhRoundTrip) {
    Gen g(25);
    for (int n = 0; n < 30; ++n) {
        const GhFrame gh = g.gh(3, D);
        const GhFrame back = table_to_gh(gh_to_table(gh));
        EXPECT_EQ(back.g2, gh.g2);
        EXPECT_EQ(back.g1, gh.g1);
        EXPECT_EQ(back.g0, gh.g0);
        EXPECT_EQ(back.h2, gh.h2);
        EXPECT_EQ(back.h1, gh.h1);
        EXPECT_EQ(back.h0, gh.h0);
    }
}

TEST(SpectrumProperties, ReduceIsIdempotentAndLinear) {
    Gen g(31);
    for (int n = 0; n < 20; ++n) {
        const SpectrumIdeal I = spectrum_ideal(g.associative_table(2, D));
        auto random_poly = [&] {
            CotangentPoly p(D);
            for (int e2 = 0; e2 <= 3; ++e2)
                for (int e3 = 0; e2 + e3 <= 3; ++e3)
                    if (g.coin(0.4)) p += CotangentPoly::monomial(g.poly(2, D), {0, e2, e3});
            return p;
        };
        const CotangentPoly p = random_poly(), q = random_poly();
        const Series2 s = g.poly(2, D);
        const CotangentPoly rp = reduce(p, I);
        EXPECT_EQ(reduce(rp, I), rp);
        EXPECT_EQ(reduce(p + s * q, I), rp + s * reduce(q, I));
        EXPECT_EQ(rp, reduce(p, I, ReductionOrder::Y2First));
    }
}

TEST(EulerProperties, ConstraintMatchesResidual) {
    Gen g(41);
    for (int n = 0; n < 40; ++n) {
        FamilySpec spec;
        const int pick = n % 5;
        spec.family = pick == 0   ? Family::Thm5_4a
                      : pick == 1 ? Family::Thm5_6
                      : pick == 2 ? Family::Lem5_8
                      : pick == 3 ? Family::Lem6_4
                                  : Family::Thm5_2;
        spec.p = g.uniform(2, 4);
        spec.p2 = g.uniform(2, 3);
        spec.p3 = g.uniform(2, 3);
        if (pick == 4) spec.series["b2"] = g.in_max_ideal(2, kParamTruncation).mul_t2_pow(1);
        const BuildResult b = build(spec, D);
        ASSERT_FALSE(b.euler.empty());
        const VectorField& E = b.euler[0];
        EXPECT_TRUE(euler_constraint_check(spec, E, D)) << family_name(spec.family) << " p=" << spec.p;
        // A random admissible-looking perturbation: both verdicts must agree.
        VectorField F = E;
        if (g.coin()) F.eps2 = F.eps2 + Mero(g.in_max_ideal(2, D));
        if (g.coin()) F.eps3 = F.eps3 + Mero(g.in_max_ideal(2, D));
        if (g.coin()) F.eps1_0 += g.poly(1, D);
        EXPECT_EQ(euler_constraint_check(spec, F, D), lie_residual(b.table, F).is_zero())
            << family_name(spec.family) << " p=" << spec.p;
    }
}

TEST(EulerProperties, ShiftKeepsEuler) {
    Gen g(42);
    for (int n = 0; n < 15; ++n) {
        const FamilySpec spec = g.family_spec();
        const BuildResult b = build(spec, D);
        for (const auto& E : b.euler)
            EXPECT_TRUE(lie_residual(b.table, shift_by_unit(E, g.rat())).is_zero()) << family_name(spec.family);
    }
}

TEST(CatalogProperties, RandomParametersStaySound) {
    Gen g(51);
    for (int n = 0; n < 30; ++n) {
        const FamilySpec spec = g.family_spec();
        const BuildResult b = build(spec, D);
        const std::string name = family_name(spec.family);
        EXPECT_TRUE(is_associative(b.table)) << name;
        EXPECT_TRUE(is_f_manifold_closed_form(b.table).f_manifold) << name;
        for (const auto& E : b.euler) EXPECT_TRUE(lie_residual(b.table, E).is_zero()) << name;
        EXPECT_EQ(classify_at(b.table, 0, 0), b.meta.origin_type) << name;
    }
}

TEST(PdeProperties, SolutionsAreFManifolds) {
    Gen g(61);
    for (int n = 0; n < 20; ++n) {
        const PdeSolution s = solve(g.initial_data(3, D, g.uniform(0, D - 1)));
        EXPECT_TRUE(gh_bracket_residuals(s.gh).f_manifold()) << n;
    }
}

TEST(IoProperties, DocumentRoundTrip) {
    Gen g(71);
    for (int n = 0; n < 30; ++n) {
        const TableDocument doc =
            n % 2 ? TableDocument::from_table(g.associative_table(3, D)) : TableDocument::from_gh(g.gh(3, D));
        const std::string text = serialize(doc);
        EXPECT_EQ(serialize(parse_table_document(text)), text);
        const VectorField E = VectorField::make(g.rat(), g.poly(3, D), Mero(g.poly(3, D), g.uniform(0, 3)),
                                                Mero(g.poly(3, D), g.uniform(0, 3)));
        const std::string ft = serialize(E);
        EXPECT_EQ(serialize(parse_field_document(ft)), ft);
    }
}
