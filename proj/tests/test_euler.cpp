#include <gtest/gtest.h>

#include "fmankit/catalog.hpp"
#include "fmankit/euler.hpp"

using namespace fmankit;

namespace {

constexpr int D = 8;

Series2 S(const std::string& text) { return Series2::parse(text, D); }

FamilySpec spec_of(Family f, std::initializer_list<std::pair<const char*, const char*>> params = {}) {
    FamilySpec spec;
    spec.family = f;
    for (const auto& [k, v] : params) spec.set_param(k, v);
    return spec;
}

VectorField field(const std::string& e1, const std::string& e2, const std::string& e3, Rat c = 1) {
    return VectorField::make(c, S(e1), Mero(S(e2)), Mero(S(e3)));
}

// E = (t1 + c1) d1 + eps2 d2 + (t3 (2 d2 eps2 - 1) + eps30) d3.
VectorField field_5_4a(const Series2& eps2, const Series2& eps30) {
    const Series2 t3 = Series2::t3(D);
    return VectorField::make(1, Series2(D), Mero(eps2), Mero(t3 * (eps2.deriv(2) * Rat(2) - Series2::constant(1, D)) + eps30));
}

// eps2 = t2 (1 - t2^(p-2) eps30) / p,  eps3 = eps30 + t3 (2 - p + (2p - 2) t2^(p-2) eps30) / p.
VectorField field_5_6(int p, const Series2& eps30) {
    const Series2 t2 = Series2::t2(D), t3 = Series2::t3(D);
    const Series2 u = eps30.mul_t2_pow(p - 2);
    return VectorField::make(1, Series2(D), Mero(t2 * (Series2::constant(1, D) - u) / Rat(p)),
                             Mero(eps30 + t3 * (Series2::constant(2 - p, D) + u * Rat(2 * p - 2)) / Rat(p)));
}

}  // namespace

TEST(LieResidual, Lem6_5) {
    const MultTable t = build(spec_of(Family::Lem6_5), D).table;
    EXPECT_TRUE(lie_residual(t, field("0", "1/2*t2", "1/2*t3")).is_zero());
    EXPECT_FALSE(lie_residual(t, field("0", "1/2*t2", "1/3*t3")).is_zero());
}

TEST(LieResidual, Thm5_6) {
    const MultTable t = build(spec_of(Family::Thm5_6, {{"p", "2"}}), D).table;
    const VectorField E = field_5_6(2, Series2(D));
    EXPECT_TRUE(lie_residual(t, E).is_zero());
    VectorField bad = E;
    bad.eps2 = bad.eps2 + Mero(S("t2^2"));
    const LieResidual r = lie_residual(t, bad);
    EXPECT_FALSE(r.is_zero());
    EXPECT_FALSE(r.first_nonzero().empty());
}

TEST(LieResidual, UnitComponentForcesWeightOne) {
    const MultTable t = build(spec_of(Family::Lem6_5), D).table;
    const LieResidual r = lie_residual(t, field("0", "1/2*t2", "1/2*t3", 2));
    ASSERT_FALSE(r.is_zero());
    EXPECT_EQ(r.entries.front().i, 1);
    EXPECT_EQ(r.entries.front().j, 1);
    EXPECT_FALSE(is_zero(r.entries.front().value));
}

TEST(LieResidual, NeedsAssociativity) {
    MultTable t = build(spec_of(Family::Lem6_5), D).table;
    t.c2 += S("1");
    EXPECT_THROW(lie_residual(t, field("0", "t2", "t3")), NotAssociative);
}

TEST(LieResidual, PolesAreCleared) {
    // eps2 = 1/t2 in the first family: the field has poles, the residual still vanishes.
    const MultTable t = build(spec_of(Family::Thm5_4a), D).table;
    const VectorField E = VectorField::make(1, Series2(D), Mero(S("1"), 1), Mero(S("-2*t3 - t2^2*t3"), 2));
    EXPECT_EQ(E.max_pole(), 2);
    EXPECT_TRUE(lie_residual(t, E).is_zero());
    VectorField F = E;
    F.eps2 = F.eps2 + Mero(S("1"), 2);
    const LieResidual r = lie_residual(t, F);
    EXPECT_FALSE(r.is_zero());
    EXPECT_GT(r.cleared_by, 0);
}

TEST(Constraint, Thm5_2EmptyWhenB2Zero) {
    const FamilySpec s = spec_of(Family::Thm5_2, {{"b2", "0"}});
    const MultTable t = build(s, D).table;
    for (const auto& [e2, e3] : {std::pair{"1 + t3^2", "t2*t3 - 4"}, {"t2^3", "0"}, {"-2", "t3 + t2"}}) {
        const VectorField E = field("3", e2, e3);
        EXPECT_TRUE(euler_constraint_check(s, E, D));
        EXPECT_TRUE(lie_residual(t, E).is_zero());
    }
}

TEST(Constraint, Thm5_4aRegular) {
    const FamilySpec s = spec_of(Family::Thm5_4a);
    const MultTable t = build(s, D).table;
    const VectorField E = field_5_4a(S("1"), Series2(D));
    EXPECT_TRUE(euler_constraint_check(s, E, D));
    EXPECT_TRUE(lie_residual(t, E).is_zero());
    EXPECT_TRUE(regular_at(t, E, 0, 0));
    const VectorField Z = field_5_4a(S("t2 - t2^2"), S("t2"));
    EXPECT_TRUE(lie_residual(t, Z).is_zero());
    EXPECT_FALSE(regular_at(t, Z, 0, 0));
}

TEST(Constraint, Lem6_4Weights) {
    const FamilySpec s = spec_of(Family::Lem6_4, {{"p2", "3"}, {"p3", "2"}});
    const MultTable t = build(s, D).table;
    const VectorField E = field("7", "1/3*t2", "1/2*t3");
    EXPECT_TRUE(euler_constraint_check(s, E, D));
    EXPECT_TRUE(lie_residual(t, E).is_zero());
    const VectorField F = field("7", "1/2*t2", "1/2*t3");
    EXPECT_FALSE(euler_constraint_check(s, F, D));
    EXPECT_FALSE(lie_residual(t, F).is_zero());
}

TEST(ShiftByUnit, Identities) {
    const BuildResult b = build(spec_of(Family::Ex6_2_H3), D);
    const VectorField& E = b.euler.at(0);
    const VectorField E0 = shift_by_unit(E, 0);
    EXPECT_EQ(E0.eps1_0, E.eps1_0);
    EXPECT_TRUE(lie_residual(b.table, shift_by_unit(E, 5)).is_zero());
    const VectorField back = shift_by_unit(shift_by_unit(E, Rat(3, 7)), Rat(-3, 7));
    EXPECT_EQ(back.eps1_0, E.eps1_0);
    EXPECT_EQ(back.c, E.c);
}

TEST(Symmetry, DifferenceOfEulerFields) {
    const MultTable t = build(spec_of(Family::Thm5_4a), D).table;
    const VectorField a = field_5_4a(S("1 + t2"), S("t2^2"));
    const VectorField b = field_5_4a(S("2 - t2^3"), S("-1"));
    ASSERT_TRUE(lie_residual(t, a).is_zero());
    ASSERT_TRUE(lie_residual(t, b).is_zero());
    EXPECT_TRUE(symmetry_residual(t, a - b).is_zero());

    const MultTable u = build(spec_of(Family::Thm5_6, {{"p", "3"}}), D).table;
    const VectorField c = field_5_6(3, S("1 + t2"));
    const VectorField d = field_5_6(3, S("t2^2 - 2"));
    ASSERT_TRUE(lie_residual(u, c).is_zero());
    ASSERT_TRUE(lie_residual(u, d).is_zero());
    EXPECT_TRUE(symmetry_residual(u, c - d).is_zero());
}

TEST(Regularity, Q1PointNeverRegular) {
    const BuildResult b = build(spec_of(Family::Lem5_8, {{"p", "2"}}), D);
    ASSERT_EQ(classify_at(b.table, 0, 0), AlgebraType::Q1);
    EXPECT_FALSE(regular_at(b.table, b.euler.at(0), 0, 0));
    EXPECT_FALSE(regular_at(b.table, field("1", "1", "1"), 0, 0));
}

TEST(Regularity, PoleAtPoint) {
    const MultTable t = build(spec_of(Family::Thm5_4a), D).table;
    const VectorField E = VectorField::make(1, Series2(D), Mero(S("1"), 1), Mero(S("-2*t3 - t2^2*t3"), 2));
    EXPECT_THROW(regular_at(t, E, 0, 0), PoleAtPoint);
    EXPECT_NO_THROW(regular_at(t, E, 1, 0));
}

TEST(Mero, CanonicalPole) {
    const Mero m(S("t2^2 + t2^3*t3"), 3);
    const Mero c = m.canonical();
    EXPECT_EQ(c.pole, 1);
    EXPECT_EQ(c.num, S("1 + t2*t3"));
    EXPECT_EQ(m.eval(2, 1), Rat(3, 2));
}
