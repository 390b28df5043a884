#include <gtest/gtest.h>

#include "fmankit/catalog.hpp"
#include "fmankit/io.hpp"

using namespace fmankit;

namespace {

constexpr int D = 8;

Series2 S(const std::string& text) { return Series2::parse(text, D); }

BuildResult built(Family f) {
    FamilySpec spec;
    spec.family = f;
    return build(spec, D);
}

}  // namespace

TEST(TableDocument, RoundTripIsBitStable) {
    for (Family f : {Family::Lem6_5, Family::Ex6_2_H3, Family::Thm5_6}) {
        const BuildResult b = built(f);
        const TableDocument doc = b.gh ? TableDocument::from_gh(*b.gh) : TableDocument::from_table(b.table);
        const std::string text = serialize(doc);
        const TableDocument back = parse_table_document(text);
        EXPECT_EQ(serialize(back), text);
        EXPECT_EQ(back.frame, doc.frame);
        for (const auto& [name, s] : doc.coefficients) EXPECT_EQ(back.coefficients.at(name), s) << name;
    }
}

TEST(TableDocument, GhFrameRebuildsTable) {
    const BuildResult b = built(Family::Ex6_2_A3);
    const TableDocument doc = parse_table_document(serialize(TableDocument::from_gh(*b.gh)));
    const MultTable t = doc.table();
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) EXPECT_TRUE(is_zero(t.product(i, j) - b.table.product(i, j)));
}

TEST(TableDocument, AbcFrameAndMissingNames) {
    const std::string text = R"({"format": "fmankit-table/1", "truncation": 6, "frame": "abc",
        "coefficients": {"a3": [[0, 0, "1"]], "b2": [[1, 0, "-1/2"], [0, 1, 2]]}})";
    const TableDocument doc = parse_table_document(text);
    EXPECT_EQ(doc.truncation, 6);
    EXPECT_EQ(doc.coefficients.size(), 9u);
    EXPECT_TRUE(doc.coefficients.at("c3").is_zero());
    EXPECT_EQ(doc.coefficients.at("b2"), Series2::parse("-1/2*t2 + 2*t3", 6));
    EXPECT_EQ(table_to_abc(doc.table()).a3, Series2::constant(1, 6));
}

TEST(TableDocument, Rejections) {
    const std::string head = R"({"format": "fmankit-table/1", "truncation": 3, "frame": "tilde", )";
    EXPECT_THROW(parse_table_document(head + R"("coefficients": {"a3": [[3, 0, "1"]]}})"), ParseError);
    EXPECT_THROW(parse_table_document(head + R"("coefficients": {"a9": []}})"), ParseError);
    EXPECT_THROW(parse_table_document(head + R"("coefficients": {"a3": [[0, 0, "1"], [0, 0, "2"]]}})"), ParseError);
    EXPECT_THROW(parse_table_document(head + R"("coefficients": {"a3": [[0, 0, "x"]]}})"), ParseError);
    EXPECT_THROW(parse_table_document(head + R"("coefficients": {}, "extra": 1})"), ParseError);
    EXPECT_THROW(parse_table_document(head + R"("coefficients": {"g2": []}})"), ParseError);
    EXPECT_THROW(parse_table_document(R"({"format": "other", "truncation": 3, "frame": "gh", "coefficients": {}})"),
                 ParseError);
    EXPECT_THROW(parse_table_document("not json"), ParseError);
}

TEST(TableDocument, DegenerateGhFrame) {
    const std::string text = R"({"format": "fmankit-table/1", "truncation": 4, "frame": "gh",
        "coefficients": {"h2": [[1, 0, "1"]]}})";
    EXPECT_THROW(parse_table_document(text).table(), FrameDegenerate);
}

TEST(FieldDocument, RoundTrip) {
    const VectorField E = VectorField::make(1, S("2 - t3"), Mero(S("t2 + t2^2*t3"), 2), Mero(S("-1/3*t3")));
    const std::string text = serialize(E);
    const VectorField back = parse_field_document(text);
    EXPECT_EQ(serialize(back), text);
    EXPECT_EQ(back.eps2.pole, 1);  // canonical
    EXPECT_EQ(back.eps2.num, S("1 + t2*t3"));
    EXPECT_THROW(parse_field_document(R"({"format": "fmankit-field/1", "c": "1", "eps1": [],
        "eps2": {"pole": -1, "series": []}, "eps3": []})"), ParseError);
}

TEST(InitDocument, RoundTrip) {
    InitialData in;
    in.g2 = S("t2");
    in.g1 = S("-1/2*t2^2");
    in.g0 = Series2(D);
    in.h2 = S("1 + t3");
    in.h1 = S("t2*t3");
    in.h0 = Series2(D);
    in.order = 4;
    in.h0_mode = H0Mode::TraceFree;
    const std::string text = serialize(in, D);
    const InitialData back = parse_pde_init(text);
    EXPECT_EQ(serialize(back, D), text);
    EXPECT_EQ(back.order, 4);
    EXPECT_EQ(back.h0_mode, H0Mode::TraceFree);
    EXPECT_EQ(back.h2, in.h2);
}
