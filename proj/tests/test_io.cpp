#include <gtest/gtest.h>

#include "treelabel/cyclic.hpp"
#include "treelabel/io.hpp"
#include "treelabel/solver.hpp"

using namespace treelabel;

TEST(Json, LabellingRoundTrip) {
  const RootedTree t = build_family({Family::RegularSubtree, 2, 2});
  const Construction c = label_cyclic_h11(t, 2);
  const io::json j = io::construction_json(c);
  EXPECT_EQ(j.at("schema"), io::kSchema);
  EXPECT_EQ(j.at("mode"), "cyclic");
  EXPECT_EQ(j.at("source"), c.source);
  EXPECT_EQ(io::parse_labelling(j.dump()), c.labelling);
  const auto cert = io::parse_certificate(j);
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->intervals, c.certificate.intervals);
  EXPECT_TRUE(certificate_holds(t, c.labelling, *cert));
}

TEST(Json, IsolatedVertexIntervalIsNull) {
  const io::json j = io::certificate_json(EleganceCertificate{{std::nullopt}}, 1);
  EXPECT_TRUE(j.at("intervals")[0].is_null());
}

TEST(Json, ParseErrors) {
  EXPECT_THROW(io::parse_labelling("not json"), ParseError);
  EXPECT_THROW(io::parse_labelling(R"({"mode":"linear","ell":3})"), ParseError);
  EXPECT_THROW(io::parse_labelling(R"({"mode":"spiral","ell":3,"labels":[0]})"), ParseError);
  EXPECT_THROW(io::parse_labelling(R"({"mode":"linear","ell":3,"labels":[-1]})"), ParseError);
  EXPECT_THROW(io::parse_labelling(R"({"schema":"other/9","mode":"linear","ell":3,"labels":[0]})"),
               ParseError);
  EXPECT_NO_THROW(io::parse_labelling(R"({"mode":"linear","ell":3,"labels":[0,3]})"));
}

TEST(Json, BoundsRoundTrip) {
  for (const BoundsReport &r :
       {lambda_bounds(build_family({Family::CompleteMary, 2, 2}), 2, 1),
        sigma_bounds(build_family({Family::RegularSubtree, 2, 2}), 3, 1),
        sigma_bounds(build_family({Family::CompleteMary, 2, 2}), 2, 2)}) {
    const BoundsReport back = io::parse_bounds(io::json::parse(io::bounds_json(r).dump()));
    EXPECT_EQ(back.quantity, r.quantity);
    EXPECT_EQ(back.applicable, r.applicable);
    EXPECT_EQ(back.lower, r.lower);
    EXPECT_EQ(back.upper, r.upper);
    EXPECT_EQ(back.exact, r.exact);
    EXPECT_EQ(back.sources, r.sources);
    EXPECT_EQ(back.reason, r.reason);
  }
}

TEST(Json, OracleRoundTrip) {
  const OracleResult r = exact_sigma(build_family({Family::CompleteMary, 2, 2}), 2, 1, 1);
  const OracleResult back = io::parse_oracle(io::json::parse(io::oracle_json(r).dump()));
  EXPECT_EQ(back.quantity, Quantity::Sigma);
  EXPECT_EQ(back.value, r.value);
  EXPECT_EQ(back.lower, r.lower);
  EXPECT_EQ(back.nodes_explored, r.nodes_explored);
  EXPECT_EQ(back.budget_hit, r.budget_hit);
  EXPECT_EQ(back.minimality_searched, r.minimality_searched);
  EXPECT_EQ(back.witness, r.witness);
}

TEST(Json, Stats) {
  const io::json j = io::stats_json(tree_stats(make_path(4)));
  EXPECT_EQ(j.at("n"), 4);
  EXPECT_EQ(j.at("delta"), 2);
  EXPECT_EQ(j.at("delta2"), 4);
  EXPECT_EQ(j.at("diam"), 3);
}

TEST(Dot, EdgesAndLabels) {
  const RootedTree t = make_path(3);
  const Labelling f{Mode::Linear, 4, {0, 4, 1}};
  EXPECT_EQ(io::to_dot(t, &f), "graph tree {\n  0 [label=\"0: 0\"];\n  1 [label=\"1: 4\"];\n"
                               "  2 [label=\"2: 1\"];\n  0 -- 1;\n  1 -- 2;\n}\n");
  EXPECT_EQ(io::to_dot(t), "graph tree {\n  0;\n  1;\n  2;\n  0 -- 1;\n  1 -- 2;\n}\n");
}
