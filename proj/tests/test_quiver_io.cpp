#include <gtest/gtest.h>

#include "holodet/error.hpp"
#include "holodet/quiver_io.hpp"

using namespace holodet;

TEST(ParseInstance, ExactNumbersAndComplexEntries) {
  auto doc = parse_instance(R"({"p": 2, "ranks": [1, 1],
    "edges": [{"id": "a", "src": 1, "tgt": 2, "weight": 0.1, "matrix": [[[1, "1/3"]]]},
              {"id": "b", "src": 2, "tgt": 1, "weight": "2/3", "matrix": [[-2]]}]})");
  EXPECT_FALSE(doc.has_symbols());
  auto inst = doc.exact();
  EXPECT_EQ(inst.weights[0], GaussianRational(BigRational(1, 10)));
  EXPECT_EQ(inst.weights[1], GaussianRational(BigRational(2, 3)));
  EXPECT_EQ(inst.rep.matrices[0](0, 0), GaussianRational(BigRational(1), BigRational(1, 3)));
  EXPECT_EQ(inst.quiver.src(1), 1);
}

TEST(ParseInstance, SymbolsInOrder) {
  auto doc = parse_instance(R"({"p": 2, "ranks": [1, 1],
    "edges": [{"id": "1", "src": 1, "tgt": 2, "weight": {"sym": "x1"}, "matrix": [[{"sym": "u"}]]},
              {"id": "2", "src": 2, "tgt": 1, "weight": {"sym": "x2"}, "matrix": [[{"sym": "v"}]]}]})");
  ASSERT_EQ(doc.symbols.size(), 4U);
  EXPECT_EQ(doc.symbols.names(), (std::vector<std::string>{"x1", "x2", "u", "v"}));
  EXPECT_THROW(doc.exact(), ValidationError);
}

TEST(ParseInstance, DistributionAndInvolution) {
  auto doc = parse_instance(R"({"p": 2, "ranks": [1, 1],
    "edges": [{"id": "1", "src": 1, "tgt": 2, "weight": 1, "matrix": [[1]]},
              {"id": "2", "src": 2, "tgt": 1, "weight": 1, "matrix": [[1]]}],
    "involution": [["1", "2"]],
    "distribution": {"1": [{"prob": "1/2", "matrix": [[1]]}, {"prob": "1/2", "matrix": [[-1]]}]}})");
  EXPECT_EQ(doc.instance.quiver.inverse_edge(0), 1);
  ASSERT_TRUE(doc.distribution.has_value());
  EXPECT_EQ(doc.distribution->at(0).outcomes.size(), 2U);
}

TEST(ParseInstance, Errors) {
  EXPECT_THROW(parse_instance("{"), ValidationError);
  EXPECT_THROW(parse_instance(R"({"p": 2})"), ValidationError);
  EXPECT_THROW(parse_instance(R"({"p": 2, "ranks": [1, 1],
    "edges": [{"id": "1", "src": 1, "tgt": 1, "weight": 1, "matrix": [[1]]}]})"),
               ValidationError);
  EXPECT_THROW(parse_instance(R"({"p": 2, "ranks": [1, 1],
    "edges": [{"id": "1", "src": 1, "tgt": 2, "weight": "x/y", "matrix": [[1]]}]})"),
               ValidationError);
  EXPECT_THROW(parse_instance(R"({"p": 2, "ranks": [2, 1],
    "edges": [{"id": "1", "src": 1, "tgt": 2, "weight": 1, "matrix": [[1, 2]]}]})"),
               ValidationError);
  EXPECT_THROW(read_instance_file("/nonexistent/file.json"), ValidationError);
}

TEST(InstanceJson, RoundTripsExamples) {
  for (const auto& name : example_names()) {
    auto inst = gen_example(name);
    auto back = parse_instance(instance_to_json(inst)).exact();
    EXPECT_EQ(back.rep.matrices, inst.rep.matrices) << name;
    EXPECT_EQ(back.weights, inst.weights) << name;
    EXPECT_EQ(back.rep.ranks, inst.rep.ranks) << name;
  }
}

TEST(InstanceJson, SymbolicRoundTrip) {
  auto doc = read_instance_file(std::string(HOLODET_TEST_DATA) + "/two_cycle_symbolic.json");
  auto text = instance_to_json(doc.instance, doc.symbols);
  auto again = parse_instance(text);
  EXPECT_EQ(again.symbols.names(), doc.symbols.names());
  EXPECT_EQ(again.instance.weights, doc.instance.weights);
}
