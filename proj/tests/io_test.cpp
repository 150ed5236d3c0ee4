#include <gtest/gtest.h>

#include "oracle.hpp"

using namespace bnexplain;

namespace {

const std::filesystem::path data = BNEXPLAIN_DATA_DIR;

template <class F>
std::string message_of(F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ParseNetwork, CoinBagFixture) {
  auto net = parse_network(read_file(data / "coin-bag.net.json"));
  EXPECT_EQ(net.size(), 2u);
  EXPECT_EQ(net.edge_count(), 1u);
  EXPECT_EQ(net, scenarios::coin_bag());
}

TEST(ParseNetwork, InvalidFixtures) {
  auto dup = message_of([] { parse_network(read_file(data / "invalid/duplicate-variable.net.json")); });
  EXPECT_NE(dup.find("duplicate variable"), std::string::npos) << dup;
  auto sum = message_of([] { parse_network(read_file(data / "invalid/row-sum.net.json")); });
  EXPECT_NE(sum.find("0.99"), std::string::npos) << sum;
  auto cyc = message_of([] { parse_network(read_file(data / "invalid/cycle.net.json")); });
  EXPECT_NE(cyc.find("cycle"), std::string::npos) << cyc;
  EXPECT_THROW(parse_network(read_file(data / "invalid/row-sum.net.json")), ValidationError);
}

TEST(ParseNetwork, SyntaxErrorCarriesPosition) {
  try {
    parse_network(read_file(data / "invalid/syntax.net.json"));
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 39u);
    EXPECT_EQ(std::string(e.what()).rfind("line 3, column 39: ", 0), 0u) << e.what();
  }
}

TEST(ParseNetwork, ShapeErrors) {
  EXPECT_THROW(parse_network("[]"), ValidationError);
  EXPECT_THROW(parse_network(R"({"variables": [{"name": "A", "values": ["x", "y"]}], "edges": [], "cpts": {}})"),
               ValidationError);
  EXPECT_THROW(parse_network(R"({"variables": [{"name": "A", "values": ["x", "y"]}], "edges": [["A", "B"]],
                                 "cpts": {"A": [{"given": [], "p": [0.5, 0.5]}]}})"),
               ValidationError);
  EXPECT_THROW(read_file(data / "no-such-file.json"), ValidationError);
}

TEST(SerializeNetwork, RoundTripsEveryScenarioNetwork) {
  for (const auto& net :
       {scenarios::coin_bag(), scenarios::four_coin(), scenarios::vacation_base(), scenarios::vacation_refined(),
        scenarios::disease_unsplit(), scenarios::disease_split(), scenarios::rain_wind_lawn(),
        scenarios::asbestos_causal(), scenarios::asbestos_null(), scenarios::storm_barometer(),
        scenarios::ep_contrast_mild(), scenarios::ep_contrast_sharp()})
    EXPECT_EQ(parse_network(serialize_network(net)), net);
}

TEST(SerializeNetwork, RoundTripsRandomNetworks) {
  oracle::Rng rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    auto net = oracle::random_network(rng);
    EXPECT_EQ(parse_network(serialize_network(net)), net);
  }
}

TEST(ParseCase, CoinBagFixture) {
  auto c = load_case(data / "coin-bag.case.json");
  EXPECT_EQ(c.explanandum, make_event(c.state.reference(), {{"R", "t"}}));
  EXPECT_EQ(c.state.observations(), c.explanandum);
  EXPECT_EQ(c.options.max_conjuncts, 1u);
  EXPECT_FALSE(c.options.include_mechanism_conjunct);
}

TEST(ParseCase, MixtureWithFileReferences) {
  auto c = load_case(data / "asbestos-mixture.case.json");
  ASSERT_EQ(c.state.structures().size(), 2u);
  EXPECT_EQ(c.state.structures()[0].weight, 0.5);
  EXPECT_EQ(c.state.structures()[0].network, scenarios::asbestos_causal());
}

TEST(ParseCase, InlineNetworkAndOptions) {
  const std::string text = R"({
    "network": )" + serialize_network(scenarios::four_coin()) +
                           R"(,
    "observations": {"T1": "h"},
    "explanandum": {"T1": "h"},
    "options": {"allow_value_sets": true, "require_raising": true, "max_conjuncts": 3, "epsilon": 1e-6}
  })";
  auto c = resolve(parse_case(text));
  EXPECT_TRUE(c.options.allow_value_sets);
  EXPECT_TRUE(c.options.require_raising);
  EXPECT_EQ(c.options.max_conjuncts, 3u);
  EXPECT_EQ(c.epsilon, 1e-6);
}

TEST(ParseCase, Errors) {
  auto unobserved = message_of([] { load_case(data / "invalid/unobserved-explanandum.case.json"); });
  EXPECT_NE(unobserved.find("among the observations"), std::string::npos) << unobserved;
  auto null_obs = message_of([] { load_case(data / "invalid/null-observation.case.json"); });
  EXPECT_NE(null_obs.find("probability zero"), std::string::npos) << null_obs;
  const auto coin = serialize_network(scenarios::coin_bag());
  EXPECT_THROW(parse_case(R"({"explanandum": {"R": "t"}})"), ValidationError);
  EXPECT_THROW(resolve(parse_case(R"({"network": )" + coin + R"(, "observations": {"R": "x"},
                                       "explanandum": {"R": "x"}})")),
               ValidationError);
  EXPECT_THROW(resolve(parse_case(R"({"network": )" + coin + R"(, "observations": {"R": "t"},
                                       "explanandum": {}})")),
               ValidationError);
  EXPECT_THROW(parse_case(R"({"network": )" + coin + R"(, "explanandum": {"R": "t"},
                              "options": {"max_conjuncts": 0}})"),
               ValidationError);
}
