#include <gtest/gtest.h>

#include <chrono>

#include "oracle.hpp"

using namespace bnexplain;

namespace {

std::vector<CausalNetwork> scenario_networks() {
  using namespace scenarios;
  return {coin_bag(),        four_coin(),       vacation_base(),     vacation_refined(),
          disease_unsplit(), disease_split(),   rain_wind_lawn(),    asbestos_causal(),
          asbestos_null(),   storm_barometer(), ep_contrast_mild(),  ep_contrast_sharp()};
}

}  // namespace

TEST(Joint, Examples) {
  auto coin = scenarios::coin_bag();
  EXPECT_NEAR(joint(coin, Assignment{{1, 1}}), 0.009, 1e-15);
  auto ref = scenarios::vacation_refined();
  EXPECT_EQ(joint(ref, Assignment{{1, 0, 3}}), 0.0);
  auto one = NetworkBuilder().variable("X", {"true", "false"}).prior("X", {0.5, 0.5}).build();
  EXPECT_EQ(joint(one, Assignment{{0}}), 0.5);
  EXPECT_THROW(joint(coin, Assignment{{0}}), ValidationError);
}

TEST(Prob, CoinBagExamples) {
  auto coin = scenarios::coin_bag();
  auto tails = make_event(coin, {{"R", "t"}});
  EXPECT_NEAR(prob(coin, tails), 0.108, 1e-12);
  EXPECT_NEAR(prob(coin, make_event(coin, {{"C", "bh"}}), tails), 11.0 / 12.0, 1e-12);
  auto certain = make_event(coin, LabelLiterals{{"R", {"h", "t"}}});
  EXPECT_TRUE(certain.empty());
  EXPECT_EQ(prob(coin, certain), 1.0);
  for (auto* f : {&prob, &prob_ve}) {
    EXPECT_NEAR(f(coin, tails, {}), 0.108, 1e-12);
    EXPECT_NEAR(f(coin, make_event(coin, {{"C", "bh"}}), tails), 11.0 / 12.0, 1e-12);
    EXPECT_NEAR(f(coin, certain, {}), 1.0, 1e-12);
  }
}

TEST(Prob, NullConditioningIsAnError) {
  auto ref = scenarios::vacation_refined();
  auto null = make_event(ref, {{"D", "d2"}, {"H", "h1"}});
  EXPECT_THROW(prob(ref, make_event(ref, {{"S", "s"}}), null), InferenceError);
  EXPECT_THROW(prob_ve(ref, make_event(ref, {{"S", "s"}}), null), InferenceError);
  EXPECT_THROW(mpe(ref, null), InferenceError);
}

TEST(Normalization, JointSumsToOne) {
  oracle::Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    auto net = oracle::random_network(rng, {.min_vars = 2, .max_vars = 12, .max_domain = 2});
    double total = 0;
    for_each_world(net, [&](const Assignment& w) { total += joint(net, w); });
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(Prob, MatchesOracleAndChainRule) {
  oracle::Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    auto net = oracle::random_network(rng);
    auto a = oracle::random_event(rng, net, oracle::uniform(rng, 1, 2), true);
    auto b = oracle::random_event(rng, net, oracle::uniform(rng, 1, 2), true);
    const auto pb = static_cast<double>(oracle::prob(net, b));
    if (pb <= 0) continue;
    EXPECT_NEAR(prob(net, a, b), static_cast<double>(oracle::prob(net, a, b)), 1e-12);
    EXPECT_NEAR(prob(net, a.conjoin(b)), prob(net, a, b) * prob(net, b), 1e-12);
  }
}

TEST(ProbVe, EquivalentToEnumeration) {
  oracle::Rng rng(23);
  for (const auto& net : scenario_networks()) {
    for (int q = 0; q < 20; ++q) {
      auto t = oracle::random_event(rng, net, 1, true);
      auto g = oracle::random_event(rng, net, oracle::uniform(rng, 0, 2));
      if (oracle::prob(net, g) <= 0) continue;
      EXPECT_NEAR(prob_ve(net, t, g), prob(net, t, g), 1e-9);
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    auto net = oracle::random_network(rng, {.min_vars = 2, .max_vars = 10, .max_domain = 3, .max_parents = 3});
    auto t = oracle::random_event(rng, net, oracle::uniform(rng, 1, 3), true);
    auto g = oracle::random_event(rng, net, oracle::uniform(rng, 0, 3), true);
    if (oracle::prob(net, g) <= 0) continue;
    EXPECT_NEAR(prob_ve(net, t, g), prob(net, t, g), 1e-9);
  }
}

TEST(ProbVe, LongChainIsTractable) {
  oracle::Rng rng(24);
  auto net = oracle::chain(30, rng);
  const auto start = std::chrono::steady_clock::now();
  auto end_a = Event::literal(29, 0);
  auto p = prob_ve(net, end_a, Event::literal(0, 1));
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(1));
  // Cross-check by propagating the two-state marginal along the chain.
  std::vector<double> m{0.0, 1.0};
  for (std::size_t i = 1; i < 30; ++i) {
    const auto& cpt = net.cpt(i);
    m = {m[0] * cpt[0][0] + m[1] * cpt[1][0], m[0] * cpt[0][1] + m[1] * cpt[1][1]};
  }
  EXPECT_NEAR(p, m[0], 1e-12);
  // And against enumeration on a truncated chain.
  std::vector<Variable> vars(net.variables().begin(), net.variables().begin() + 12);
  std::vector<std::vector<std::size_t>> parents;
  std::vector<Cpt> cpts;
  for (std::size_t i = 0; i < 12; ++i) {
    parents.push_back(net.parents(i));
    cpts.push_back(net.cpt(i));
  }
  CausalNetwork truncated(vars, parents, cpts);
  EXPECT_NEAR(prob_ve(truncated, Event::literal(11, 0), Event::literal(0, 1)),
              prob(truncated, Event::literal(11, 0), Event::literal(0, 1)), 1e-12);
}

TEST(Prob, DisjunctionMonotonicity) {
  oracle::Rng rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    auto net = oracle::random_network(rng, {.max_domain = 4});
    auto t = oracle::random_event(rng, net, oracle::uniform(rng, 1, 2), true);
    auto g = oracle::random_event(rng, net, 1);
    if (t.variables() == g.variables() || oracle::prob(net, g) <= 0) continue;
    auto [v, s] = *t.literals().begin();
    auto bigger = t.without({v});
    bigger.require(v, s | ValueSet::single(oracle::uniform(rng, 0, net.variable(v).size() - 1)));
    EXPECT_GE(prob(net, normalized(net, bigger), g) + 1e-12, prob(net, t, g));
  }
}

TEST(Mpe, Examples) {
  auto coin = scenarios::coin_bag();
  auto r = mpe(coin, make_event(coin, {{"R", "t"}}));
  EXPECT_EQ(r.world, (Assignment{{0, 1}}));
  EXPECT_NEAR(r.posterior, 11.0 / 12.0, 1e-12);

  auto base = scenarios::vacation_base();
  EXPECT_EQ(mpe(base, make_event(base, {{"S", "s"}})).world[0], 0u);
  auto ref = scenarios::vacation_refined();
  EXPECT_EQ(mpe(ref, make_event(ref, {{"S", "s"}})).world[0], 1u);
}

TEST(Mpe, DeterministicNetwork) {
  auto net = NetworkBuilder()
                 .variable("A", {"0", "1"})
                 .variable("B", {"0", "1"})
                 .variable("C", {"0", "1", "2"})
                 .edge("A", "B")
                 .edge("B", "C")
                 .prior("A", {0, 1})
                 .cpt("B", {{1, 0}, {0, 1}})
                 .cpt("C", {{0, 0, 1}, {0, 1, 0}})
                 .build();
  auto r = mpe(net, Event::literal(2, 1));
  EXPECT_EQ(r.world, (Assignment{{1, 1, 1}}));
  EXPECT_NEAR(r.posterior, 1.0, 1e-12);
}

TEST(Mpe, TiesBreakLexicographically) {
  auto net = NetworkBuilder()
                 .variable("A", {"x", "y"})
                 .variable("B", {"x", "y"})
                 .prior("A", {0.5, 0.5})
                 .prior("B", {0.5, 0.5})
                 .build();
  EXPECT_EQ(mpe(net, {}).world, (Assignment{{0, 0}}));
  EXPECT_EQ(mpe(net, Event::literal(0, 1)).world, (Assignment{{1, 0}}));
}

TEST(Mpe, MatchesBruteForce) {
  oracle::Rng rng(26);
  for (int trial = 0; trial < 100; ++trial) {
    auto net = oracle::random_network(rng, {.min_vars = 2, .max_vars = 12, .max_domain = 2});
    auto w = oracle::sample(rng, net);
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < net.size(); ++v)
      if (oracle::unit(rng) < 0.3) vars.push_back(v);
    auto ev = oracle::observe(w, vars);
    auto r = mpe(net, ev);
    EXPECT_TRUE(ev.satisfied_by(r.world));
    const auto best = static_cast<double>(oracle::mpe_value(net, ev));
    EXPECT_NEAR(r.posterior, best, 1e-9);
    EXPECT_NEAR(static_cast<double>(oracle::joint(net, r.world.values) / oracle::prob(net, ev)), best, 1e-9);
  }
}
