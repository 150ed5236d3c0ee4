#pragma once

// Built-in worked examples. Each scenario builds its networks in memory,
// runs the pipeline and checks a fixed list of expected facts.
//
// Parameters not fixed by the examples themselves (marked "chosen") were
// picked once and are frozen here and in data/.

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bnexplain/belief.hpp"
#include "bnexplain/builder.hpp"
#include "bnexplain/epistemic.hpp"
#include "bnexplain/explain.hpp"
#include "bnexplain/inference.hpp"
#include "bnexplain/rank.hpp"
#include "bnexplain/report.hpp"

namespace bnexplain::scenarios {

// Bag of coins: 99% biased 9:1 towards heads, 1% biased 9:1 towards tails.
inline CausalNetwork coin_bag() {
  return NetworkBuilder()
      .variable("C", {"bh", "bt"})
      .variable("R", {"h", "t"})
      .edge("C", "R")
      .prior("C", {0.99, 0.01})
      .cpt("R", {{0.9, 0.1}, {0.1, 0.9}})
      .build();
}

// One of four coins picked uniformly and tossed three times; C1, C2 land
// heads with 0.9 and C3, C4 with 0.1 (chosen).
inline CausalNetwork four_coin() {
  NetworkBuilder b;
  b.variable("C", {"C1", "C2", "C3", "C4"}).prior("C", {0.25, 0.25, 0.25, 0.25});
  for (const char* t : {"T1", "T2", "T3"}) {
    b.variable(t, {"h", "t"}).edge("C", t);
    b.cpt(t, {{0.9, 0.1}, {0.9, 0.1}, {0.1, 0.9}, {0.1, 0.9}});
  }
  return b.build();
}

// Symptom S with Pr(d1 | s) = 0.8, Pr(d2 | s) = 0.2. Prior and
// likelihoods are chosen to give those posteriors.
inline CausalNetwork vacation_base() {
  return NetworkBuilder()
      .variable("D", {"d1", "d2"})
      .variable("S", {"s", "no_s"})
      .edge("D", "S")
      .prior("D", {0.5, 0.5})
      .cpt("S", {{0.4, 0.6}, {0.1, 0.9}})
      .build();
}

// Adds next year's holiday: one of eight equally likely plans when
// healthy (d1), none otherwise.
inline CausalNetwork vacation_refined() {
  const double e = 1.0 / 8.0;
  return NetworkBuilder()
      .variable("D", {"d1", "d2"})
      .variable("S", {"s", "no_s"})
      .variable("H", {"none", "h1", "h2", "h3", "h4", "h5", "h6", "h7", "h8"})
      .edge("D", "S")
      .edge("D", "H")
      .prior("D", {0.5, 0.5})
      .cpt("S", {{0.4, 0.6}, {0.1, 0.9}})
      .cpt("H", {{0, e, e, e, e, e, e, e, e}, {1, 0, 0, 0, 0, 0, 0, 0, 0}})
      .build();
}

// Mutually exclusive diagnoses before splitting d1: posteriors given s are
// none 0.2, d1 0.5, d2 0.3 (chosen).
inline CausalNetwork disease_unsplit() {
  return NetworkBuilder()
      .variable("D", {"none", "d1", "d2"})
      .variable("S", {"s", "no_s"})
      .edge("D", "S")
      .prior("D", {0.25, 0.5, 0.25})
      .cpt("S", {{0.2, 0.8}, {0.25, 0.75}, {0.3, 0.7}})
      .build();
}

// d1 split into d1a and d1b: posteriors 0.2 / 0.25 / 0.25 / 0.3.
inline CausalNetwork disease_split() {
  return NetworkBuilder()
      .variable("D", {"none", "d1a", "d1b", "d2"})
      .variable("S", {"s", "no_s"})
      .edge("D", "S")
      .prior("D", {0.25, 0.25, 0.25, 0.25})
      .cpt("S", {{0.2, 0.8}, {0.25, 0.75}, {0.25, 0.75}, {0.3, 0.7}})
      .build();
}

// Sheltered lawn: wet mostly when it rains and is windy (chosen values).
inline CausalNetwork rain_wind_lawn() {
  return NetworkBuilder()
      .variable("Rain", {"true", "false"})
      .variable("Wind", {"true", "false"})
      .variable("Wet", {"true", "false"})
      .edge("Rain", "Wet")
      .edge("Wind", "Wet")
      .prior("Rain", {0.3, 0.7})
      .prior("Wind", {0.2, 0.8})
      .cpt("Wet", {{0.9, 0.1}, {0.3, 0.7}, {0.05, 0.95}, {0.05, 0.95}})
      .build();
}

// Structure with the causal edge Asbestos -> Cancer: 70% of exposed develop
// cancer; exposure 0.3 and base rate 0.1 are chosen.
inline CausalNetwork asbestos_causal() {
  return NetworkBuilder()
      .variable("Asbestos", {"no", "yes"})
      .variable("Cancer", {"no", "yes"})
      .edge("Asbestos", "Cancer")
      .prior("Asbestos", {0.7, 0.3})
      .cpt("Cancer", {{0.9, 0.1}, {0.3, 0.7}})
      .build();
}

// Same variables, no causal link.
inline CausalNetwork asbestos_null() {
  return NetworkBuilder()
      .variable("Asbestos", {"no", "yes"})
      .variable("Cancer", {"no", "yes"})
      .prior("Asbestos", {0.7, 0.3})
      .prior("Cancer", {0.9, 0.1})
      .build();
}

inline CausalNetwork storm_barometer() {
  return NetworkBuilder()
      .variable("Storm", {"no", "yes"})
      .variable("Barometer", {"steady", "down"})
      .edge("Storm", "Barometer")
      .prior("Storm", {0.9, 0.1})
      .cpt("Barometer", {{0.8, 0.2}, {0.1, 0.9}})
      .build();
}

// X raises E from 0.500001 to 0.51.
inline CausalNetwork ep_contrast_mild() {
  return NetworkBuilder()
      .variable("X", {"true", "false"})
      .variable("E", {"true", "false"})
      .edge("X", "E")
      .prior("X", {1e-4, 1.0 - 1e-4})
      .cpt("E", {{0.51, 0.49}, {0.5, 0.5}})
      .build();
}

// X raises E from 0.000001 to 0.01.
inline CausalNetwork ep_contrast_sharp() {
  const double px = 5e-5;
  const double q = (1e-6 - px * 0.01) / (1.0 - px);
  return NetworkBuilder()
      .variable("X", {"true", "false"})
      .variable("E", {"true", "false"})
      .edge("X", "E")
      .prior("X", {px, 1.0 - px})
      .cpt("E", {{0.01, 0.99}, {q, 1.0 - q}})
      .build();
}

struct Check {
  std::string what;
  bool passed = false;
  std::string detail;
};

struct ScenarioResult {
  std::string name;
  std::vector<Check> checks;
  std::vector<Report> reports;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }
};

namespace detail {

class Checker {
 public:
  explicit Checker(ScenarioResult& r) : r_(r) {}

  void near(const std::string& what, double got, double want, double tol) {
    std::ostringstream d;
    d.precision(12);
    d << "got " << got << ", want " << want << " +/- " << tol;
    r_.checks.push_back({what, std::abs(got - want) <= tol, d.str()});
  }

  void that(const std::string& what, bool ok, const std::string& detail = "") {
    r_.checks.push_back({what, ok, detail});
  }

  void order(const std::string& what, Order got, Order want) {
    r_.checks.push_back({what, got == want,
                         std::string("got ") + to_string(got) + ", want " + to_string(want)});
  }

 private:
  ScenarioResult& r_;
};

inline const ScoredExplanation* find(const std::vector<ScoredExplanation>& rows, const Event& x2,
                                     bool with_mechanism) {
  for (const auto& r : rows)
    if (r.explanation.conjuncts == x2 && r.explanation.mechanism.has_value() == with_mechanism) return &r;
  return nullptr;
}

inline std::string world_label(const CausalNetwork& net, const Assignment& w) {
  std::string out;
  for (std::size_t v = 0; v < net.size(); ++v)
    out += (v ? "," : "") + net.variable(v).name + "=" + net.variable(v).values[w[v]];
  return out;
}

}  // namespace detail

inline ScenarioResult coin_bag_scenario() {
  ScenarioResult r{"coin-bag", {}, {}};
  detail::Checker check(r);
  const auto net = coin_bag();
  const auto tails = make_event(net, {{"R", "t"}});
  const EpistemicState k(net, tails);
  const auto contracted = contract(k, tails);

  CandidateSpec spec;
  spec.max_conjuncts = 1;
  spec.include_mechanism_conjunct = false;
  const auto rows = rank_all(k, tails, spec);
  r.reports.push_back(make_report(k, tails, rows));

  const auto bh = make_event(net, {{"C", "bh"}});
  const auto bt = make_event(net, {{"C", "bt"}});
  const auto* sbh = detail::find(rows, bh, false);
  const auto* sbt = detail::find(rows, bt, false);
  check.that("exactly two candidates C=bh and C=bt", rows.size() == 2 && sbh && sbt,
             std::to_string(rows.size()) + " candidates");
  if (!sbh || !sbt) return r;

  check.near("Pr(C=bh | R=t) = 11/12", posterior(contracted, tails, {std::nullopt, bh}), 11.0 / 12.0, 1e-9);
  check.near("Pr-(R=t) = 0.108", state_prob(contracted, tails), 0.108, 1e-9);
  check.near("EP(C=bt) = 25/3", sbt->ep_ratio, 25.0 / 3.0, 1e-6);
  check.near("EP(C=bh) = 25/27", sbh->ep_ratio, 25.0 / 27.0, 1e-6);
  check.near("EP-diff(C=bt) = 0.792", sbt->ep_diff, 0.792, 1e-9);
  check.order("C=bt vs C=bh", pair_compare(*sbt, *sbh), Order::incomparable);
  check.that("both candidates on the frontier", sbt->frontier && sbh->frontier);
  check.that("C=bt is a Gardenfors explanation, C=bh is not", sbt->gardenfors && !sbh->gardenfors);
  check.that("posterior ordering prefers C=bh", sbh->posterior > sbt->posterior);
  const auto best = mpe(net, tails);
  check.that("MPE world given R=t is (C=bh, R=t)", best.world == Assignment{{0, 1}},
             detail::world_label(net, best.world));
  check.near("MPE posterior = 11/12", best.posterior, 11.0 / 12.0, 1e-9);
  return r;
}

inline ScenarioResult vacation_refinement_scenario() {
  ScenarioResult r{"vacation-refinement", {}, {}};
  detail::Checker check(r);

  const auto base = vacation_base();
  const auto s_base = make_event(base, {{"S", "s"}});
  const auto before = mpe(base, s_base);
  check.that("before refinement the MPE world contains d1", before.world[0] == 0,
             detail::world_label(base, before.world));
  check.near("before refinement Pr(d1 world | s) = 0.8", before.posterior, 0.8, 1e-9);

  const auto refined = vacation_refined();
  const auto s_ref = make_event(refined, {{"S", "s"}});
  const auto after = mpe(refined, s_ref);
  check.that("after refinement the MPE world contains d2", after.world[0] == 1,
             detail::world_label(refined, after.world));
  check.near("after refinement Pr(d2 world | s) = 0.2", after.posterior, 0.2, 1e-9);
  const double p_s = prob_ve(refined, s_ref);
  bool all_tenth = true;
  for (std::size_t h = 1; h <= 8; ++h)
    all_tenth = all_tenth && std::abs(joint(refined, Assignment{{0, 0, h}}) / p_s - 0.1) <= 1e-9;
  check.that("each (d1, h_i) world has posterior 0.1", all_tenth);
  check.near("Pr(d1 | s) is still 0.8 after refinement",
             prob_ve(refined, make_event(refined, {{"D", "d1"}}), s_ref), 0.8, 1e-9);

  const auto unsplit = disease_unsplit();
  const auto u = mpe(unsplit, make_event(unsplit, {{"S", "s"}}));
  check.that("before splitting d1 the MPE diagnosis is d1", u.world[0] == 1,
             detail::world_label(unsplit, u.world));
  const auto split = disease_split();
  const auto sp = mpe(split, make_event(split, {{"S", "s"}}));
  check.that("after splitting d1 the MPE diagnosis is d2", sp.world[0] == 3,
             detail::world_label(split, sp.world));
  check.near("Pr(d2 world | s) = 0.3 after the split", sp.posterior, 0.3, 1e-9);
  return r;
}

inline ScenarioResult four_coin_scenario() {
  ScenarioResult r{"four-coin", {}, {}};
  detail::Checker check(r);
  const auto net = four_coin();
  const auto heads = make_event(net, {{"T1", "h"}, {"T2", "h"}, {"T3", "h"}});
  const EpistemicState k(net, heads);
  check.that("contracting all three tosses empties the observations", contract(k, heads).observations().empty());

  CandidateSpec spec;
  spec.max_conjuncts = 1;
  spec.allow_value_sets = true;
  spec.include_mechanism_conjunct = false;
  const auto rows = rank_all(k, heads, spec);
  r.reports.push_back(make_report(k, heads, rows));
  check.that("14 value-set candidates on C", rows.size() == 14, std::to_string(rows.size()));

  const auto c1 = make_event(net, LabelLiterals{{"C", {"C1"}}});
  const auto c2 = make_event(net, LabelLiterals{{"C", {"C2"}}});
  const auto x1 = make_event(net, LabelLiterals{{"C", {"C1", "C2"}}});
  const auto x2 = make_event(net, LabelLiterals{{"C", {"C1", "C2", "C3"}}});
  const auto *s1 = detail::find(rows, c1, false), *s2 = detail::find(rows, c2, false);
  const auto *sx1 = detail::find(rows, x1, false), *sx2 = detail::find(rows, x2, false);
  check.that("candidates include C in {C1,C2} and C in {C1,C2,C3}", sx1 && sx2 && s1 && s2);
  if (!(sx1 && sx2 && s1 && s2)) return r;

  check.near("EP(C in {C1,C2}) = EP(C=C1)", sx1->ep_ratio, s1->ep_ratio, 1e-9);
  check.near("EP(C=C1) = 0.729/0.365", s1->ep_ratio, 0.729 / 0.365, 1e-9);
  check.near("prior(C in {C1,C2}) = 0.5", sx1->prior, 0.5, 1e-9);
  check.order("X1 vs C=C1", pair_compare(*sx1, *s1), Order::better);
  check.order("X1 vs C=C2", pair_compare(*sx1, *s2), Order::better);
  check.order("X1 vs X2", pair_compare(*sx1, *sx2), Order::incomparable);
  check.near("posterior(X1) = 0.99863", sx1->posterior, 0.99863, 1e-5);
  check.near("posterior(X2) = 0.99932", sx2->posterior, 0.99932, 1e-5);
  check.that("posterior product prefers X2 over X1", sx2->posterior > sx1->posterior);
  check.that("X1 is on the frontier", sx1->frontier);
  return r;
}

inline ScenarioResult rain_wind_lawn_scenario() {
  ScenarioResult r{"rain-wind-lawn", {}, {}};
  detail::Checker check(r);
  const auto net = rain_wind_lawn();
  const auto wet = make_event(net, {{"Wet", "true"}});
  const EpistemicState k(net, wet);
  CandidateSpec spec;
  spec.max_conjuncts = 2;
  spec.include_mechanism_conjunct = false;
  const auto rows = rank_all(k, wet, spec);
  r.reports.push_back(make_report(k, wet, rows));

  const auto *rain = detail::find(rows, make_event(net, {{"Rain", "true"}}), false);
  const auto *both = detail::find(rows, make_event(net, {{"Rain", "true"}, {"Wind", "true"}}), false);
  const auto *wind = detail::find(rows, make_event(net, {{"Wind", "true"}}), false);
  check.that("Rain, Wind and Rain&Wind are candidates", rain && both && wind);
  if (!(rain && both && wind)) return r;
  check.near("Pr-(Wet) = 0.161", rain->explanandum_prob, 0.161, 1e-9);
  check.near("EP(Rain) = 0.42/0.161", rain->ep_ratio, 0.42 / 0.161, 1e-9);
  check.near("EP(Rain & Wind) = 0.9/0.161", both->ep_ratio, 0.9 / 0.161, 1e-9);
  check.order("Rain vs Rain & Wind", pair_compare(*rain, *both), Order::incomparable);
  check.that("Rain and Rain & Wind both on the frontier", rain->frontier && both->frontier);
  check.order("Rain vs Wind", pair_compare(*rain, *wind), Order::better);
  check.that("Wind alone is dominated", !wind->frontier);
  check.that("posterior product prefers Rain over Rain & Wind", rain->posterior > both->posterior);
  return r;
}

inline ScenarioResult asbestos_mixture_scenario() {
  ScenarioResult r{"asbestos-mixture", {}, {}};
  detail::Checker check(r);
  const auto causal = asbestos_causal();
  const std::vector<WeightedStructure> structures{{causal, 0.5}, {asbestos_null(), 0.5}};
  const auto cancer = make_event(causal, {{"Cancer", "yes"}});
  const EpistemicState prior_state(structures, Event{});
  check.near("Pr(Cancer=yes) with no observations = 0.19", state_prob(prior_state, cancer), 0.19, 1e-9);

  const EpistemicState k(structures, cancer);
  CandidateSpec with_mech;
  with_mech.max_conjuncts = 1;
  CandidateSpec bare = with_mech;
  bare.include_mechanism_conjunct = false;
  const auto mech_rows = rank_all(k, cancer, with_mech);
  const auto bare_rows = rank_all(k, cancer, bare);
  r.reports.push_back(make_report(k, cancer, mech_rows));
  r.reports.push_back(make_report(k, cancer, bare_rows));

  const auto exposed = make_event(causal, {{"Asbestos", "yes"}});
  const auto* m = detail::find(mech_rows, exposed, true);
  const auto* b = detail::find(bare_rows, exposed, false);
  check.that("mechanism and bare-fact candidates for Asbestos=yes exist", m && b);
  if (!(m && b)) return r;
  check.that("mechanism conjunct is {Asbestos->Cancer}",
             m->explanation.mechanism->edges == std::set<Edge>{{0, 1}});
  check.near("EP(mechanism & Asbestos=yes) = 0.7/0.19", m->ep_ratio, 0.7 / 0.19, 1e-9);
  check.near("EP(Asbestos=yes) = 0.4/0.19", b->ep_ratio, 0.4 / 0.19, 1e-9);
  check.near("prior(mechanism & Asbestos=yes) = 0.15", m->prior, 0.15, 1e-9);
  check.near("prior(Asbestos=yes) = 0.3", b->prior, 0.3, 1e-9);
  check.that("mechanism candidate: higher EP, lower prior", m->ep_ratio > b->ep_ratio && m->prior < b->prior);
  check.order("mechanism vs bare fact", pair_compare(*m, *b), Order::incomparable);
  return r;
}

inline ScenarioResult storm_barometer_scenario() {
  ScenarioResult r{"storm-barometer", {}, {}};
  detail::Checker check(r);
  const auto net = storm_barometer();
  const std::size_t storm = 0, barometer = 1;
  const ExternalCause saw_barometer{"barometer-observation", barometer};
  const ExternalCause saw_storm{"storm-observation", storm};
  const auto bg = to_belief_graph(net, {saw_barometer, saw_storm});
  check.that("belief graph has the single edge Storm-Barometer",
             bg.markov.edges.size() == 1 && bg.markov.has_edge(storm, barometer));
  check.that("Barometer->Storm rooted in the barometer observation is valid",
             static_cast<bool>(validate_belief_explanation(bg, {{barometer, storm}}, {saw_barometer})));
  check.that("Storm->Barometer rooted in the storm observation is valid",
             static_cast<bool>(validate_belief_explanation(bg, {{storm, barometer}}, {saw_storm})));
  check.that("Barometer->Storm without its external cause is invalid",
             !validate_belief_explanation(bg, {{barometer, storm}}, {saw_storm}));

  // Facts, unlike beliefs, are explained causally only.
  CandidateSpec spec;
  const auto storm_seen = make_event(net, {{"Storm", "yes"}});
  const auto down = make_event(net, {{"Barometer", "down"}});
  check.that("the barometer does not explain the storm",
             enumerate(EpistemicState(net, storm_seen), storm_seen, spec).empty());
  const EpistemicState k(net, down);
  const auto rows = rank_all(k, down, spec);
  r.reports.push_back(make_report(k, down, rows));
  check.that("the storm explains the barometer reading", !rows.empty());
  return r;
}

inline ScenarioResult ep_contrast_scenario() {
  ScenarioResult r{"ep-contrast", {}, {}};
  detail::Checker check(r);
  std::vector<ScoredExplanation> scored;
  for (const auto& net : {ep_contrast_mild(), ep_contrast_sharp()}) {
    const auto e = make_event(net, {{"E", "true"}});
    const EpistemicState k(net, e);
    Explanation x{std::nullopt, make_event(net, {{"X", "true"}})};
    check.that("X=true is admissible", static_cast<bool>(is_admissible(k, e, x)));
    std::vector<ScoredExplanation> one{score(k, e, x)};
    mark_dominance(one);
    scored.push_back(one.front());
    r.reports.push_back(make_report(k, e, one));
  }
  check.near("Pr-(E) = 0.500001 in the mild case", scored[0].explanandum_prob, 0.500001, 1e-12);
  check.near("Pr-(E) = 0.000001 in the sharp case", scored[1].explanandum_prob, 1e-6, 1e-15);
  check.near("EP-diff equal in both cases", scored[0].ep_diff, scored[1].ep_diff, 1e-6);
  check.near("EP-diff = 0.009999", scored[0].ep_diff, 0.009999, 1e-9);
  check.that("EP ratio differs by a factor above 9000", scored[1].ep_ratio / scored[0].ep_ratio > 9000.0,
             "factor " + std::to_string(scored[1].ep_ratio / scored[0].ep_ratio));
  return r;
}

using ScenarioFn = std::function<ScenarioResult()>;

inline const std::vector<std::pair<std::string, ScenarioFn>>& registry() {
  static const std::vector<std::pair<std::string, ScenarioFn>> all{
      {"coin-bag", coin_bag_scenario},
      {"vacation-refinement", vacation_refinement_scenario},
      {"four-coin", four_coin_scenario},
      {"rain-wind-lawn", rain_wind_lawn_scenario},
      {"asbestos-mixture", asbestos_mixture_scenario},
      {"storm-barometer", storm_barometer_scenario},
      {"ep-contrast", ep_contrast_scenario},
  };
  return all;
}

inline std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& [n, f] : registry()) out.push_back(n);
  return out;
}

inline ScenarioResult run(const std::string& name) {
  for (const auto& [n, f] : registry())
    if (n == name) return f();
  throw UnknownScenario(name);
}

}  // namespace bnexplain::scenarios
