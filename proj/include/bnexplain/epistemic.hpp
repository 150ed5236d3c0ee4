#pragma once

// Epistemic states: a prior over candidate causal structures plus a set of
// observations. A world is a (assignment, structure) pair weighted by
// Pr'(C) * Pr_C(w | O); structure weights are not updated by O.

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bnexplain/event.hpp"
#include "bnexplain/inference.hpp"
#include "bnexplain/network.hpp"

namespace bnexplain {

struct WeightedStructure {
  CausalNetwork network;
  double weight = 1.0;

  bool operator==(const WeightedStructure&) const = default;
};

class EpistemicState {
 public:
  EpistemicState(std::vector<WeightedStructure> structures, Event observations)
      : structures_(std::move(structures)), observations_(std::move(observations)) {
    check();
  }

  EpistemicState(CausalNetwork network, Event observations)
      : EpistemicState(std::vector<WeightedStructure>{{std::move(network), 1.0}},
                       std::move(observations)) {}

  const std::vector<WeightedStructure>& structures() const { return structures_; }
  const Event& observations() const { return observations_; }
  // Shared variable universe.
  const std::vector<Variable>& variables() const { return structures_.front().network.variables(); }
  const CausalNetwork& reference() const { return structures_.front().network; }

  // Pr_C(O) for each structure.
  std::vector<double> likelihoods() const {
    std::vector<double> out;
    for (const auto& s : structures_) out.push_back(evidence_prob(s.network, observations_));
    return out;
  }

  EpistemicState with_observations(Event observations) const {
    return EpistemicState(structures_, std::move(observations));
  }

  bool operator==(const EpistemicState&) const = default;

 private:
  void check() const {
    if (structures_.empty()) throw ValidationError("epistemic state needs at least one structure");
    double total = 0.0;
    for (std::size_t i = 0; i < structures_.size(); ++i) {
      const auto& s = structures_[i];
      const std::string where = "structure #" + std::to_string(i);
      if (!(s.weight >= 0.0) || !std::isfinite(s.weight))
        throw ValidationError(where + ": negative or non-finite weight");
      total += s.weight;
      require_valid(s.network);
      if (!s.network.same_universe(structures_.front().network))
        throw ValidationError(where + ": variables or domains differ from structure #0");
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw ValidationError("structure weights sum to " + std::to_string(total) + ", not 1");
    for (const auto& [v, set] : observations_.literals()) {
      reference().check_index(v);
      if (!set.is_single() || !set.subset_of(ValueSet::full(reference().variable(v).size())))
        throw ValidationError("observation on '" + reference().variable(v).name +
                              "' must name exactly one value");
    }
    for (std::size_t i = 0; i < structures_.size(); ++i)
      if (structures_[i].weight > 0.0 && evidence_prob(structures_[i].network, observations_) <= 0.0)
        throw ValidationError("structure #" + std::to_string(i) +
                              " gives the observations probability zero");
  }

  std::vector<WeightedStructure> structures_;
  Event observations_;
};

// Pr_K(target & mech | given & given_mech). A mechanism argument restricts
// the structure sum to structures that contain its edges.
inline double state_prob(const EpistemicState& k, const Event& target, const Event& given = {},
                         const std::optional<MechanismFragment>& mech = std::nullopt,
                         const std::optional<MechanismFragment>& given_mech = std::nullopt) {
  double num = 0.0;
  double den = 0.0;
  const Event& obs = k.observations();
  const Event target_given = target.conjoin(given);
  for (const auto& s : k.structures()) {
    if (s.weight <= 0.0) continue;
    if (given_mech && !supports(s.network, *given_mech)) continue;
    const double p_obs = evidence_prob(s.network, obs);
    const double p_given = evidence_prob(s.network, given.conjoin(obs)) / p_obs;
    den += s.weight * p_given;
    if (mech && !supports(s.network, *mech)) continue;
    num += s.weight * evidence_prob(s.network, target_given.conjoin(obs)) / p_obs;
  }
  if (den <= 0.0) throw InferenceError("conditioning on null event");
  return std::clamp(num / den, 0.0, 1.0);
}

// Retracts the explanandum: removes every literal of `e` from the
// observations. Unobserved literals leave the state untouched.
inline EpistemicState contract(const EpistemicState& k, const Event& e) {
  const auto& obs = k.observations();
  std::set<std::size_t> drop;
  for (const auto& [v, set] : e.literals()) {
    auto seen = obs.find(v);
    if (!seen) continue;
    if (*seen != set)
      throw ValidationError("explanandum contradicts the observation on '" +
                            k.variables().at(v).name + "'");
    drop.insert(v);
  }
  if (drop.empty()) return k;
  return k.with_observations(obs.without(drop));
}

inline bool accepted(const EpistemicState& k, const Event& x,
                     const std::optional<MechanismFragment>& mech = std::nullopt,
                     double eps = kDefaultEpsilon) {
  return state_prob(k, x, {}, mech) >= 1.0 - eps;
}

inline constexpr std::size_t kMaxEnumeratedWorlds = std::size_t{1} << 22;

// Most probable world under the whole state, Pr_K(w) = sum_C Pr'(C) Pr_C(w | O).
// A single structure uses max-product elimination; mixtures enumerate worlds
// and throw if there are more than kMaxEnumeratedWorlds.
inline MpeResult most_probable_world(const EpistemicState& k) {
  if (k.structures().size() == 1) return mpe(k.reference(), k.observations());
  double worlds = 1.0;
  for (const auto& v : k.variables()) worlds *= static_cast<double>(v.size());
  if (worlds > static_cast<double>(kMaxEnumeratedWorlds))
    throw InferenceError("too many worlds to enumerate for a mixture MPE");
  const auto lik = k.likelihoods();
  MpeResult best{{}, -1.0};
  for_each_world(k.reference(), [&](const Assignment& w) {
    if (!k.observations().satisfied_by(w)) return;
    double p = 0.0;
    for (std::size_t i = 0; i < k.structures().size(); ++i) {
      const auto& s = k.structures()[i];
      if (s.weight > 0.0) p += s.weight * joint(s.network, w) / lik[i];
    }
    if (p > best.posterior * (1.0 + 1e-9)) best = {w, p};
  });
  best.posterior = std::min(best.posterior, 1.0);
  return best;
}

}  // namespace bnexplain
