#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bnexplain/network.hpp"

namespace bnexplain {

// A world: one value index per network variable, in declaration order.
struct Assignment {
  std::vector<std::size_t> values;

  std::size_t size() const { return values.size(); }
  std::size_t operator[](std::size_t v) const { return values[v]; }

  auto operator<=>(const Assignment&) const = default;
};

// Allowed values of one variable, as a bitmask over domain indices.
class ValueSet {
 public:
  constexpr ValueSet() = default;

  static constexpr ValueSet single(std::size_t value) { return ValueSet(std::uint64_t{1} << value); }
  static constexpr ValueSet full(std::size_t domain_size) {
    return ValueSet(domain_size >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << domain_size) - 1);
  }
  static ValueSet of(std::initializer_list<std::size_t> values) {
    ValueSet s;
    for (auto v : values) s.bits_ |= std::uint64_t{1} << v;
    return s;
  }
  static constexpr ValueSet from_bits(std::uint64_t bits) { return ValueSet(bits); }

  constexpr bool contains(std::size_t value) const {
    return value < 64 && ((bits_ >> value) & 1U) != 0;
  }
  constexpr std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool is_single() const { return count() == 1; }
  constexpr bool subset_of(ValueSet other) const { return (bits_ & ~other.bits_) == 0; }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < 64; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  constexpr ValueSet operator&(ValueSet o) const { return ValueSet(bits_ & o.bits_); }
  constexpr ValueSet operator|(ValueSet o) const { return ValueSet(bits_ | o.bits_); }
  constexpr bool operator==(const ValueSet&) const = default;

 private:
  constexpr explicit ValueSet(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

// Conjunction of "variable in value set" literals. The empty event is the
// certain event; a literal with an empty set makes the event impossible.
class Event {
 public:
  Event() = default;

  static Event literal(std::size_t var, ValueSet values) {
    Event e;
    e.literals_.emplace(var, values);
    return e;
  }
  static Event literal(std::size_t var, std::size_t value) {
    return literal(var, ValueSet::single(value));
  }

  // Intersects with any existing literal on the same variable.
  Event& require(std::size_t var, ValueSet values) {
    auto [it, fresh] = literals_.emplace(var, values);
    if (!fresh) it->second = it->second & values;
    return *this;
  }
  Event& require(std::size_t var, std::size_t value) { return require(var, ValueSet::single(value)); }

  const std::map<std::size_t, ValueSet>& literals() const { return literals_; }
  bool empty() const { return literals_.empty(); }
  std::size_t size() const { return literals_.size(); }
  bool mentions(std::size_t var) const { return literals_.count(var) > 0; }

  std::optional<ValueSet> find(std::size_t var) const {
    auto it = literals_.find(var);
    if (it == literals_.end()) return std::nullopt;
    return it->second;
  }

  std::set<std::size_t> variables() const {
    std::set<std::size_t> out;
    for (const auto& [v, s] : literals_) out.insert(v);
    return out;
  }

  bool contradictory() const {
    for (const auto& [v, s] : literals_)
      if (s.empty()) return true;
    return false;
  }

  bool all_singletons() const {
    for (const auto& [v, s] : literals_)
      if (!s.is_single()) return false;
    return true;
  }

  bool satisfied_by(std::span<const std::size_t> world) const {
    for (const auto& [v, s] : literals_)
      if (!s.contains(world[v])) return false;
    return true;
  }
  bool satisfied_by(const Assignment& w) const { return satisfied_by(std::span(w.values)); }

  Event conjoin(const Event& other) const {
    Event out = *this;
    for (const auto& [v, s] : other.literals_) out.require(v, s);
    return out;
  }

  Event without(const std::set<std::size_t>& vars) const {
    Event out;
    for (const auto& [v, s] : literals_)
      if (!vars.count(v)) out.literals_.emplace(v, s);
    return out;
  }

  // True when every literal of `other` appears here with the same set.
  bool contains_literals_of(const Event& other) const {
    for (const auto& [v, s] : other.literals_) {
      auto it = literals_.find(v);
      if (it == literals_.end() || it->second != s) return false;
    }
    return true;
  }

  bool operator==(const Event&) const = default;

 private:
  std::map<std::size_t, ValueSet> literals_;
};

// Drops full-domain literals and checks the rest against the network.
inline Event normalized(const CausalNetwork& net, const Event& e) {
  Event out;
  for (const auto& [v, s] : e.literals()) {
    net.check_index(v);
    auto full = ValueSet::full(net.variable(v).size());
    if (!s.subset_of(full))
      throw ValidationError("value set outside the domain of '" + net.variable(v).name + "'");
    if (s.empty()) throw ValidationError("empty value set for '" + net.variable(v).name + "'");
    if (s != full) out.require(v, s);
  }
  return out;
}

using LabelLiterals = std::vector<std::pair<std::string, std::vector<std::string>>>;

// Event from (variable, allowed labels) pairs, normalized.
inline Event make_event(const CausalNetwork& net, const LabelLiterals& literals) {
  Event e;
  for (const auto& [name, labels] : literals) {
    auto v = net.require(name);
    ValueSet s;
    for (const auto& l : labels) {
      auto idx = net.variable(v).value_index(l);
      if (!idx) throw ValidationError("unknown value '" + l + "' for variable '" + name + "'");
      s = s | ValueSet::single(*idx);
    }
    if (e.mentions(v)) throw ValidationError("variable '" + name + "' listed twice");
    e.require(v, s);
  }
  return normalized(net, e);
}

inline Event make_event(const CausalNetwork& net,
                        std::initializer_list<std::pair<std::string, std::string>> singles) {
  LabelLiterals lits;
  for (const auto& [n, v] : singles) lits.push_back({n, {v}});
  return make_event(net, lits);
}

inline std::string describe(const std::vector<Variable>& vars, const Event& e) {
  if (e.empty()) return "(true)";
  std::string out;
  for (const auto& [v, s] : e.literals()) {
    if (!out.empty()) out += " & ";
    const auto& var = vars.at(v);
    if (s.is_single()) {
      out += var.name + "=" + var.values.at(s.indices().front());
    } else {
      out += var.name + " in {";
      bool first = true;
      for (auto i : s.indices()) {
        out += (first ? "" : ",") + (i < var.size() ? var.values[i] : "?");
        first = false;
      }
      out += "}";
    }
  }
  return out;
}

}  // namespace bnexplain
