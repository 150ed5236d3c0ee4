#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bnexplain/network.hpp"

namespace bnexplain {

// Name-based construction of a CausalNetwork. CPT rows are given in
// row_index order: first declared parent most significant.
class NetworkBuilder {
 public:
  NetworkBuilder& variable(std::string name, std::vector<std::string> values) {
    vars_.push_back({std::move(name), std::move(values)});
    parents_.emplace_back();
    cpts_.emplace_back();
    return *this;
  }

  NetworkBuilder& edge(std::string_view parent, std::string_view child) {
    parents_[find(child)].push_back(find(parent));
    return *this;
  }

  NetworkBuilder& cpt(std::string_view child, Cpt rows) {
    cpts_[find(child)] = std::move(rows);
    return *this;
  }

  NetworkBuilder& prior(std::string_view var, std::vector<double> p) {
    return cpt(var, Cpt{std::move(p)});
  }

  CausalNetwork build_unchecked() const { return CausalNetwork(vars_, parents_, cpts_); }

  CausalNetwork build() const {
    auto net = build_unchecked();
    require_valid(net);
    return net;
  }

 private:
  std::size_t find(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name == name) return i;
    throw ValidationError("unknown variable '" + std::string(name) + "'");
  }

  std::vector<Variable> vars_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<Cpt> cpts_;
};

}  // namespace bnexplain
