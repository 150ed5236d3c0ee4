#pragma once

// JSON network and case files.
//
// Network:
//   { "variables": [ {"name": "C", "values": ["bh", "bt"]}, ... ],
//     "edges": [ ["C", "R"], ... ],
//     "cpts": { "C": [ {"given": [], "p": [0.99, 0.01]} ],
//               "R": [ {"given": ["bh"], "p": [0.9, 0.1]}, ... ] } }
// A child's parent order is the order its edges are listed in; `given`
// names parent values in that order.
//
// Case:
//   { "structures": [ {"file": "a.json", "weight": 0.5} | {"network": {...}, "weight": 0.5} ],
//     "observations": {"R": "t"}, "explanandum": {"R": "t"},
//     "options": {"max_conjuncts": 2, "allow_value_sets": false,
//                 "require_raising": false, "include_mechanism_conjunct": true,
//                 "epsilon": 1e-9} }
// "network" may replace "structures" for a single known structure.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bnexplain/epistemic.hpp"
#include "bnexplain/explain.hpp"
#include "bnexplain/network.hpp"

namespace bnexplain {

using json = nlohmann::json;

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is one past the offending character.
    auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string msg = e.what();
    // Drop nlohmann's own "[json.exception...] parse error at line L, column C: " prefix.
    if (auto pos = msg.find("parse error"); pos != std::string::npos) {
      auto colon = msg.find(": ", pos);
      msg = colon == std::string::npos ? msg.substr(pos) : msg.substr(colon + 2);
    }
    throw ParseError(msg, line, col);
  }
}

inline const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw ValidationError(where + ": missing key '" + key + "'");
  return obj.at(key);
}

inline std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ValidationError(where + ": expected a string");
  return j.get<std::string>();
}

inline double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ValidationError(where + ": expected a number");
  return j.get<double>();
}

inline const json& as_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an array");
  return j;
}

inline CausalNetwork network_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("network: expected an object");
  std::vector<Variable> vars;
  std::map<std::string, std::size_t> index;
  for (const auto& jv : as_array(member(doc, "variables", "network"), "variables")) {
    Variable v;
    v.name = as_string(member(jv, "name", "variable"), "variable name");
    const std::string where = "variable '" + v.name + "'";
    for (const auto& val : as_array(member(jv, "values", where), where + " values"))
      v.values.push_back(as_string(val, where + " values"));
    if (!index.emplace(v.name, vars.size()).second)
      throw ValidationError("duplicate variable name '" + v.name + "'");
    vars.push_back(std::move(v));
  }
  auto lookup = [&](const std::string& name, const std::string& where) {
    auto it = index.find(name);
    if (it == index.end()) throw ValidationError(where + ": unknown variable '" + name + "'");
    return it->second;
  };

  std::vector<std::vector<std::size_t>> parents(vars.size());
  if (doc.contains("edges")) {
    for (const auto& je : as_array(doc.at("edges"), "edges")) {
      if (!je.is_array() || je.size() != 2) throw ValidationError("edges: expected [parent, child]");
      auto p = lookup(as_string(je[0], "edge"), "edge");
      auto c = lookup(as_string(je[1], "edge"), "edge");
      parents[c].push_back(p);
    }
  }

  std::vector<Cpt> cpts(vars.size());
  // Rows are placed through a provisional network so row_index applies.
  CausalNetwork shape(vars, parents, {});
  const auto& jcpts = member(doc, "cpts", "network");
  if (!jcpts.is_object()) throw ValidationError("cpts: expected an object keyed by variable");
  for (const auto& [name, rows] : jcpts.items()) {
    auto v = lookup(name, "cpts");
    const std::string where = "cpt '" + name + "'";
    const auto n_rows = shape.row_count(v);
    Cpt cpt(n_rows);
    std::vector<bool> filled(n_rows, false);
    for (const auto& jr : as_array(rows, where)) {
      std::vector<std::size_t> world(vars.size(), 0);
      const auto& ps = parents[v];
      std::vector<std::string> given;
      if (jr.contains("given"))
        for (const auto& g : as_array(jr.at("given"), where + " given")) given.push_back(as_string(g, where));
      if (given.size() != ps.size())
        throw ValidationError(where + ": row gives " + std::to_string(given.size()) +
                              " parent values, expected " + std::to_string(ps.size()));
      for (std::size_t k = 0; k < ps.size(); ++k) {
        auto idx = vars[ps[k]].value_index(given[k]);
        if (!idx)
          throw ValidationError(where + ": unknown value '" + given[k] + "' for parent '" +
                                vars[ps[k]].name + "'");
        world[ps[k]] = *idx;
      }
      auto r = shape.row_index(v, world);
      if (filled[r]) throw ValidationError(where + ": duplicate row for the same parent values");
      filled[r] = true;
      for (const auto& p : as_array(member(jr, "p", where), where + " p"))
        cpt[r].push_back(as_number(p, where + " p"));
    }
    for (std::size_t r = 0; r < n_rows; ++r)
      if (!filled[r]) throw ValidationError(where + ": missing row " + std::to_string(r));
    cpts[v] = std::move(cpt);
  }
  for (std::size_t v = 0; v < vars.size(); ++v)
    if (!jcpts.contains(vars[v].name)) throw ValidationError("cpts: no table for '" + vars[v].name + "'");

  CausalNetwork net(std::move(vars), std::move(parents), std::move(cpts));
  require_valid(net);
  return net;
}

inline json network_to_json(const CausalNetwork& net) {
  json doc;
  doc["variables"] = json::array();
  for (const auto& v : net.variables()) doc["variables"].push_back({{"name", v.name}, {"values", v.values}});
  doc["edges"] = json::array();
  for (std::size_t c = 0; c < net.size(); ++c)
    for (auto p : net.parents(c)) doc["edges"].push_back({net.variable(p).name, net.variable(c).name});
  doc["cpts"] = json::object();
  for (std::size_t v = 0; v < net.size(); ++v) {
    json rows = json::array();
    for (std::size_t r = 0; r < net.cpt(v).size(); ++r) {
      json given = json::array();
      const auto vals = net.row_parent_values(v, r);
      for (std::size_t k = 0; k < vals.size(); ++k)
        given.push_back(net.variable(net.parents(v)[k]).values[vals[k]]);
      rows.push_back({{"given", given}, {"p", net.cpt(v)[r]}});
    }
    doc["cpts"][net.variable(v).name] = rows;
  }
  return doc;
}

}  // namespace detail

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline CausalNetwork parse_network(std::string_view text) {
  return detail::network_from_json(detail::parse_json(text));
}

// One line per variable, edge and CPT row; tables in declaration order.
inline std::string serialize_network(const CausalNetwork& net) {
  const json doc = detail::network_to_json(net);
  std::string out = "{\n";
  auto lines = [&](const json& items, const char* indent) {
    for (std::size_t i = 0; i < items.size(); ++i)
      out += indent + items[i].dump() + (i + 1 < items.size() ? ",\n" : "\n");
  };
  out += "  \"variables\": [\n";
  lines(doc["variables"], "    ");
  out += "  ],\n  \"edges\": [\n";
  lines(doc["edges"], "    ");
  out += "  ],\n  \"cpts\": {\n";
  for (std::size_t v = 0; v < net.size(); ++v) {
    out += "    " + json(net.variable(v).name).dump() + ": [\n";
    lines(doc["cpts"][net.variable(v).name], "      ");
    out += v + 1 < net.size() ? "    ],\n" : "    ]\n";
  }
  return out + "  }\n}\n";
}

using NamedLiterals = std::vector<std::pair<std::string, std::string>>;

struct CaseFile {
  std::vector<WeightedStructure> structures;
  NamedLiterals observations;
  NamedLiterals explanandum;
  CandidateSpec options;
  double epsilon = kDefaultEpsilon;
};

// A case resolved against its networks.
struct Case {
  EpistemicState state;
  Event explanandum;
  CandidateSpec options;
  double epsilon = kDefaultEpsilon;
};

namespace detail {

inline NamedLiterals literals_from_json(const json& j, const std::string& where) {
  NamedLiterals out;
  if (!j.is_object()) throw ValidationError(where + ": expected an object of variable: value");
  for (const auto& [k, v] : j.items()) out.emplace_back(k, as_string(v, where + " '" + k + "'"));
  return out;
}

inline bool as_bool(const json& j, const std::string& where) {
  if (!j.is_boolean()) throw ValidationError(where + ": expected true or false");
  return j.get<bool>();
}

}  // namespace detail

// Relative "file" references resolve against base_dir.
inline CaseFile parse_case(std::string_view text, const std::filesystem::path& base_dir = ".") {
  using namespace detail;
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ValidationError("case: expected an object");
  CaseFile c;

  auto load_structure = [&](const json& js, double weight) {
    if (js.contains("file")) {
      std::filesystem::path p = as_string(js.at("file"), "structure file");
      if (p.is_relative()) p = base_dir / p;
      c.structures.push_back({parse_network(read_file(p)), weight});
    } else {
      c.structures.push_back({network_from_json(member(js, "network", "structure")), weight});
    }
  };
  if (doc.contains("structures")) {
    for (const auto& js : as_array(doc.at("structures"), "structures"))
      load_structure(js, js.contains("weight") ? as_number(js.at("weight"), "weight") : 1.0);
  } else if (doc.contains("network")) {
    const auto& jn = doc.at("network");
    if (jn.is_string())
      load_structure(json{{"file", jn}}, 1.0);
    else
      load_structure(json{{"network", jn}}, 1.0);
  } else {
    throw ValidationError("case: needs 'structures' or 'network'");
  }

  if (doc.contains("observations")) c.observations = literals_from_json(doc.at("observations"), "observations");
  c.explanandum = literals_from_json(member(doc, "explanandum", "case"), "explanandum");
  if (doc.contains("options")) {
    const auto& o = doc.at("options");
    if (o.contains("max_conjuncts")) {
      if (!o.at("max_conjuncts").is_number_integer() || o.at("max_conjuncts").get<long>() < 1)
        throw ValidationError("options.max_conjuncts: expected a positive integer");
      c.options.max_conjuncts = o.at("max_conjuncts").get<std::size_t>();
    }
    if (o.contains("allow_value_sets")) c.options.allow_value_sets = as_bool(o.at("allow_value_sets"), "options");
    if (o.contains("require_raising")) c.options.require_raising = as_bool(o.at("require_raising"), "options");
    if (o.contains("include_mechanism_conjunct"))
      c.options.include_mechanism_conjunct = as_bool(o.at("include_mechanism_conjunct"), "options");
    if (o.contains("epsilon")) c.epsilon = as_number(o.at("epsilon"), "options.epsilon");
  }
  return c;
}

inline CaseFile load_case_file(const std::filesystem::path& path) {
  return parse_case(read_file(path), path.parent_path());
}

// Aligns every structure to the first one's variable order and checks the
// case invariants.
inline Case resolve(const CaseFile& file) {
  if (file.structures.empty()) throw ValidationError("case has no structures");
  std::vector<std::string> order;
  for (const auto& v : file.structures.front().network.variables()) order.push_back(v.name);
  std::vector<WeightedStructure> aligned;
  for (const auto& s : file.structures) aligned.push_back({reordered(s.network, order), s.weight});
  const auto& ref = aligned.front().network;

  auto to_event = [&](const NamedLiterals& lits) {
    Event e;
    for (const auto& [name, value] : lits) {
      auto v = ref.require(name);
      auto idx = ref.variable(v).value_index(value);
      if (!idx) throw ValidationError("unknown value '" + value + "' for variable '" + name + "'");
      e.require(v, *idx);
    }
    return e;
  };
  Event obs = to_event(file.observations);
  Event expl = to_event(file.explanandum);
  if (expl.empty()) throw ValidationError("explanandum is empty");
  if (!obs.contains_literals_of(expl))
    throw ValidationError("explanandum literals must all be among the observations");
  return Case{EpistemicState(std::move(aligned), std::move(obs)), std::move(expl), file.options,
              file.epsilon};
}

inline Case load_case(const std::filesystem::path& path) { return resolve(load_case_file(path)); }

}  // namespace bnexplain
