#include "basinscope/json_io.hpp"

#include <limits>

namespace basinscope {

namespace {

std::vector<std::string> variable_names(const transition_system& ts) {
  const auto names = ts.network().variables.names();
  return {names.begin(), names.end()};
}

} // namespace

json count_json(const big_count& n) {
  if (n >= 0 && n <= std::numeric_limits<std::uint64_t>::max()) {
    return n.convert_to<std::uint64_t>();
  }
  return n.str();
}

json size_json(const set_size& s) { return {{"size", count_json(s.states)}, {"percent", s.percent}}; }

std::string set_expression(const transition_system& ts, const dd_ref& set, expression_style style) {
  return to_string(ts.manager().to_expression(set, style), ts.network().variables.names());
}

json attractors_json(const transition_system& ts, const std::vector<attractor>& attractors, expression_style style) {
  json list = json::array();
  std::size_t steady = 0;
  for (const auto& a : attractors) {
    steady += a.kind == attractor_kind::steady ? 1 : 0;
    json item = {{"index", a.index},
                 {"representative", a.representative.to_string()},
                 {"kind", to_string(a.kind)},
                 {"size", count_json(a.size)},
                 {"verified", a.verified},
                 {"expression", set_expression(ts, a.states, style)}};
    list.push_back(std::move(item));
  }
  return {{"variables", variable_names(ts)},
          {"update", to_string(ts.mode())},
          {"space_size", count_json(ts.space_size())},
          {"steady", steady},
          {"cyclic", attractors.size() - steady},
          {"attractors", std::move(list)}};
}

json basins_json(const transition_system& ts, const std::vector<attractor>& attractors,
                 const std::vector<basin_triple>& triples) {
  json list = json::array();
  for (std::size_t k = 0; k < triples.size(); ++k) {
    const auto& a = attractors.at(triples[k].attractor_indices.front() - 1);
    list.push_back({{"index", a.index},
                    {"representative", a.representative.to_string()},
                    {"kind", to_string(a.kind)},
                    {"weak", size_json(triples[k].weak_size)},
                    {"strong", size_json(triples[k].strong_size)},
                    {"cycle_free", size_json(triples[k].cycle_free_size)}});
  }
  return {{"variables", variable_names(ts)},
          {"update", to_string(ts.mode())},
          {"space_size", count_json(ts.space_size())},
          {"attractors", std::move(list)}};
}

json diagram_json(const transition_system& ts, const quotient_diagram& diagram, expression_style style) {
  json nodes = json::array();
  for (const auto& n : diagram.nodes) {
    nodes.push_back({{"key", n.key},
                     {"size", count_json(n.size.states)},
                     {"percent", n.size.percent},
                     {"expression", set_expression(ts, n.states, style)}});
  }
  json edges = json::array();
  for (const auto& e : diagram.edges) {
    edges.push_back(json::array({e.from, e.to}));
  }
  return {{"partial", diagram.partial},
          {"space_size", count_json(ts.space_size())},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)},
          {"uncommitted", size_json(diagram.uncommitted_size)}};
}

json phenotypes_json(const transition_system& ts, const std::vector<phenotype>& phenos) {
  json markers = json::array();
  if (!phenos.empty()) {
    for (auto u : phenos.front().markers) {
      markers.push_back(ts.network().variables.names()[u]);
    }
  }
  json list = json::array();
  for (const auto& p : phenos) {
    list.push_back({{"index", p.index},
                    {"pattern", p.pattern},
                    {"attractors", p.attractor_indices},
                    {"steady", p.steady},
                    {"cyclic", p.cyclic}});
  }
  return {{"markers", std::move(markers)}, {"phenotypes", std::move(list)}};
}

json accept_json(const transition_system& ts, const std::string& formula, const accept_result& result) {
  return {{"formula", formula},
          {"count", count_json(result.count)},
          {"percent", measure(ts, result.states).percent},
          {"expression", to_string(result.expression, ts.network().variables.names())}};
}

json simulation_json(const std::vector<phenotype>& phenos, const simulation_result& result,
                     const simulation_options& options) {
  json list = json::array();
  for (std::size_t p = 0; p < phenos.size(); ++p) {
    list.push_back({{"index", phenos[p].index},
                    {"pattern", phenos[p].pattern},
                    {"count", result.counts[p]},
                    {"frequency", result.frequencies[p]}});
  }
  return {{"walks", result.walks},
          {"seed", options.seed},
          {"stratified", options.stratify_inputs},
          {"step_cap", result.step_cap},
          {"capped", result.capped},
          {"phenotypes", std::move(list)}};
}

} // namespace basinscope
