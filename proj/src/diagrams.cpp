#include "basinscope/diagrams.hpp"

#include "basinscope/ctl.hpp"
#include "basinscope/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace basinscope {

std::string to_string(const index_set& key) {
  std::string out = "{";
  for (std::size_t k = 0; k < key.size(); ++k) {
    if (k > 0) {
      out += ",";
    }
    out += std::to_string(key[k]);
  }
  return out + "}";
}

namespace {

bool key_less(const index_set& a, const index_set& b) {
  if (a.size() != b.size()) {
    return a.size() < b.size();
  }
  return a < b;
}

bool proper_subset(const index_set& sub, const index_set& super) {
  return sub.size() < super.size() && std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

} // namespace

std::vector<diagram_node> commitment_blocks(const transition_system& ts, const std::vector<dd_ref>& targets,
                                            bool partial) {
  if (targets.empty()) {
    throw domain_error("commitment analysis requires at least one attractor");
  }
  auto& m = ts.manager();
  std::vector<dd_ref> weak;
  weak.reserve(targets.size());
  for (const auto& t : targets) {
    weak.push_back(weak_basin(ts, t));
  }

  // refine the space by each weak basin; blocks are keyed by the basins they lie in
  std::vector<std::pair<index_set, dd_ref>> blocks{{{}, ts.space()}};
  for (std::size_t i = 0; i < weak.size(); ++i) {
    std::vector<std::pair<index_set, dd_ref>> next;
    for (auto& [key, set] : blocks) {
      const dd_ref inside = set & weak[i];
      const dd_ref outside = set - weak[i];
      if (!inside.is_false()) {
        index_set k = key;
        k.push_back(i + 1);
        next.emplace_back(std::move(k), inside);
      }
      if (!outside.is_false()) {
        next.emplace_back(key, outside);
      }
    }
    blocks = std::move(next);
  }

  if (!partial) {
    for (const auto& [key, set] : blocks) {
      if (key.empty()) {
        throw domain_error("attractor list is incomplete: " + measure(ts, set).states.str() +
                           " states reach none of the given attractors");
      }
    }
  }

  std::vector<diagram_node> nodes;
  for (const auto& [key, set] : blocks) {
    if (key.empty()) {
      continue;
    }
    // ⋀_{i∈I} WeakBasin(a_i) ∧ StrongBasin({a_j | j∈I})
    dd_ref reps = m.constant(false);
    dd_ref query = m.constant(true);
    for (auto idx : key) {
      reps |= targets[idx - 1];
      query &= weak[idx - 1];
    }
    query &= strong_basin(ts, reps);
    if (!partial && query != set) {
      throw std::logic_error("commitment set " + to_string(key) +
                             " differs between the basin-query and partition computations");
    }
    if (query.is_false()) {
      continue;
    }
    nodes.push_back({key, query, measure(ts, query)});
  }
  std::sort(nodes.begin(), nodes.end(), [](const diagram_node& a, const diagram_node& b) { return key_less(a.key, b.key); });
  return nodes;
}

std::vector<diagram_edge> quotient_edges(const transition_system& ts, const std::vector<diagram_node>& nodes) {
  std::vector<diagram_edge> edges;
  for (const auto& source : nodes) {
    for (const auto& target : nodes) {
      if (!proper_subset(target.key, source.key)) {
        continue;
      }
      // ComSet(I) ∩ Accept(EX(ComSet(J))) ≠ ∅
      if (source.states.intersects(ts.preimage(target.states))) {
        edges.push_back({source.key, target.key});
      }
    }
  }
  return edges;
}

std::vector<diagram_node> commitment_sets(const transition_system& ts, const std::vector<attractor>& attractors,
                                          bool partial) {
  std::vector<dd_ref> reps;
  for (const auto& a : attractors) {
    reps.push_back(representative_set(ts, a));
  }
  return commitment_blocks(ts, reps, partial);
}

std::vector<diagram_edge> commitment_edges(const transition_system& ts, const std::vector<diagram_node>& nodes) {
  return quotient_edges(ts, nodes);
}

namespace {

quotient_diagram assemble(const transition_system& ts, std::vector<diagram_node> nodes, bool partial) {
  quotient_diagram d;
  d.edges = quotient_edges(ts, nodes);
  dd_ref covered = ts.manager().constant(false);
  for (const auto& n : nodes) {
    covered |= n.states;
  }
  d.nodes = std::move(nodes);
  d.partial = partial;
  d.uncommitted = ts.space() - covered;
  d.uncommitted_size = measure(ts, d.uncommitted);
  return d;
}

} // namespace

quotient_diagram commitment_diagram(const transition_system& ts, const std::vector<attractor>& attractors,
                                    bool partial) {
  return assemble(ts, commitment_sets(ts, attractors, partial), partial);
}

// ---------------------------------------------------------------- phenotypes

std::string phenotype_of(const transition_system& ts, const attractor& a, const std::vector<std::size_t>& markers) {
  if (markers.empty()) {
    throw domain_error("phenotypes require a non-empty marker set");
  }
  auto& m = ts.manager();
  std::string pattern;
  for (auto u : markers) {
    if (u >= ts.num_vars()) {
      throw domain_error("marker index out of range");
    }
    const dd_ref on = m.var(u);
    const bool some_on = a.states.intersects(on);
    const bool some_off = !a.states.implies(on);
    pattern += some_on && some_off ? '*' : (some_on ? '1' : '0');
  }
  return pattern;
}

namespace {

int pattern_rank(char c) { return c == '0' ? 0 : (c == '1' ? 1 : 2); }

bool pattern_less(const std::string& a, const std::string& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](char x, char y) { return pattern_rank(x) < pattern_rank(y); });
}

} // namespace

std::vector<phenotype> phenotypes(const transition_system& ts, const std::vector<attractor>& attractors,
                                  const std::vector<std::size_t>& markers) {
  if (markers.empty()) {
    throw domain_error("phenotypes require a non-empty marker set");
  }
  std::map<std::string, phenotype, decltype(&pattern_less)> grouped(&pattern_less);
  for (const auto& a : attractors) {
    const std::string pattern = phenotype_of(ts, a, markers);
    auto& p = grouped.try_emplace(pattern).first->second;
    p.markers = markers;
    p.pattern = pattern;
    p.attractor_indices.push_back(a.index);
    (a.kind == attractor_kind::steady ? p.steady : p.cyclic) += 1;
  }
  std::vector<phenotype> out;
  for (auto& [pattern, p] : grouped) {
    p.index = out.size() + 1;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::size_t> parse_markers(std::string_view csv, const boolean_network& net) {
  std::vector<std::size_t> out;
  std::string item;
  std::istringstream in{std::string(csv)};
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) {
      continue;
    }
    item = item.substr(first, item.find_last_not_of(" \t") - first + 1);
    const auto idx = net.variables.find(item);
    if (!idx) {
      throw domain_error("unknown marker '" + item + "'");
    }
    if (std::find(out.begin(), out.end(), *idx) != out.end()) {
      throw domain_error("marker '" + item + "' listed twice");
    }
    out.push_back(*idx);
  }
  if (out.empty()) {
    throw domain_error("phenotypes require a non-empty marker set");
  }
  return out;
}

quotient_diagram phenotype_diagram(const transition_system& ts, const std::vector<attractor>& attractors,
                                   const std::vector<phenotype>& phenos, bool partial) {
  auto& m = ts.manager();
  std::vector<dd_ref> reps;
  for (const auto& p : phenos) {
    dd_ref set = m.constant(false);
    for (auto idx : p.attractor_indices) {
      set |= representative_set(ts, attractors.at(idx - 1));
    }
    reps.push_back(set);
  }
  return assemble(ts, commitment_blocks(ts, reps, partial), partial);
}

} // namespace basinscope
