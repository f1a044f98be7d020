#pragma once

#include "basinscope/attractors.hpp"
#include "basinscope/basins.hpp"
#include "basinscope/dd.hpp"
#include "basinscope/stg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace basinscope {

/// Sorted, 1-based attractor or phenotype indices.
using index_set = std::vector<std::size_t>;

std::string to_string(const index_set& key);

struct diagram_node {
  index_set key;
  dd_ref states;
  set_size size;
};

struct diagram_edge {
  index_set from;
  index_set to;
  friend bool operator==(const diagram_edge&, const diagram_edge&) = default;
};

/// Quotient graph of the STG induced by a partition into blocks keyed by
/// the set of targets (attractors or phenotypes) the block's states can reach.
struct quotient_diagram {
  std::vector<diagram_node> nodes; // ordered by key size, then key
  std::vector<diagram_edge> edges; // ordered by (from, to) node order
  /// Built from a possibly incomplete target list; no partition checks.
  bool partial = false;
  /// States committed to none of the known targets (empty unless partial).
  dd_ref uncommitted;
  set_size uncommitted_size;
};

/// Blocks keyed by non-empty I with states that reach exactly the
/// representative sets indexed by I. `targets[i]` is the representative set
/// of index i + 1. In complete mode the weak-basin partition is
/// cross-checked against the conjunction-of-basins query for every block.
std::vector<diagram_node> commitment_blocks(const transition_system& ts, const std::vector<dd_ref>& targets,
                                            bool partial);

/// Edge I -> J iff J ⊊ I and some state of block I has a successor in block J.
std::vector<diagram_edge> quotient_edges(const transition_system& ts, const std::vector<diagram_node>& nodes);

std::vector<diagram_node> commitment_sets(const transition_system& ts, const std::vector<attractor>& attractors,
                                          bool partial = false);
std::vector<diagram_edge> commitment_edges(const transition_system& ts, const std::vector<diagram_node>& nodes);
quotient_diagram commitment_diagram(const transition_system& ts, const std::vector<attractor>& attractors,
                                    bool partial = false);

struct phenotype {
  std::size_t index = 0; // 1-based, canonical order
  std::vector<std::size_t> markers;
  /// One of '0', '1', '*' per marker, in marker order.
  std::string pattern;
  std::vector<std::size_t> attractor_indices;
  std::size_t steady = 0;
  std::size_t cyclic = 0;
};

/// Marker pattern of one attractor: 0 if the marker is 0 in every state,
/// 1 if it is 1 in every state, * otherwise.
std::string phenotype_of(const transition_system& ts, const attractor& a, const std::vector<std::size_t>& markers);

/// Group attractors by marker pattern; patterns ordered with 0 < 1 < *.
std::vector<phenotype> phenotypes(const transition_system& ts, const std::vector<attractor>& attractors,
                                  const std::vector<std::size_t>& markers);

/// Resolve a comma-separated marker list against the network.
std::vector<std::size_t> parse_markers(std::string_view csv, const boolean_network& net);

/// Phenotype diagram: commitment blocks for the representative sets P_i.
quotient_diagram phenotype_diagram(const transition_system& ts, const std::vector<attractor>& attractors,
                                   const std::vector<phenotype>& phenos, bool partial = false);

struct simulation_options {
  std::uint64_t walks = 10000;
  std::uint64_t seed = 0;
  /// Spread walks evenly over the input-variable configurations.
  bool stratify_inputs = false;
  unsigned threads = 0; // 0 = hardware concurrency
};

struct simulation_result {
  std::vector<std::uint64_t> counts; // per phenotype, index order
  std::vector<double> frequencies;   // counts / completed walks
  std::uint64_t walks = 0;
  std::uint64_t capped = 0; // walks stopped by the step cap
  std::uint64_t step_cap = 0;
};

/// Random walks from uniformly drawn admissible states, each following
/// uniformly chosen transitions until it enters an attractor; tallies the
/// phenotype reached. Results are independent of the thread count.
simulation_result simulate_phenotype_reachability(const transition_system& ts, const std::vector<attractor>& attractors,
                                                  const std::vector<phenotype>& phenos,
                                                  const simulation_options& options);

} // namespace basinscope
