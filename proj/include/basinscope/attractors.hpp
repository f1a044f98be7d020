#pragma once

#include "basinscope/dd.hpp"
#include "basinscope/model.hpp"
#include "basinscope/stg.hpp"

#include <string_view>
#include <variant>
#include <vector>

namespace basinscope {

enum class attractor_kind { steady, cyclic };

const char* to_string(attractor_kind kind);

struct attractor {
  std::size_t index = 0; // 1-based, canonical order
  dd_ref states;
  state representative; // smallest member
  attractor_kind kind = attractor_kind::steady;
  big_count size;
  /// False for subspaces imported without terminal-SCC verification.
  bool verified = true;
};

/// Partial assignment describing a subspace, e.g. {a=1}.
using subspace = cube;

using attractor_seed = std::variant<state, subspace>;

dd_ref steady_states(const transition_system& ts);

/// All terminal SCCs of the STG restricted to the admissible space,
/// ordered by representative.
std::vector<attractor> find_attractors(const transition_system& ts);

/// Attractors from known states (terminal SCC verified) or subspaces
/// (taken as-is). Throws domain_error with an escaping transition when a
/// state seed does not lie in a terminal SCC.
std::vector<attractor> import_attractors(const transition_system& ts, const std::vector<attractor_seed>& seeds);

/// Seeds from the JSON import format: a list of bit strings and/or objects
/// mapping variable names to 0/1.
std::vector<attractor_seed> parse_attractor_seeds(std::string_view json_text, const boolean_network& net);

/// Set standing in for the attractor in weak and strong basin queries: the
/// representative state, or the whole set for an imported subspace.
dd_ref representative_set(const transition_system& ts, const attractor& a);

/// Union of the attractor sets.
dd_ref attractor_union(const transition_system& ts, const std::vector<attractor>& attractors);

} // namespace basinscope
