#pragma once

#include "basinscope/attractors.hpp"
#include "basinscope/dd.hpp"
#include "basinscope/stg.hpp"

#include <vector>

namespace basinscope {

/// Size of a state set, absolute and relative to the admissible space.
struct set_size {
  big_count states;
  double percent = 0.0;
};

set_size measure(const transition_system& ts, const dd_ref& set);

/// EF(X): states with a path into X.
dd_ref weak_basin(const transition_system& ts, const dd_ref& representatives);
/// AG(EF(X)): states from which X stays reachable along every path.
dd_ref strong_basin(const transition_system& ts, const dd_ref& representatives);
/// AF(Y): states whose every path enters Y.
dd_ref cycle_free_basin(const transition_system& ts, const dd_ref& attractor_states);

struct basin_triple {
  std::vector<std::size_t> attractor_indices;
  dd_ref weak;
  dd_ref strong;
  dd_ref cycle_free;
  set_size weak_size;
  set_size strong_size;
  set_size cycle_free_size;
};

/// One triple per attractor: weak and strong basins of the representative,
/// cycle-free basin of the whole attractor.
std::vector<basin_triple> basin_triples(const transition_system& ts, const std::vector<attractor>& attractors);

/// Triple for a group of attractors (representative set and full union).
basin_triple group_basin_triple(const transition_system& ts, const std::vector<attractor>& attractors,
                                const std::vector<std::size_t>& indices);

} // namespace basinscope
