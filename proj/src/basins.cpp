#include "basinscope/basins.hpp"

#include "basinscope/ctl.hpp"
#include "basinscope/error.hpp"

namespace basinscope {

set_size measure(const transition_system& ts, const dd_ref& set) {
  set_size s;
  s.states = ts.manager().count_states(set);
  const big_count total = ts.space_size();
  if (total > 0) {
    s.percent = 100.0 * static_cast<double>(s.states.convert_to<long double>() / total.convert_to<long double>());
  }
  return s;
}

namespace {

void require_nonempty(const dd_ref& set, const char* what) {
  if (set.is_false()) {
    throw domain_error(std::string(what) + " requires a non-empty state set");
  }
}

} // namespace

dd_ref weak_basin(const transition_system& ts, const dd_ref& representatives) {
  require_nonempty(representatives, "weak basin");
  return accepting_states(ts, ctl_formula::EF(ctl_formula::states(representatives)));
}

dd_ref strong_basin(const transition_system& ts, const dd_ref& representatives) {
  require_nonempty(representatives, "strong basin");
  return accepting_states(ts, ctl_formula::AG(ctl_formula::EF(ctl_formula::states(representatives))));
}

dd_ref cycle_free_basin(const transition_system& ts, const dd_ref& attractor_states) {
  require_nonempty(attractor_states, "cycle-free basin");
  return accepting_states(ts, ctl_formula::AF(ctl_formula::states(attractor_states)));
}

basin_triple group_basin_triple(const transition_system& ts, const std::vector<attractor>& attractors,
                                const std::vector<std::size_t>& indices) {
  auto& m = ts.manager();
  dd_ref reps = m.constant(false);
  dd_ref full = m.constant(false);
  for (auto idx : indices) {
    if (idx == 0 || idx > attractors.size()) {
      throw domain_error("attractor index " + std::to_string(idx) + " out of range");
    }
    const auto& a = attractors[idx - 1];
    reps |= representative_set(ts, a);
    full |= a.states;
  }
  basin_triple t;
  t.attractor_indices = indices;
  t.weak = weak_basin(ts, reps);
  t.strong = strong_basin(ts, reps);
  t.cycle_free = cycle_free_basin(ts, full);
  t.weak_size = measure(ts, t.weak);
  t.strong_size = measure(ts, t.strong);
  t.cycle_free_size = measure(ts, t.cycle_free);
  return t;
}

std::vector<basin_triple> basin_triples(const transition_system& ts, const std::vector<attractor>& attractors) {
  if (attractors.empty()) {
    throw domain_error("basin computation requires at least one attractor");
  }
  std::vector<basin_triple> out;
  out.reserve(attractors.size());
  for (const auto& a : attractors) {
    out.push_back(group_basin_triple(ts, attractors, {a.index}));
  }
  return out;
}

} // namespace basinscope
