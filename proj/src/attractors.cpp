#include "basinscope/attractors.hpp"

#include "basinscope/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>
#include <random>

namespace basinscope {

const char* to_string(attractor_kind kind) { return kind == attractor_kind::steady ? "steady" : "cyclic"; }

dd_ref steady_states(const transition_system& ts) { return ts.fixed_points(); }

namespace {

attractor make_attractor(const transition_system& ts, dd_ref states, bool verified) {
  attractor a;
  a.size = ts.manager().count_states(states);
  a.representative = ts.manager().pick_min_state(states);
  a.kind = a.size == 1 ? attractor_kind::steady : attractor_kind::cyclic;
  a.states = std::move(states);
  a.verified = verified;
  return a;
}

void canonicalize(std::vector<attractor>& list) {
  std::sort(list.begin(), list.end(),
            [](const attractor& a, const attractor& b) { return a.representative < b.representative; });
  list.erase(std::unique(list.begin(), list.end(), [](const attractor& a, const attractor& b) { return a.states == b.states; }),
             list.end());
  for (std::size_t i = 0; i < list.size(); ++i) {
    list[i].index = i + 1;
  }
}

// Deterministic random descent along explicit transitions. It lands in or
// near a terminal SCC, which shortens the symbolic pivot chain.
state descend(const transition_system& ts, state x) {
  std::mt19937_64 rng(0x5eed);
  const std::size_t steps = 16 * ts.num_vars();
  for (std::size_t k = 0; k < steps; ++k) {
    const auto next = ts.successors(x);
    if (next.size() == 1 && next.front() == x) {
      break;
    }
    x = next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)];
  }
  return x;
}

} // namespace

std::vector<attractor> find_attractors(const transition_system& ts) {
  auto& m = ts.manager();
  std::vector<attractor> found;

  // steady states are terminal SCCs on their own
  const dd_ref fixed = ts.fixed_points();
  dd_ref candidates = ts.space();
  if (!fixed.is_false()) {
    const dd_ref basins = ts.backward_reach(fixed);
    for (const auto& x : m.states(fixed, std::numeric_limits<std::size_t>::max())) {
      found.push_back(make_attractor(ts, m.from_state(x), true));
    }
    candidates -= basins;
  }

  dd_ref preferred = m.constant(false);
  while (!candidates.is_false()) {
    // candidates and preferred stay forward-closed: both are a trap set minus backward-closed sets
    const dd_ref pool = preferred.intersects(candidates) ? preferred & candidates : candidates;
    const state pivot = descend(ts, m.pick_min_state(pool));
    const dd_ref pivot_set = m.from_state(pivot);
    const dd_ref forward = ts.forward_reach(pivot_set);
    const dd_ref backward = ts.backward_reach(pivot_set);
    const dd_ref scc = forward & backward;
    if (forward == scc) {
      found.push_back(make_attractor(ts, scc, true));
      preferred -= backward;
    } else {
      // no state that reaches a non-terminal SCC lies in an attractor
      preferred = forward - backward;
    }
    candidates -= backward;
  }
  canonicalize(found);
  return found;
}

std::vector<attractor> import_attractors(const transition_system& ts, const std::vector<attractor_seed>& seeds) {
  auto& m = ts.manager();
  std::vector<attractor> out;
  for (const auto& seed : seeds) {
    if (const auto* x = std::get_if<state>(&seed)) {
      const dd_ref point = m.from_state(*x);
      if (!point.implies(ts.space())) {
        throw domain_error("attractor seed " + x->to_string() + " is not an admissible state");
      }
      const dd_ref forward = ts.forward_reach(point);
      const dd_ref scc = forward & ts.backward_reach(point);
      const dd_ref escape = ts.image(scc) - scc;
      if (!escape.is_false()) {
        const state target = m.pick_min_state(escape);
        const state source = m.pick_min_state(scc & ts.preimage(m.from_state(target)));
        throw domain_error("SCC of seed " + x->to_string() + " is not terminal: transition " + source.to_string() +
                           " -> " + target.to_string() + " escapes it");
      }
      out.push_back(make_attractor(ts, scc, true));
    } else {
      const auto& pattern = std::get<subspace>(seed);
      const dd_ref set = m.from_cube(pattern) & ts.space();
      if (set.is_false()) {
        throw domain_error("attractor subspace seed contains no admissible state");
      }
      out.push_back(make_attractor(ts, set, false));
    }
  }
  canonicalize(out);
  return out;
}

std::vector<attractor_seed> parse_attractor_seeds(std::string_view json_text, const boolean_network& net) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("attractor file is not valid JSON: ") + e.what(), 1);
  }
  if (!doc.is_array()) {
    throw parse_error("attractor file must contain a JSON list", 1);
  }
  std::vector<attractor_seed> seeds;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const auto& item = doc[k];
    if (item.is_string()) {
      seeds.emplace_back(state_from_string(net, item.get<std::string>()));
    } else if (item.is_object()) {
      subspace pattern;
      for (const auto& [name, value] : item.items()) {
        const auto idx = net.variables.find(name);
        if (!idx) {
          throw parse_error("attractor entry " + std::to_string(k) + " names unknown variable '" + name + "'", 1);
        }
        int v = -1;
        if (value.is_number_integer()) {
          v = value.get<int>();
        } else if (value.is_boolean()) {
          v = value.get<bool>() ? 1 : 0;
        } else if (value.is_string() && (value == "0" || value == "1")) {
          v = value == "1" ? 1 : 0;
        }
        if (v != 0 && v != 1) {
          throw parse_error("attractor entry " + std::to_string(k) + " assigns a non-Boolean value to '" + name + "'", 1);
        }
        pattern.literals.emplace_back(*idx, v == 1);
      }
      std::sort(pattern.literals.begin(), pattern.literals.end());
      seeds.emplace_back(std::move(pattern));
    } else {
      throw parse_error("attractor entry " + std::to_string(k) + " must be a bit string or an object", 1);
    }
  }
  return seeds;
}

dd_ref attractor_union(const transition_system& ts, const std::vector<attractor>& attractors) {
  dd_ref acc = ts.manager().constant(false);
  for (const auto& a : attractors) {
    acc |= a.states;
  }
  return acc;
}

dd_ref representative_set(const transition_system& ts, const attractor& a) {
  return a.verified ? ts.manager().from_state(a.representative) : a.states;
}

} // namespace basinscope
