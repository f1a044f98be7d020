#pragma once

#include "basinscope/model.hpp"
#include "basinscope/stg.hpp"
#include "oracle/explicit_stg.hpp"

#include <random>
#include <string>
#include <vector>

namespace testing_support {

using basinscope::bool_expr;

inline bool_expr random_expr(std::mt19937_64& rng, const std::vector<std::size_t>& regulators, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  const int r = pick(rng);
  if (depth == 0 || r < 3) {
    const std::size_t v = regulators[std::uniform_int_distribution<std::size_t>(0, regulators.size() - 1)(rng)];
    bool_expr leaf = bool_expr::variable(v);
    return (rng() & 1u) ? bool_expr::negation(leaf) : leaf;
  }
  if (r < 4) {
    return bool_expr::negation(random_expr(rng, regulators, depth - 1));
  }
  std::vector<bool_expr> ops{random_expr(rng, regulators, depth - 1), random_expr(rng, regulators, depth - 1)};
  return r < 7 ? bool_expr::conjunction(std::move(ops)) : bool_expr::disjunction(std::move(ops));
}

struct network_shape {
  std::size_t n = 6;
  double input_share = 0.15; // chance that a variable is an input (x, x)
  std::size_t max_regulators = 3;
  int depth = 3;
  bool van_ham_pair = false; // name two variables p_medium / p_high
};

inline basinscope::boolean_network random_network(std::mt19937_64& rng, const network_shape& shape) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < shape.n; ++i) {
    names.push_back("v" + std::to_string(i));
  }
  if (shape.van_ham_pair && shape.n >= 2) {
    names[0] = "p_medium";
    names[1] = "p_high";
  }
  basinscope::boolean_network net;
  net.variables = basinscope::variable_table(names);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> var(0, shape.n - 1);
  std::uniform_int_distribution<std::size_t> count(1, shape.max_regulators);
  for (std::size_t i = 0; i < shape.n; ++i) {
    if (unit(rng) < shape.input_share) {
      net.updates.push_back(bool_expr::variable(i));
      continue;
    }
    std::vector<std::size_t> regs;
    const std::size_t k = count(rng);
    for (std::size_t j = 0; j < k; ++j) {
      regs.push_back(var(rng));
    }
    net.updates.push_back(random_expr(rng, regs, shape.depth));
  }
  if (shape.van_ham_pair) {
    net = basinscope::detect_van_ham_pairs(std::move(net));
  }
  return net;
}

inline basinscope::state state_of(oracle::code x, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) {
    bits[i] = oracle::bit(x, n, i) ? 1 : 0;
  }
  return basinscope::state(std::move(bits));
}

inline oracle::bitset to_bitset(const basinscope::transition_system& ts, const basinscope::dd_ref& set) {
  const std::size_t n = ts.num_vars();
  oracle::bitset out(std::size_t{1} << n, 0);
  for (oracle::code x = 0; x < out.size(); ++x) {
    out[x] = ts.manager().contains(set, state_of(x, n)) ? 1 : 0;
  }
  return out;
}

inline basinscope::dd_ref from_codes(const basinscope::transition_system& ts, const std::vector<oracle::code>& xs) {
  auto& m = ts.manager();
  basinscope::dd_ref out = m.constant(false);
  for (auto x : xs) {
    out |= m.from_state(state_of(x, ts.num_vars()));
  }
  return out;
}

inline basinscope::dd_ref from_bitset(const basinscope::transition_system& ts, const oracle::bitset& set) {
  std::vector<oracle::code> xs;
  for (oracle::code x = 0; x < set.size(); ++x) {
    if (set[x]) {
      xs.push_back(x);
    }
  }
  return from_codes(ts, xs);
}

inline std::vector<std::string> strings(const basinscope::transition_system& ts, const basinscope::dd_ref& set) {
  std::vector<std::string> out;
  for (const auto& s : ts.manager().states(set, 1u << 20)) {
    out.push_back(s.to_string());
  }
  return out;
}

} // namespace testing_support
