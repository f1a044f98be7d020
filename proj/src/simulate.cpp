#include "basinscope/diagrams.hpp"
#include "basinscope/error.hpp"

#include <algorithm>
#include <random>
#include <thread>

namespace basinscope {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Plain-data view of the dynamics; safe to share between walker threads.
struct walker_model {
  const boolean_network* net = nullptr;
  update_mode mode = update_mode::async;
  std::vector<std::vector<cube>> attractor_covers; // by attractor position
  std::vector<std::size_t> phenotype_of_attractor; // position -> phenotype position
  std::vector<std::size_t> inputs;
  std::uint64_t step_cap = 0;

  std::optional<std::size_t> attractor_at(const std::vector<std::uint8_t>& x) const {
    for (std::size_t a = 0; a < attractor_covers.size(); ++a) {
      for (const auto& c : attractor_covers[a]) {
        const bool hit = std::all_of(c.literals.begin(), c.literals.end(),
                                     [&](const auto& lit) { return (x[lit.first] != 0) == lit.second; });
        if (hit) {
          return a;
        }
      }
    }
    return std::nullopt;
  }

  bool admissible(const std::vector<std::uint8_t>& x) const {
    return !net->admissibility || net->admissibility->evaluate(x);
  }
};

struct walk_outcome {
  std::optional<std::size_t> phenotype;
};

walk_outcome run_walk(const walker_model& model, std::uint64_t walk, const simulation_options& options) {
  std::mt19937_64 rng(splitmix64(options.seed ^ splitmix64(walk)));
  const std::size_t n = model.net->size();
  std::vector<std::uint8_t> x(n);

  // uniform admissible start, inputs fixed per stratum when requested
  const std::size_t m = model.inputs.size();
  const bool stratified = options.stratify_inputs && m > 0 && m < 63;
  const std::uint64_t stratum = stratified ? walk % (std::uint64_t{1} << m) : 0;
  for (std::uint64_t attempt = 0;; ++attempt) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<std::uint8_t>(rng() & 1u);
    }
    if (stratified) {
      for (std::size_t k = 0; k < m; ++k) {
        x[model.inputs[k]] = static_cast<std::uint8_t>((stratum >> k) & 1u);
      }
    }
    if (model.admissible(x)) {
      break;
    }
    if (attempt > 10'000'000) {
      return {};
    }
  }

  std::vector<std::size_t> moves;
  std::vector<std::uint8_t> fx(n);
  for (std::uint64_t step = 0; step <= model.step_cap; ++step) {
    if (const auto a = model.attractor_at(x)) {
      return {model.phenotype_of_attractor[*a]};
    }
    for (std::size_t i = 0; i < n; ++i) {
      fx[i] = model.net->updates[i].evaluate(x) ? 1 : 0;
    }
    if (model.mode == update_mode::sync) {
      if (!model.admissible(fx)) {
        return {}; // stuck outside every known attractor
      }
      x = fx;
      continue;
    }
    moves.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (fx[i] != x[i]) {
        x[i] = fx[i];
        if (model.admissible(x)) {
          moves.push_back(i);
        }
        x[i] = static_cast<std::uint8_t>(1 - fx[i]);
      }
    }
    if (moves.empty()) {
      return {};
    }
    const std::size_t pick = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
    x[pick] = fx[pick];
  }
  return {};
}

} // namespace

simulation_result simulate_phenotype_reachability(const transition_system& ts, const std::vector<attractor>& attractors,
                                                  const std::vector<phenotype>& phenos,
                                                  const simulation_options& options) {
  if (options.walks == 0) {
    throw domain_error("simulation needs at least one walk");
  }
  if (attractors.empty() || phenos.empty()) {
    throw domain_error("simulation needs at least one attractor and phenotype");
  }
  if (ts.space().is_false()) {
    throw domain_error("the admissible state space is empty");
  }

  walker_model model;
  model.net = &ts.network();
  model.mode = ts.mode();
  model.inputs = ts.network().inputs();
  model.step_cap = std::uint64_t{64} << std::min<std::size_t>(ts.num_vars(), 20);
  model.phenotype_of_attractor.assign(attractors.size(), 0);
  for (const auto& a : attractors) {
    model.attractor_covers.push_back(ts.manager().isop(a.states));
  }
  for (std::size_t p = 0; p < phenos.size(); ++p) {
    for (auto idx : phenos[p].attractor_indices) {
      model.phenotype_of_attractor.at(idx - 1) = p;
    }
  }

  unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, options.walks));

  std::vector<std::vector<std::uint64_t>> partial_counts(threads, std::vector<std::uint64_t>(phenos.size(), 0));
  std::vector<std::uint64_t> partial_capped(threads, 0);
  auto work = [&](unsigned t) {
    for (std::uint64_t w = t; w < options.walks; w += threads) {
      const auto outcome = run_walk(model, w, options);
      if (outcome.phenotype) {
        ++partial_counts[t][*outcome.phenotype];
      } else {
        ++partial_capped[t];
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) {
    pool.emplace_back(work, t);
  }
  work(0);
  for (auto& th : pool) {
    th.join();
  }

  simulation_result r;
  r.walks = options.walks;
  r.step_cap = model.step_cap;
  r.counts.assign(phenos.size(), 0);
  for (unsigned t = 0; t < threads; ++t) {
    for (std::size_t p = 0; p < phenos.size(); ++p) {
      r.counts[p] += partial_counts[t][p];
    }
    r.capped += partial_capped[t];
  }
  const std::uint64_t completed = r.walks - r.capped;
  for (auto c : r.counts) {
    r.frequencies.push_back(completed == 0 ? 0.0 : static_cast<double>(c) / static_cast<double>(completed));
  }
  return r;
}

} // namespace basinscope
