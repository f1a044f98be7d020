#include "basinscope/stg.hpp"

#include "basinscope/error.hpp"

#include <algorithm>

namespace basinscope {

std::optional<update_mode> parse_update_mode(std::string_view text) {
  if (text == "async" || text == "asynchronous") {
    return update_mode::async;
  }
  if (text == "sync" || text == "synchronous") {
    return update_mode::sync;
  }
  return std::nullopt;
}

const char* to_string(update_mode mode) { return mode == update_mode::async ? "async" : "sync"; }

transition_system::transition_system(boolean_network net, update_mode mode, std::size_t node_limit)
    : net_(std::move(net)), mode_(mode), manager_(std::make_unique<dd_manager>(net_.size(), node_limit)) {
  auto& m = *manager_;
  space_ = net_.admissibility ? m.from_expr(*net_.admissibility) : m.constant(true);

  dd_ref unchanged = space_;
  for (std::size_t i = 0; i < net_.size(); ++i) {
    updates_.push_back(m.from_expr(net_.updates[i]));
    changes_.push_back(m.var(i) ^ updates_.back());
    unchanged -= changes_.back();
  }
  fixed_points_ = unchanged;

  if (mode_ == update_mode::async) {
    dd_ref movable = m.constant(false);
    for (std::size_t i = 0; i < net_.size(); ++i) {
      movable |= changes_[i] & flip(space_, i);
    }
    const dd_ref stuck = space_ - movable - fixed_points_;
    self_loops_ = fixed_points_ | stuck;
  } else {
    build_relation();
  }
}

big_count transition_system::space_size() const { return manager_->count_states(space_); }

dd_ref transition_system::flip(const dd_ref& states, std::size_t i) const {
  auto& m = *manager_;
  const dd_ref x = m.var(i);
  return (x & m.cofactor(states, i, false)) | (m.cofactor(states, i, true) - x);
}

dd_ref transition_system::async_image_step(const dd_ref& states, std::size_t i) const {
  return flip(states & changes_[i], i) & space_;
}

dd_ref transition_system::async_preimage_step(const dd_ref& states, std::size_t i) const {
  return changes_[i] & flip(states, i) & space_;
}

void transition_system::build_relation() const {
  auto& m = *manager_;
  const std::size_t n = net_.size();
  std::vector<dd_ref> same;
  same.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    same.push_back(!(m.var(i) ^ m.primed_var(i)));
  }
  const dd_ref space_primed = m.rename_unprimed_to_primed(space_);
  dd_ref identity = m.constant(true);
  for (std::size_t i = n; i-- > 0;) {
    identity &= same[i];
  }

  dd_ref rel = m.constant(false);
  if (mode_ == update_mode::async) {
    for (std::size_t i = 0; i < n; ++i) {
      dd_ref term = changes_[i] & (m.var(i) ^ m.primed_var(i));
      for (std::size_t j = n; j-- > 0;) {
        if (j != i) {
          term &= same[j];
        }
      }
      rel |= term;
    }
    rel = (rel & space_ & space_primed) | (self_loops_ & identity);
  } else {
    dd_ref step = m.constant(true);
    for (std::size_t i = n; i-- > 0;) {
      step &= !(m.primed_var(i) ^ updates_[i]);
    }
    step = step & space_ & space_primed;
    const dd_ref has_successor = m.and_exists_primed(step, m.constant(true));
    const dd_ref stuck = space_ - has_successor;
    // fixed points already carry their loop through f(x) = x
    self_loops_ = fixed_points_ | stuck;
    rel = step | (stuck & identity);
  }
  relation_ = rel;
}

const dd_ref& transition_system::relation() const {
  if (!relation_.valid()) {
    build_relation();
  }
  return relation_;
}

dd_ref transition_system::image_via_relation(const dd_ref& states) const {
  auto& m = *manager_;
  const dd_ref targets = m.and_exists_unprimed(relation(), states & space_);
  return m.rename_primed_to_unprimed(targets);
}

dd_ref transition_system::preimage_via_relation(const dd_ref& states) const {
  auto& m = *manager_;
  return m.and_exists_primed(relation(), m.rename_unprimed_to_primed(states & space_));
}

dd_ref transition_system::image(const dd_ref& states) const {
  if (mode_ == update_mode::sync) {
    return image_via_relation(states);
  }
  const dd_ref sources = states & space_;
  dd_ref acc = sources & self_loops_;
  for (std::size_t i = 0; i < net_.size(); ++i) {
    acc |= async_image_step(sources, i);
  }
  return acc;
}

dd_ref transition_system::preimage(const dd_ref& states) const {
  if (mode_ == update_mode::sync) {
    return preimage_via_relation(states);
  }
  const dd_ref targets = states & space_;
  dd_ref acc = targets & self_loops_;
  for (std::size_t i = 0; i < net_.size(); ++i) {
    acc |= async_preimage_step(targets, i);
  }
  return acc;
}

dd_ref transition_system::forward_reach(const dd_ref& states) const {
  dd_ref reached = states & space_;
  if (mode_ == update_mode::sync) {
    dd_ref frontier = reached;
    while (!frontier.is_false()) {
      frontier = image(frontier) - reached;
      reached |= frontier;
    }
    return reached;
  }
  // chained per-variable steps, each expanding only the states found since its last turn
  const std::size_t n = net_.size();
  std::vector<dd_ref> pending(n, reached);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (pending[i].is_false()) {
        continue;
      }
      const dd_ref fresh = async_image_step(pending[i], i) - reached;
      pending[i] = manager_->constant(false);
      if (fresh.is_false()) {
        continue;
      }
      reached |= fresh;
      for (auto& p : pending) {
        p |= fresh;
      }
      grew = true;
    }
  }
  return reached;
}

dd_ref transition_system::backward_reach(const dd_ref& states) const {
  dd_ref reached = states & space_;
  if (mode_ == update_mode::sync) {
    dd_ref frontier = reached;
    while (!frontier.is_false()) {
      frontier = preimage(frontier) - reached;
      reached |= frontier;
    }
    return reached;
  }
  const std::size_t n = net_.size();
  std::vector<dd_ref> pending(n, reached);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (pending[i].is_false()) {
        continue;
      }
      const dd_ref fresh = async_preimage_step(pending[i], i) - reached;
      pending[i] = manager_->constant(false);
      if (fresh.is_false()) {
        continue;
      }
      reached |= fresh;
      for (auto& p : pending) {
        p |= fresh;
      }
      grew = true;
    }
  }
  return reached;
}

std::vector<state> transition_system::successors(const state& x) const {
  if (x.size() != net_.size()) {
    throw domain_error("state length does not match the network");
  }
  const state fx = net_.successor(x);
  std::vector<state> out;
  if (mode_ == update_mode::sync) {
    out.push_back(net_.admissible(fx) ? fx : x);
    return out;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (fx[i] != x[i]) {
      state y = x;
      y.set(i, fx[i]);
      if (net_.admissible(y)) {
        out.push_back(std::move(y));
      }
    }
  }
  if (out.empty()) {
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace basinscope
