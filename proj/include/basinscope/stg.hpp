#pragma once

#include "basinscope/dd.hpp"
#include "basinscope/model.hpp"

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace basinscope {

enum class update_mode { async, sync };

std::optional<update_mode> parse_update_mode(std::string_view text);
const char* to_string(update_mode mode);

/// Symbolic state transition graph of a Boolean network.
///
/// ASYNC: x -> y iff y differs from x in exactly one variable i and
/// y_i = f_i(x). SYNC: x -> f(x). States with f(x) = x carry a self-loop.
/// Everything is restricted to the admissible space; an admissible state
/// whose successors are all inadmissible gets a self-loop, so the
/// relation is total on the space.
class transition_system {
public:
  transition_system(boolean_network net, update_mode mode, std::size_t node_limit = dd_manager::default_node_limit);

  dd_manager& manager() const noexcept { return *manager_; }
  const boolean_network& network() const noexcept { return net_; }
  update_mode mode() const noexcept { return mode_; }
  std::size_t num_vars() const noexcept { return net_.size(); }

  /// Admissible states (TRUE when unrestricted).
  const dd_ref& space() const noexcept { return space_; }
  big_count space_size() const;
  /// Admissible states with f(x) = x.
  const dd_ref& fixed_points() const noexcept { return fixed_points_; }
  /// Admissible states that carry a self-loop.
  const dd_ref& self_loops() const noexcept { return self_loops_; }

  /// Transition relation over unprimed (source) and primed (target) slots.
  const dd_ref& relation() const;

  dd_ref image(const dd_ref& states) const;
  dd_ref preimage(const dd_ref& states) const;
  /// Same sets computed through the monolithic relation.
  dd_ref image_via_relation(const dd_ref& states) const;
  dd_ref preimage_via_relation(const dd_ref& states) const;

  dd_ref forward_reach(const dd_ref& states) const;
  dd_ref backward_reach(const dd_ref& states) const;

  /// Explicit successors of one admissible state, sorted; used by the simulator.
  std::vector<state> successors(const state& x) const;

private:
  dd_ref flip(const dd_ref& states, std::size_t i) const;
  dd_ref async_image_step(const dd_ref& states, std::size_t i) const;
  dd_ref async_preimage_step(const dd_ref& states, std::size_t i) const;
  void build_relation() const;

  boolean_network net_;
  update_mode mode_;
  std::unique_ptr<dd_manager> manager_;
  dd_ref space_;
  std::vector<dd_ref> updates_;
  std::vector<dd_ref> changes_;
  dd_ref fixed_points_;
  mutable dd_ref self_loops_;
  mutable dd_ref relation_;
};

} // namespace basinscope
