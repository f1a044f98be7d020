#pragma once

// Reduced ordered binary decision diagrams.
//
// A manager owns 2n variable slots for n model variables, interleaved as
// x0, x0', x1, x1', ... (unprimed slot of variable i at level 2i, primed
// slot at level 2i+1). Nodes are hash-consed through a unique table, so
// two handles denote the same function iff they hold the same node id.
// Handles are reference counted; unreferenced nodes are reclaimed by a
// mark-and-sweep pass that only runs at the entry of a public operation.
//
// A manager and its handles belong to a single thread of control.

#include "basinscope/expr.hpp"
#include "basinscope/model.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace basinscope {

using big_count = boost::multiprecision::cpp_int;

class dd_manager;

/// Handle to a node of a dd_manager.
class dd_ref {
public:
  dd_ref() = default;
  dd_ref(const dd_ref& other);
  dd_ref(dd_ref&& other) noexcept;
  dd_ref& operator=(const dd_ref& other);
  dd_ref& operator=(dd_ref&& other) noexcept;
  ~dd_ref();

  bool valid() const noexcept { return manager_ != nullptr; }
  std::uint32_t id() const noexcept { return id_; }
  dd_manager* manager() const noexcept { return manager_; }

  bool is_false() const noexcept { return id_ == 0; }
  bool is_true() const noexcept { return id_ == 1; }

  dd_ref operator&(const dd_ref& g) const;
  dd_ref operator|(const dd_ref& g) const;
  dd_ref operator^(const dd_ref& g) const;
  /// Set difference, this & !g.
  dd_ref operator-(const dd_ref& g) const;
  dd_ref operator!() const;
  dd_ref& operator&=(const dd_ref& g) { return *this = *this & g; }
  dd_ref& operator|=(const dd_ref& g) { return *this = *this | g; }
  dd_ref& operator-=(const dd_ref& g) { return *this = *this - g; }

  /// this ⊆ g
  bool implies(const dd_ref& g) const { return (*this - g).is_false(); }
  bool intersects(const dd_ref& g) const { return !(*this & g).is_false(); }

  friend bool operator==(const dd_ref& a, const dd_ref& b) noexcept {
    return a.manager_ == b.manager_ && a.id_ == b.id_;
  }

private:
  friend class dd_manager;
  dd_ref(dd_manager* m, std::uint32_t id);

  dd_manager* manager_ = nullptr;
  std::uint32_t id_ = 0;
};

enum class dd_op : std::uint32_t { conj, disj, exclusive_or, difference };

/// A product term: (variable index, polarity) pairs sorted by variable.
struct cube {
  std::vector<std::pair<std::size_t, bool>> literals;
  friend bool operator==(const cube&, const cube&) = default;
};

enum class expression_style { dnf_states, factored, isop };

class dd_manager {
public:
  static constexpr std::size_t default_node_limit = std::size_t{1} << 24;
  static constexpr std::size_t default_dnf_limit = 4096;

  explicit dd_manager(std::size_t num_vars, std::size_t node_limit = default_node_limit);
  dd_manager(const dd_manager&) = delete;
  dd_manager& operator=(const dd_manager&) = delete;
  ~dd_manager();

  std::size_t num_vars() const noexcept { return num_vars_; }

  dd_ref constant(bool value);
  dd_ref var(std::size_t i);
  dd_ref primed_var(std::size_t i);

  dd_ref apply(dd_op op, const dd_ref& f, const dd_ref& g);
  dd_ref negate(const dd_ref& f);
  dd_ref ite(const dd_ref& c, const dd_ref& t, const dd_ref& e);

  /// Existential quantification over the unprimed (or primed) slots of `vars`.
  dd_ref exists(std::span<const std::size_t> vars, const dd_ref& f, bool primed = false);
  /// ∃ all primed slots. f ∧ g, fused.
  dd_ref and_exists_primed(const dd_ref& f, const dd_ref& g);
  /// ∃ all unprimed slots. f ∧ g, fused.
  dd_ref and_exists_unprimed(const dd_ref& f, const dd_ref& g);

  /// f with variable i fixed to `value` (unprimed slot).
  dd_ref cofactor(const dd_ref& f, std::size_t i, bool value);

  /// Move every unprimed slot to its primed partner; f must not reference primed slots.
  dd_ref rename_unprimed_to_primed(const dd_ref& f);
  /// Inverse of rename_unprimed_to_primed; f must not reference unprimed slots.
  dd_ref rename_primed_to_unprimed(const dd_ref& f);

  /// Number of satisfying assignments over the n unprimed model variables.
  big_count count_states(const dd_ref& f);
  /// Lexicographically smallest satisfying state (variable 0 first, 0 < 1).
  state pick_min_state(const dd_ref& f);

  dd_ref from_state(const state& x);
  dd_ref from_cube(const cube& c);
  dd_ref from_expr(const bool_expr& e);
  bool contains(const dd_ref& f, const state& x) const;

  /// Irredundant sum-of-products cover of f (Minato–Morreale).
  std::vector<cube> isop(const dd_ref& f);
  /// Disjoint cubes along the diagram's paths to TRUE.
  std::vector<cube> path_cubes(const dd_ref& f);
  /// All satisfying states, refused above `limit`.
  std::vector<state> states(const dd_ref& f, std::size_t limit = default_dnf_limit);

  bool_expr to_expression(const dd_ref& f, expression_style style, std::size_t dnf_limit = default_dnf_limit);

  /// Model-variable indices referenced by f, split by polarity.
  struct support_info {
    std::vector<std::size_t> unprimed;
    std::vector<std::size_t> primed;
  };
  support_info support(const dd_ref& f);

  std::size_t node_count(const dd_ref& f) const;
  std::size_t live_nodes() const noexcept { return nodes_.size() - free_.size(); }
  std::size_t node_limit() const noexcept { return node_limit_; }
  std::size_t gc_runs() const noexcept { return gc_runs_; }

  /// Reclaim unreferenced nodes and drop the operation cache.
  void collect_garbage();

  // Structural access used by invariant checks.
  struct node_view {
    std::uint32_t level;
    std::uint32_t low;
    std::uint32_t high;
  };
  node_view node(std::uint32_t id) const;
  static constexpr std::uint32_t terminal_level = 0xffffffffu;
  /// Visit every live internal node.
  std::vector<std::uint32_t> live_node_ids() const;

private:
  friend class dd_ref;

  struct node_entry {
    std::uint32_t level;
    std::uint32_t low;
    std::uint32_t high;
    std::uint32_t next;
    std::uint32_t refs;
  };

  struct cache_entry {
    std::uint32_t op;
    std::uint32_t a;
    std::uint32_t b;
    std::uint32_t c;
    std::uint32_t result;
  };

  dd_ref wrap(std::uint32_t id);
  void check_owner(const dd_ref& f) const;
  void maybe_gc();

  std::uint32_t make_node(std::uint32_t level, std::uint32_t low, std::uint32_t high);
  std::uint32_t level_of(std::uint32_t id) const { return nodes_[id].level; }

  bool cache_lookup(std::uint32_t op, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t& out) const;
  void cache_store(std::uint32_t op, std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t result);

  std::uint32_t apply_rec(dd_op op, std::uint32_t f, std::uint32_t g);
  std::uint32_t not_rec(std::uint32_t f);
  std::uint32_t exists_rec(std::uint32_t f, std::uint32_t cube);
  std::uint32_t and_exists_rec(std::uint32_t f, std::uint32_t g, std::uint32_t cube);
  std::uint32_t shift_rec(std::uint32_t f, int delta);
  std::uint32_t cofactor_rec(std::uint32_t f, std::uint32_t level, bool value);
  std::uint32_t level_cube(std::vector<std::uint32_t> levels);
  void rehash(std::size_t bucket_count);

  void ref(std::uint32_t id) noexcept;
  void deref(std::uint32_t id) noexcept;

  std::size_t num_vars_;
  std::size_t node_limit_;
  std::vector<node_entry> nodes_;
  std::vector<std::uint32_t> free_;
  std::vector<std::uint32_t> buckets_;
  std::vector<cache_entry> cache_;
  std::size_t gc_threshold_;
  std::size_t gc_runs_ = 0;
  dd_ref all_primed_cube_;
  dd_ref all_unprimed_cube_;
};

} // namespace basinscope
