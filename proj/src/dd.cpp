#include "basinscope/dd.hpp"

#include "basinscope/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>
#include <utility>

namespace basinscope {

namespace {

constexpr std::uint32_t free_level = 0xfffffffeu;
constexpr std::uint32_t no_node = 0xffffffffu;

enum cache_op : std::uint32_t {
  op_and = 1,
  op_or,
  op_xor,
  op_diff,
  op_not,
  op_exists,
  op_and_exists,
  op_shift_up,
  op_shift_down,
  op_cofactor0,
  op_cofactor1,
};

inline std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

inline std::size_t hash3(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  return static_cast<std::size_t>(mix((std::uint64_t{a} << 40) ^ (std::uint64_t{b} << 20) ^ c ^ (std::uint64_t{b} >> 12) * 0x9e3779b97f4a7c15ULL));
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) {
    p <<= 1;
  }
  return p;
}

} // namespace

// ---------------------------------------------------------------- dd_ref

dd_ref::dd_ref(dd_manager* m, std::uint32_t id) : manager_(m), id_(id) { manager_->ref(id_); }

dd_ref::dd_ref(const dd_ref& other) : manager_(other.manager_), id_(other.id_) {
  if (manager_) {
    manager_->ref(id_);
  }
}

dd_ref::dd_ref(dd_ref&& other) noexcept : manager_(other.manager_), id_(other.id_) {
  other.manager_ = nullptr;
  other.id_ = 0;
}

dd_ref& dd_ref::operator=(const dd_ref& other) {
  if (this != &other) {
    if (other.manager_) {
      other.manager_->ref(other.id_);
    }
    if (manager_) {
      manager_->deref(id_);
    }
    manager_ = other.manager_;
    id_ = other.id_;
  }
  return *this;
}

dd_ref& dd_ref::operator=(dd_ref&& other) noexcept {
  if (this != &other) {
    if (manager_) {
      manager_->deref(id_);
    }
    manager_ = other.manager_;
    id_ = other.id_;
    other.manager_ = nullptr;
    other.id_ = 0;
  }
  return *this;
}

dd_ref::~dd_ref() {
  if (manager_) {
    manager_->deref(id_);
  }
}

dd_ref dd_ref::operator&(const dd_ref& g) const { return manager_->apply(dd_op::conj, *this, g); }
dd_ref dd_ref::operator|(const dd_ref& g) const { return manager_->apply(dd_op::disj, *this, g); }
dd_ref dd_ref::operator^(const dd_ref& g) const { return manager_->apply(dd_op::exclusive_or, *this, g); }
dd_ref dd_ref::operator-(const dd_ref& g) const { return manager_->apply(dd_op::difference, *this, g); }
dd_ref dd_ref::operator!() const { return manager_->negate(*this); }

// ---------------------------------------------------------------- manager basics

dd_manager::dd_manager(std::size_t num_vars, std::size_t node_limit)
    : num_vars_(num_vars), node_limit_(node_limit), gc_threshold_(std::min<std::size_t>(node_limit - node_limit / 4, 1u << 20)) {
  if (num_vars == 0) {
    throw domain_error("decision-diagram manager needs at least one variable");
  }
  if (2 * num_vars >= free_level) {
    throw domain_error("too many variables");
  }
  nodes_.push_back({terminal_level, 0, 0, no_node, 1});
  nodes_.push_back({terminal_level, 1, 1, no_node, 1});
  buckets_.assign(1u << 16, no_node);
  cache_.assign(1u << 18, cache_entry{0, 0, 0, 0, 0});

  std::vector<std::uint32_t> primed_levels;
  std::vector<std::uint32_t> unprimed_levels;
  for (std::size_t i = 0; i < num_vars_; ++i) {
    unprimed_levels.push_back(static_cast<std::uint32_t>(2 * i));
    primed_levels.push_back(static_cast<std::uint32_t>(2 * i + 1));
  }
  all_primed_cube_ = wrap(level_cube(primed_levels));
  all_unprimed_cube_ = wrap(level_cube(unprimed_levels));
}

dd_manager::~dd_manager() = default;

dd_ref dd_manager::wrap(std::uint32_t id) { return dd_ref(this, id); }

void dd_manager::ref(std::uint32_t id) noexcept { ++nodes_[id].refs; }

void dd_manager::deref(std::uint32_t id) noexcept { --nodes_[id].refs; }

void dd_manager::check_owner(const dd_ref& f) const {
  if (f.manager_ != this) {
    throw domain_error("decision diagram belongs to a different manager");
  }
}

dd_ref dd_manager::constant(bool value) { return wrap(value ? 1 : 0); }

dd_ref dd_manager::var(std::size_t i) {
  if (i >= num_vars_) {
    throw domain_error("variable index out of range");
  }
  return wrap(make_node(static_cast<std::uint32_t>(2 * i), 0, 1));
}

dd_ref dd_manager::primed_var(std::size_t i) {
  if (i >= num_vars_) {
    throw domain_error("variable index out of range");
  }
  return wrap(make_node(static_cast<std::uint32_t>(2 * i + 1), 0, 1));
}

dd_manager::node_view dd_manager::node(std::uint32_t id) const {
  const auto& n = nodes_.at(id);
  return {n.level, n.low, n.high};
}

std::vector<std::uint32_t> dd_manager::live_node_ids() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t id = 2; id < nodes_.size(); ++id) {
    if (nodes_[id].level != free_level) {
      out.push_back(id);
    }
  }
  return out;
}

// ---------------------------------------------------------------- unique table

void dd_manager::rehash(std::size_t bucket_count) {
  buckets_.assign(bucket_count, no_node);
  const std::size_t mask = bucket_count - 1;
  for (std::uint32_t id = 2; id < nodes_.size(); ++id) {
    auto& n = nodes_[id];
    if (n.level == free_level) {
      continue;
    }
    const std::size_t b = hash3(n.level, n.low, n.high) & mask;
    n.next = buckets_[b];
    buckets_[b] = id;
  }
  const std::size_t cache_size = std::clamp<std::size_t>(bucket_count / 2, 1u << 18, 1u << 23);
  if (cache_size != cache_.size()) {
    cache_.assign(cache_size, cache_entry{0, 0, 0, 0, 0});
  }
}

std::uint32_t dd_manager::make_node(std::uint32_t level, std::uint32_t low, std::uint32_t high) {
  if (low == high) {
    return low;
  }
  const std::size_t mask = buckets_.size() - 1;
  const std::size_t b = hash3(level, low, high) & mask;
  for (std::uint32_t id = buckets_[b]; id != no_node; id = nodes_[id].next) {
    const auto& n = nodes_[id];
    if (n.level == level && n.low == low && n.high == high) {
      return id;
    }
  }
  if (live_nodes() >= node_limit_) {
    throw resource_error("decision-diagram node limit of " + std::to_string(node_limit_) + " nodes exceeded");
  }
  std::uint32_t id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
    nodes_[id] = {level, low, high, buckets_[b], 0};
  } else {
    id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({level, low, high, buckets_[b], 0});
  }
  buckets_[b] = id;
  if (live_nodes() > 2 * buckets_.size()) {
    rehash(buckets_.size() * 4);
  }
  return id;
}

void dd_manager::maybe_gc() {
  if (live_nodes() <= gc_threshold_) {
    return;
  }
  collect_garbage();
  if (live_nodes() * 2 > gc_threshold_) {
    gc_threshold_ = std::min(gc_threshold_ * 2, node_limit_ - node_limit_ / 4);
  }
}

void dd_manager::collect_garbage() {
  std::vector<bool> marked(nodes_.size(), false);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t id = 2; id < nodes_.size(); ++id) {
    if (nodes_[id].level != free_level && nodes_[id].refs > 0) {
      stack.push_back(id);
    }
  }
  while (!stack.empty()) {
    const std::uint32_t id = stack.back();
    stack.pop_back();
    if (id < 2 || marked[id]) {
      continue;
    }
    marked[id] = true;
    stack.push_back(nodes_[id].low);
    stack.push_back(nodes_[id].high);
  }
  for (std::uint32_t id = 2; id < nodes_.size(); ++id) {
    if (nodes_[id].level != free_level && !marked[id]) {
      nodes_[id].level = free_level;
      free_.push_back(id);
    }
  }
  // reuse low ids first so node numbering stays compact
  std::sort(free_.begin(), free_.end(), std::greater<>());
  rehash(std::max<std::size_t>(next_pow2(live_nodes() + 1), 1u << 16));
  std::fill(cache_.begin(), cache_.end(), cache_entry{0, 0, 0, 0, 0});
  ++gc_runs_;
}

// ---------------------------------------------------------------- cache

bool dd_manager::cache_lookup(std::uint32_t op, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                              std::uint32_t& out) const {
  const auto& e = cache_[(hash3(a, b, c) ^ (std::size_t{op} * 0x9e3779b9u)) & (cache_.size() - 1)];
  if (e.op == op && e.a == a && e.b == b && e.c == c) {
    out = e.result;
    return true;
  }
  return false;
}

void dd_manager::cache_store(std::uint32_t op, std::uint32_t a, std::uint32_t b, std::uint32_t c,
                             std::uint32_t result) {
  cache_[(hash3(a, b, c) ^ (std::size_t{op} * 0x9e3779b9u)) & (cache_.size() - 1)] = {op, a, b, c, result};
}

// ---------------------------------------------------------------- apply

std::uint32_t dd_manager::apply_rec(dd_op op, std::uint32_t f, std::uint32_t g) {
  switch (op) {
  case dd_op::conj:
    if (f == 0 || g == 0) return 0;
    if (f == 1) return g;
    if (g == 1 || f == g) return f;
    if (f > g) std::swap(f, g);
    break;
  case dd_op::disj:
    if (f == 1 || g == 1) return 1;
    if (f == 0) return g;
    if (g == 0 || f == g) return f;
    if (f > g) std::swap(f, g);
    break;
  case dd_op::exclusive_or:
    if (f == g) return 0;
    if (f == 0) return g;
    if (g == 0) return f;
    if (f == 1) return not_rec(g);
    if (g == 1) return not_rec(f);
    if (f > g) std::swap(f, g);
    break;
  case dd_op::difference:
    if (f == 0 || g == 1 || f == g) return 0;
    if (g == 0) return f;
    if (f == 1) return not_rec(g);
    break;
  }

  const auto code = op_and + static_cast<std::uint32_t>(op);
  std::uint32_t result;
  if (cache_lookup(code, f, g, 0, result)) {
    return result;
  }
  const std::uint32_t lf = level_of(f);
  const std::uint32_t lg = level_of(g);
  const std::uint32_t top = std::min(lf, lg);
  const std::uint32_t f0 = lf == top ? nodes_[f].low : f;
  const std::uint32_t f1 = lf == top ? nodes_[f].high : f;
  const std::uint32_t g0 = lg == top ? nodes_[g].low : g;
  const std::uint32_t g1 = lg == top ? nodes_[g].high : g;
  const std::uint32_t low = apply_rec(op, f0, g0);
  const std::uint32_t high = apply_rec(op, f1, g1);
  result = make_node(top, low, high);
  cache_store(code, f, g, 0, result);
  return result;
}

std::uint32_t dd_manager::not_rec(std::uint32_t f) {
  if (f < 2) {
    return 1 - f;
  }
  std::uint32_t result;
  if (cache_lookup(op_not, f, 0, 0, result)) {
    return result;
  }
  const auto n = nodes_[f];
  const std::uint32_t low = not_rec(n.low);
  const std::uint32_t high = not_rec(n.high);
  result = make_node(n.level, low, high);
  cache_store(op_not, f, 0, 0, result);
  return result;
}

dd_ref dd_manager::apply(dd_op op, const dd_ref& f, const dd_ref& g) {
  check_owner(f);
  check_owner(g);
  maybe_gc();
  return wrap(apply_rec(op, f.id_, g.id_));
}

dd_ref dd_manager::negate(const dd_ref& f) {
  check_owner(f);
  maybe_gc();
  return wrap(not_rec(f.id_));
}

dd_ref dd_manager::ite(const dd_ref& c, const dd_ref& t, const dd_ref& e) {
  return (c & t) | (e - c);
}

// ---------------------------------------------------------------- quantification

std::uint32_t dd_manager::level_cube(std::vector<std::uint32_t> levels) {
  std::sort(levels.begin(), levels.end());
  std::uint32_t cube = 1;
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    cube = make_node(*it, 0, cube);
  }
  return cube;
}

std::uint32_t dd_manager::exists_rec(std::uint32_t f, std::uint32_t cube) {
  if (f < 2) {
    return f;
  }
  const std::uint32_t lf = level_of(f);
  while (cube != 1 && level_of(cube) < lf) {
    cube = nodes_[cube].high;
  }
  if (cube == 1) {
    return f;
  }
  std::uint32_t result;
  if (cache_lookup(op_exists, f, cube, 0, result)) {
    return result;
  }
  const auto n = nodes_[f];
  if (level_of(cube) == lf) {
    const std::uint32_t rest = nodes_[cube].high;
    const std::uint32_t low = exists_rec(n.low, rest);
    result = low == 1 ? 1 : apply_rec(dd_op::disj, low, exists_rec(n.high, rest));
  } else {
    const std::uint32_t low = exists_rec(n.low, cube);
    const std::uint32_t high = exists_rec(n.high, cube);
    result = make_node(lf, low, high);
  }
  cache_store(op_exists, f, cube, 0, result);
  return result;
}

std::uint32_t dd_manager::and_exists_rec(std::uint32_t f, std::uint32_t g, std::uint32_t cube) {
  if (f == 0 || g == 0) return 0;
  if (f == 1 && g == 1) return 1;
  if (cube == 1) return apply_rec(dd_op::conj, f, g);
  if (f == 1 || f == g) return exists_rec(g, cube);
  if (g == 1) return exists_rec(f, cube);

  const std::uint32_t lf = level_of(f);
  const std::uint32_t lg = level_of(g);
  const std::uint32_t top = std::min(lf, lg);
  while (cube != 1 && level_of(cube) < top) {
    cube = nodes_[cube].high;
  }
  if (cube == 1) {
    return apply_rec(dd_op::conj, f, g);
  }
  if (f > g) std::swap(f, g);
  std::uint32_t result;
  if (cache_lookup(op_and_exists, f, g, cube, result)) {
    return result;
  }
  const std::uint32_t lf2 = level_of(f);
  const std::uint32_t lg2 = level_of(g);
  const std::uint32_t f0 = lf2 == top ? nodes_[f].low : f;
  const std::uint32_t f1 = lf2 == top ? nodes_[f].high : f;
  const std::uint32_t g0 = lg2 == top ? nodes_[g].low : g;
  const std::uint32_t g1 = lg2 == top ? nodes_[g].high : g;
  if (level_of(cube) == top) {
    const std::uint32_t rest = nodes_[cube].high;
    const std::uint32_t low = and_exists_rec(f0, g0, rest);
    result = low == 1 ? 1 : apply_rec(dd_op::disj, low, and_exists_rec(f1, g1, rest));
  } else {
    const std::uint32_t low = and_exists_rec(f0, g0, cube);
    const std::uint32_t high = and_exists_rec(f1, g1, cube);
    result = make_node(top, low, high);
  }
  cache_store(op_and_exists, f, g, cube, result);
  return result;
}

dd_ref dd_manager::exists(std::span<const std::size_t> vars, const dd_ref& f, bool primed) {
  check_owner(f);
  maybe_gc();
  std::vector<std::uint32_t> levels;
  for (auto v : vars) {
    if (v >= num_vars_) {
      throw domain_error("variable index out of range");
    }
    levels.push_back(static_cast<std::uint32_t>(2 * v + (primed ? 1 : 0)));
  }
  const dd_ref cube = wrap(level_cube(std::move(levels)));
  return wrap(exists_rec(f.id_, cube.id_));
}

dd_ref dd_manager::and_exists_primed(const dd_ref& f, const dd_ref& g) {
  check_owner(f);
  check_owner(g);
  maybe_gc();
  return wrap(and_exists_rec(f.id_, g.id_, all_primed_cube_.id_));
}

dd_ref dd_manager::and_exists_unprimed(const dd_ref& f, const dd_ref& g) {
  check_owner(f);
  check_owner(g);
  maybe_gc();
  return wrap(and_exists_rec(f.id_, g.id_, all_unprimed_cube_.id_));
}

std::uint32_t dd_manager::cofactor_rec(std::uint32_t f, std::uint32_t level, bool value) {
  if (f < 2 || level_of(f) > level) {
    return f;
  }
  if (level_of(f) == level) {
    return value ? nodes_[f].high : nodes_[f].low;
  }
  const std::uint32_t code = value ? op_cofactor1 : op_cofactor0;
  std::uint32_t result;
  if (cache_lookup(code, f, level, 0, result)) {
    return result;
  }
  const auto n = nodes_[f];
  const std::uint32_t low = cofactor_rec(n.low, level, value);
  const std::uint32_t high = cofactor_rec(n.high, level, value);
  result = make_node(n.level, low, high);
  cache_store(code, f, level, 0, result);
  return result;
}

dd_ref dd_manager::cofactor(const dd_ref& f, std::size_t i, bool value) {
  check_owner(f);
  if (i >= num_vars_) {
    throw domain_error("variable index out of range");
  }
  maybe_gc();
  return wrap(cofactor_rec(f.id_, static_cast<std::uint32_t>(2 * i), value));
}

// ---------------------------------------------------------------- renaming

std::uint32_t dd_manager::shift_rec(std::uint32_t f, int delta) {
  if (f < 2) {
    return f;
  }
  const std::uint32_t code = delta > 0 ? op_shift_up : op_shift_down;
  std::uint32_t result;
  if (cache_lookup(code, f, 0, 0, result)) {
    return result;
  }
  const auto n = nodes_[f];
  const std::uint32_t low = shift_rec(n.low, delta);
  const std::uint32_t high = shift_rec(n.high, delta);
  result = make_node(static_cast<std::uint32_t>(static_cast<int>(n.level) + delta), low, high);
  cache_store(code, f, 0, 0, result);
  return result;
}

dd_ref dd_manager::rename_unprimed_to_primed(const dd_ref& f) {
  check_owner(f);
  if (!support(f).primed.empty()) {
    throw domain_error("rename to primed slots: diagram already references primed slots");
  }
  maybe_gc();
  return wrap(shift_rec(f.id_, +1));
}

dd_ref dd_manager::rename_primed_to_unprimed(const dd_ref& f) {
  check_owner(f);
  if (!support(f).unprimed.empty()) {
    throw domain_error("rename to unprimed slots: diagram already references unprimed slots");
  }
  maybe_gc();
  return wrap(shift_rec(f.id_, -1));
}

// ---------------------------------------------------------------- inspection

dd_manager::support_info dd_manager::support(const dd_ref& f) {
  check_owner(f);
  std::vector<bool> seen_level(2 * num_vars_, false);
  std::unordered_map<std::uint32_t, bool> visited;
  std::vector<std::uint32_t> stack{f.id_};
  while (!stack.empty()) {
    const auto id = stack.back();
    stack.pop_back();
    if (id < 2 || !visited.emplace(id, true).second) {
      continue;
    }
    seen_level[nodes_[id].level] = true;
    stack.push_back(nodes_[id].low);
    stack.push_back(nodes_[id].high);
  }
  support_info info;
  for (std::size_t l = 0; l < seen_level.size(); ++l) {
    if (seen_level[l]) {
      (l % 2 == 0 ? info.unprimed : info.primed).push_back(l / 2);
    }
  }
  return info;
}

std::size_t dd_manager::node_count(const dd_ref& f) const {
  std::unordered_map<std::uint32_t, bool> visited;
  std::vector<std::uint32_t> stack{f.id_};
  while (!stack.empty()) {
    const auto id = stack.back();
    stack.pop_back();
    if (id < 2 || !visited.emplace(id, true).second) {
      continue;
    }
    stack.push_back(nodes_[id].low);
    stack.push_back(nodes_[id].high);
  }
  return visited.size();
}

big_count dd_manager::count_states(const dd_ref& f) {
  check_owner(f);
  if (!support(f).primed.empty()) {
    throw domain_error("state count requires a diagram over unprimed slots only");
  }
  const auto n = static_cast<std::uint32_t>(num_vars_);
  auto var_of = [&](std::uint32_t id) { return id < 2 ? n : level_of(id) / 2; };
  std::unordered_map<std::uint32_t, big_count> memo;
  std::function<big_count(std::uint32_t)> rec = [&](std::uint32_t id) -> big_count {
    if (id == 0) return 0;
    if (id == 1) return 1;
    if (auto it = memo.find(id); it != memo.end()) {
      return it->second;
    }
    const auto& nd = nodes_[id];
    const std::uint32_t v = var_of(id);
    big_count low = rec(nd.low) << (var_of(nd.low) - v - 1);
    big_count high = rec(nd.high) << (var_of(nd.high) - v - 1);
    big_count total = low + high;
    memo.emplace(id, total);
    return total;
  };
  return rec(f.id_) << var_of(f.id_);
}

state dd_manager::pick_min_state(const dd_ref& f) {
  check_owner(f);
  if (f.is_false()) {
    throw domain_error("cannot pick a state from the empty set");
  }
  std::vector<std::uint8_t> bits(num_vars_, 0);
  std::uint32_t id = f.id_;
  while (id >= 2) {
    const auto& nd = nodes_[id];
    if (nd.level % 2 == 1) {
      throw domain_error("state selection requires a diagram over unprimed slots only");
    }
    if (nd.low != 0) {
      id = nd.low;
    } else {
      bits[nd.level / 2] = 1;
      id = nd.high;
    }
  }
  return state(std::move(bits));
}

bool dd_manager::contains(const dd_ref& f, const state& x) const {
  std::uint32_t id = f.id_;
  while (id >= 2) {
    const auto& nd = nodes_[id];
    id = x[nd.level / 2] ? nd.high : nd.low;
  }
  return id == 1;
}

// ---------------------------------------------------------------- construction

dd_ref dd_manager::from_state(const state& x) {
  if (x.size() != num_vars_) {
    throw domain_error("state length does not match the manager's variable count");
  }
  maybe_gc();
  std::uint32_t id = 1;
  for (std::size_t i = num_vars_; i-- > 0;) {
    const auto level = static_cast<std::uint32_t>(2 * i);
    id = x[i] ? make_node(level, 0, id) : make_node(level, id, 0);
  }
  return wrap(id);
}

dd_ref dd_manager::from_cube(const cube& c) {
  maybe_gc();
  auto lits = c.literals;
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t k = 0; k < lits.size(); ++k) {
    if (lits[k].first >= num_vars_) {
      throw domain_error("variable index out of range");
    }
    if (k > 0 && lits[k - 1].first == lits[k].first) {
      return constant(false);
    }
  }
  std::uint32_t id = 1;
  for (auto it = lits.rbegin(); it != lits.rend(); ++it) {
    const auto level = static_cast<std::uint32_t>(2 * it->first);
    id = it->second ? make_node(level, 0, id) : make_node(level, id, 0);
  }
  return wrap(id);
}

dd_ref dd_manager::from_expr(const bool_expr& e) {
  switch (e.kind()) {
  case expr_kind::constant:
    return constant(e.value());
  case expr_kind::variable:
    return var(e.index());
  case expr_kind::negation:
    return !from_expr(e.operands().front());
  case expr_kind::conjunction: {
    dd_ref acc = constant(true);
    for (const auto& op : e.operands()) {
      acc &= from_expr(op);
    }
    return acc;
  }
  case expr_kind::disjunction: {
    dd_ref acc = constant(false);
    for (const auto& op : e.operands()) {
      acc |= from_expr(op);
    }
    return acc;
  }
  }
  return constant(false);
}

// ---------------------------------------------------------------- covers and export

std::vector<cube> dd_manager::path_cubes(const dd_ref& f) {
  check_owner(f);
  std::vector<cube> out;
  cube current;
  std::function<void(std::uint32_t)> walk = [&](std::uint32_t id) {
    if (id == 0) return;
    if (id == 1) {
      out.push_back(current);
      return;
    }
    const auto nd = nodes_[id];
    const std::size_t v = nd.level / 2;
    current.literals.emplace_back(v, false);
    walk(nd.low);
    current.literals.back().second = true;
    walk(nd.high);
    current.literals.pop_back();
  };
  walk(f.id_);
  return out;
}

std::vector<cube> dd_manager::isop(const dd_ref& f) {
  check_owner(f);
  if (!support(f).primed.empty()) {
    throw domain_error("cover export requires a diagram over unprimed slots only");
  }
  maybe_gc();

  struct result {
    std::vector<cube> cover;
    std::uint32_t function;
  };
  std::map<std::pair<std::uint32_t, std::uint32_t>, result> memo;

  std::function<const result&(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t lower,
                                                                      std::uint32_t upper) -> const result& {
    const auto key = std::make_pair(lower, upper);
    if (auto it = memo.find(key); it != memo.end()) {
      return it->second;
    }
    result r;
    if (lower == 0) {
      r.function = 0;
    } else if (upper == 1) {
      r.cover.push_back(cube{});
      r.function = 1;
    } else {
      const std::uint32_t top = std::min(level_of(lower), level_of(upper));
      const std::size_t v = top / 2;
      const std::uint32_t l0 = level_of(lower) == top ? nodes_[lower].low : lower;
      const std::uint32_t l1 = level_of(lower) == top ? nodes_[lower].high : lower;
      const std::uint32_t u0 = level_of(upper) == top ? nodes_[upper].low : upper;
      const std::uint32_t u1 = level_of(upper) == top ? nodes_[upper].high : upper;

      const result r0 = rec(apply_rec(dd_op::difference, l0, u1), u0);
      const result r1 = rec(apply_rec(dd_op::difference, l1, u0), u1);
      const std::uint32_t rest_lower = apply_rec(dd_op::disj, apply_rec(dd_op::difference, l0, r0.function),
                                                 apply_rec(dd_op::difference, l1, r1.function));
      const std::uint32_t rest_upper = apply_rec(dd_op::conj, u0, u1);
      const result rs = rec(rest_lower, rest_upper);

      for (const auto& c : r0.cover) {
        cube with = c;
        with.literals.insert(with.literals.begin(), {v, false});
        r.cover.push_back(std::move(with));
      }
      for (const auto& c : r1.cover) {
        cube with = c;
        with.literals.insert(with.literals.begin(), {v, true});
        r.cover.push_back(std::move(with));
      }
      r.cover.insert(r.cover.end(), rs.cover.begin(), rs.cover.end());
      r.function = make_node(top, apply_rec(dd_op::disj, r0.function, rs.function),
                             apply_rec(dd_op::disj, r1.function, rs.function));
    }
    return memo.emplace(key, std::move(r)).first->second;
  };
  std::vector<cube> cover = rec(f.id_, f.id_).cover;
  for (auto& c : cover) {
    std::sort(c.literals.begin(), c.literals.end());
  }
  return cover;
}

std::vector<state> dd_manager::states(const dd_ref& f, std::size_t limit) {
  check_owner(f);
  const big_count total = count_states(f);
  if (total > limit) {
    throw domain_error("set has " + total.str() + " states, above the enumeration limit of " + std::to_string(limit));
  }
  std::vector<state> out;
  for (const auto& c : path_cubes(f)) {
    std::vector<std::size_t> free_vars;
    std::vector<std::uint8_t> bits(num_vars_, 0);
    std::vector<bool> fixed(num_vars_, false);
    for (const auto& [v, val] : c.literals) {
      bits[v] = val ? 1 : 0;
      fixed[v] = true;
    }
    for (std::size_t v = 0; v < num_vars_; ++v) {
      if (!fixed[v]) {
        free_vars.push_back(v);
      }
    }
    const std::size_t combos = std::size_t{1} << free_vars.size();
    for (std::size_t m = 0; m < combos; ++m) {
      for (std::size_t k = 0; k < free_vars.size(); ++k) {
        bits[free_vars[k]] = (m >> k) & 1u;
      }
      out.emplace_back(bits);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool_expr literal(std::size_t v, bool positive) {
  auto x = bool_expr::variable(v);
  return positive ? x : bool_expr::negation(std::move(x));
}

bool_expr cube_expr(const cube& c) {
  if (c.literals.empty()) {
    return bool_expr::constant(true);
  }
  std::vector<bool_expr> lits;
  for (const auto& [v, val] : c.literals) {
    lits.push_back(literal(v, val));
  }
  return bool_expr::conjunction(std::move(lits));
}

bool_expr cover_expr(const std::vector<cube>& cover) {
  if (cover.empty()) {
    return bool_expr::constant(false);
  }
  std::vector<bool_expr> terms;
  for (const auto& c : cover) {
    terms.push_back(cube_expr(c));
  }
  return bool_expr::disjunction(std::move(terms));
}

} // namespace

bool_expr dd_manager::to_expression(const dd_ref& f, expression_style style, std::size_t dnf_limit) {
  check_owner(f);
  if (!support(f).primed.empty()) {
    throw domain_error("expression export requires a diagram over unprimed slots only");
  }
  switch (style) {
  case expression_style::dnf_states: {
    std::vector<cube> cover;
    for (const auto& x : states(f, dnf_limit)) {
      cube c;
      for (std::size_t v = 0; v < num_vars_; ++v) {
        c.literals.emplace_back(v, x[v]);
      }
      cover.push_back(std::move(c));
    }
    return cover_expr(cover);
  }
  case expression_style::isop:
    return cover_expr(isop(f));
  case expression_style::factored: {
    std::unordered_map<std::uint32_t, bool_expr> memo;
    std::function<bool_expr(std::uint32_t)> rec = [&](std::uint32_t id) -> bool_expr {
      if (id < 2) {
        return bool_expr::constant(id == 1);
      }
      if (auto it = memo.find(id); it != memo.end()) {
        return it->second;
      }
      const auto nd = nodes_[id];
      const std::size_t v = nd.level / 2;
      bool_expr e;
      if (nd.high == 1 && nd.low == 0) {
        e = literal(v, true);
      } else if (nd.high == 0 && nd.low == 1) {
        e = literal(v, false);
      } else if (nd.high == 1) {
        e = bool_expr::disjunction({literal(v, true), rec(nd.low)});
      } else if (nd.low == 1) {
        e = bool_expr::disjunction({literal(v, false), rec(nd.high)});
      } else if (nd.high == 0) {
        e = bool_expr::conjunction({literal(v, false), rec(nd.low)});
      } else if (nd.low == 0) {
        e = bool_expr::conjunction({literal(v, true), rec(nd.high)});
      } else {
        e = bool_expr::disjunction({bool_expr::conjunction({literal(v, true), rec(nd.high)}),
                                    bool_expr::conjunction({literal(v, false), rec(nd.low)})});
      }
      memo.emplace(id, e);
      return e;
    };
    return rec(f.id_);
  }
  }
  return bool_expr::constant(false);
}

} // namespace basinscope
