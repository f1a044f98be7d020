#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace basinscope {

enum class expr_kind { constant, variable, negation, conjunction, disjunction };

/// Boolean expression tree over variable indices.
///
/// Conjunctions and disjunctions are n-ary and kept flat: building a
/// conjunction whose argument is itself a conjunction splices the
/// argument's children in place, so `(a & b) & c` and `a & (b & c)`
/// produce the same tree.
class bool_expr {
public:
  bool_expr() = default;

  static bool_expr constant(bool value);
  static bool_expr variable(std::size_t index);
  static bool_expr negation(bool_expr operand);
  static bool_expr conjunction(std::vector<bool_expr> operands);
  static bool_expr disjunction(std::vector<bool_expr> operands);

  expr_kind kind() const noexcept { return kind_; }
  bool value() const noexcept { return value_; }
  std::size_t index() const noexcept { return index_; }
  const std::vector<bool_expr>& operands() const noexcept { return operands_; }

  /// Evaluate with `bit(i)` giving the value of variable i.
  template <class BitFn>
  bool evaluate_with(BitFn&& bit) const {
    switch (kind_) {
    case expr_kind::constant:
      return value_;
    case expr_kind::variable:
      return static_cast<bool>(bit(index_));
    case expr_kind::negation:
      return !operands_.front().evaluate_with(bit);
    case expr_kind::conjunction:
      for (const auto& op : operands_) {
        if (!op.evaluate_with(bit)) {
          return false;
        }
      }
      return true;
    case expr_kind::disjunction:
      for (const auto& op : operands_) {
        if (op.evaluate_with(bit)) {
          return true;
        }
      }
      return false;
    }
    return false;
  }

  bool evaluate(std::span<const std::uint8_t> bits) const {
    return evaluate_with([bits](std::size_t i) { return bits[i] != 0; });
  }

  /// Largest referenced variable index + 1 (0 when none is referenced).
  std::size_t variable_bound() const;

  /// Number of nodes in the tree.
  std::size_t size() const;

  friend bool operator==(const bool_expr&, const bool_expr&) = default;

private:
  expr_kind kind_ = expr_kind::constant;
  bool value_ = false;
  std::size_t index_ = 0;
  std::vector<bool_expr> operands_;
};

/// Render in .bnet expression syntax (`!`, `&`, `|`, parentheses, `0`/`1`).
std::string to_string(const bool_expr& expr, std::span<const std::string> names);

} // namespace basinscope
