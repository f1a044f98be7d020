#pragma once

#include "basinscope/dd.hpp"
#include "basinscope/expr.hpp"
#include "basinscope/stg.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace basinscope {

enum class ctl_kind {
  proposition, // Boolean expression over model variables
  state_set,   // an explicit symbolic set
  negation,
  conjunction,
  disjunction,
  ex,
  ef,
  eg,
  ax,
  af,
  ag,
  eu,
  au,
};

/// CTL formula tree. Purely propositional subtrees are folded into a
/// single `proposition` node when built through the factory functions.
class ctl_formula {
public:
  static ctl_formula proposition(bool_expr e);
  static ctl_formula states(dd_ref set);
  static ctl_formula negation(ctl_formula f);
  static ctl_formula conjunction(ctl_formula a, ctl_formula b);
  static ctl_formula disjunction(ctl_formula a, ctl_formula b);
  static ctl_formula unary(ctl_kind temporal, ctl_formula f);
  static ctl_formula until(bool universal, ctl_formula lhs, ctl_formula rhs);

  static ctl_formula EX(ctl_formula f) { return unary(ctl_kind::ex, std::move(f)); }
  static ctl_formula EF(ctl_formula f) { return unary(ctl_kind::ef, std::move(f)); }
  static ctl_formula EG(ctl_formula f) { return unary(ctl_kind::eg, std::move(f)); }
  static ctl_formula AX(ctl_formula f) { return unary(ctl_kind::ax, std::move(f)); }
  static ctl_formula AF(ctl_formula f) { return unary(ctl_kind::af, std::move(f)); }
  static ctl_formula AG(ctl_formula f) { return unary(ctl_kind::ag, std::move(f)); }

  ctl_kind kind() const noexcept { return kind_; }
  const bool_expr& expression() const noexcept { return expr_; }
  const dd_ref& set() const noexcept { return set_; }
  const std::vector<ctl_formula>& operands() const noexcept { return operands_; }

  std::string to_string(std::span<const std::string> names) const;

private:
  ctl_kind kind_ = ctl_kind::proposition;
  bool_expr expr_;
  dd_ref set_;
  std::vector<ctl_formula> operands_;
};

/// Parse `EF`, `AF`, `AG`, `EX`, `AX`, `EG`, `E[φ U ψ]`, `A[φ U ψ]`, `!`,
/// `&`, `|`, parentheses, variable names and the constants 0/1.
/// Errors carry the column of the offending token.
ctl_formula parse_ctl(std::string_view text, const variable_table& vars);

/// Accepting states with their cardinality and an exported expression.
struct accept_result {
  dd_ref states;
  big_count count;
  bool_expr expression;
};

/// {x in space | x ⊨ φ}.
dd_ref accepting_states(const transition_system& ts, const ctl_formula& formula);

accept_result accept(const transition_system& ts, const ctl_formula& formula,
                     expression_style style = expression_style::isop);

/// Classical yes/no query: initial ⊆ Accept(φ).
bool holds_initially(const transition_system& ts, const ctl_formula& formula, const dd_ref& initial);

} // namespace basinscope
