#include "basinscope/ctl.hpp"

#include "basinscope/error.hpp"
#include "scanner.hpp"

#include <array>

namespace basinscope {

// ---------------------------------------------------------------- formula

ctl_formula ctl_formula::proposition(bool_expr e) {
  ctl_formula f;
  f.kind_ = ctl_kind::proposition;
  f.expr_ = std::move(e);
  return f;
}

ctl_formula ctl_formula::states(dd_ref set) {
  ctl_formula f;
  f.kind_ = ctl_kind::state_set;
  f.set_ = std::move(set);
  return f;
}

ctl_formula ctl_formula::negation(ctl_formula inner) {
  if (inner.kind_ == ctl_kind::proposition) {
    return proposition(bool_expr::negation(std::move(inner.expr_)));
  }
  ctl_formula f;
  f.kind_ = ctl_kind::negation;
  f.operands_.push_back(std::move(inner));
  return f;
}

ctl_formula ctl_formula::conjunction(ctl_formula a, ctl_formula b) {
  if (a.kind_ == ctl_kind::proposition && b.kind_ == ctl_kind::proposition) {
    return proposition(bool_expr::conjunction({std::move(a.expr_), std::move(b.expr_)}));
  }
  ctl_formula f;
  f.kind_ = ctl_kind::conjunction;
  f.operands_.push_back(std::move(a));
  f.operands_.push_back(std::move(b));
  return f;
}

ctl_formula ctl_formula::disjunction(ctl_formula a, ctl_formula b) {
  if (a.kind_ == ctl_kind::proposition && b.kind_ == ctl_kind::proposition) {
    return proposition(bool_expr::disjunction({std::move(a.expr_), std::move(b.expr_)}));
  }
  ctl_formula f;
  f.kind_ = ctl_kind::disjunction;
  f.operands_.push_back(std::move(a));
  f.operands_.push_back(std::move(b));
  return f;
}

ctl_formula ctl_formula::unary(ctl_kind temporal, ctl_formula inner) {
  switch (temporal) {
  case ctl_kind::ex:
  case ctl_kind::ef:
  case ctl_kind::eg:
  case ctl_kind::ax:
  case ctl_kind::af:
  case ctl_kind::ag:
    break;
  default:
    throw domain_error("not a unary temporal operator");
  }
  ctl_formula f;
  f.kind_ = temporal;
  f.operands_.push_back(std::move(inner));
  return f;
}

ctl_formula ctl_formula::until(bool universal, ctl_formula lhs, ctl_formula rhs) {
  ctl_formula f;
  f.kind_ = universal ? ctl_kind::au : ctl_kind::eu;
  f.operands_.push_back(std::move(lhs));
  f.operands_.push_back(std::move(rhs));
  return f;
}

namespace {

// operand of a prefix operator; conjunctions, disjunctions and compound
// propositions already print with their own parentheses
std::string prefixed(const char* op, const ctl_formula& operand, std::span<const std::string> names) {
  const std::string inner = operand.to_string(names);
  const bool wrapped = operand.kind() == ctl_kind::conjunction || operand.kind() == ctl_kind::disjunction ||
                       (operand.kind() == ctl_kind::proposition && inner.front() == '(');
  if (wrapped || (op[0] == '!' && operand.kind() != ctl_kind::proposition)) {
    return op + inner;
  }
  return std::string(op) + "(" + inner + ")";
}

} // namespace

std::string ctl_formula::to_string(std::span<const std::string> names) const {
  switch (kind_) {
  case ctl_kind::proposition: {
    const std::string text = basinscope::to_string(expr_, names);
    const bool compound = expr_.kind() == expr_kind::conjunction || expr_.kind() == expr_kind::disjunction;
    return compound ? "(" + text + ")" : text;
  }
  case ctl_kind::state_set:
    return "<states>";
  case ctl_kind::negation:
    return prefixed("!", operands_[0], names);
  case ctl_kind::conjunction:
    return "(" + operands_[0].to_string(names) + " & " + operands_[1].to_string(names) + ")";
  case ctl_kind::disjunction:
    return "(" + operands_[0].to_string(names) + " | " + operands_[1].to_string(names) + ")";
  case ctl_kind::ex:
    return prefixed("EX", operands_[0], names);
  case ctl_kind::ef:
    return prefixed("EF", operands_[0], names);
  case ctl_kind::eg:
    return prefixed("EG", operands_[0], names);
  case ctl_kind::ax:
    return prefixed("AX", operands_[0], names);
  case ctl_kind::af:
    return prefixed("AF", operands_[0], names);
  case ctl_kind::ag:
    return prefixed("AG", operands_[0], names);
  case ctl_kind::eu:
    return "E[" + operands_[0].to_string(names) + " U " + operands_[1].to_string(names) + "]";
  case ctl_kind::au:
    return "A[" + operands_[0].to_string(names) + " U " + operands_[1].to_string(names) + "]";
  }
  return {};
}

// ---------------------------------------------------------------- parser

namespace {

using detail::token;
using detail::token_kind;

struct temporal_keyword {
  const char* text;
  ctl_kind kind;
};

constexpr std::array<temporal_keyword, 6> temporal_keywords{{
    {"EX", ctl_kind::ex},
    {"EF", ctl_kind::ef},
    {"EG", ctl_kind::eg},
    {"AX", ctl_kind::ax},
    {"AF", ctl_kind::af},
    {"AG", ctl_kind::ag},
}};

class ctl_parser {
public:
  ctl_parser(std::string_view text, const variable_table& vars) : tokens_(detail::tokenize(text, 1)), vars_(vars) {}

  ctl_formula parse_all() {
    auto f = parse_or();
    if (peek().kind != token_kind::end) {
      fail("unexpected " + std::string(detail::describe(peek().kind)));
    }
    return f;
  }

private:
  const token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, 1, peek().column); }

  void expect(token_kind kind) {
    if (peek().kind != kind) {
      fail(std::string("expected ") + detail::describe(kind) + ", found " + detail::describe(peek().kind));
    }
    ++pos_;
  }

  ctl_formula parse_or() {
    auto f = parse_and();
    while (peek().kind == token_kind::bar) {
      ++pos_;
      f = ctl_formula::disjunction(std::move(f), parse_and());
    }
    return f;
  }

  ctl_formula parse_and() {
    auto f = parse_unary();
    while (peek().kind == token_kind::amp) {
      ++pos_;
      f = ctl_formula::conjunction(std::move(f), parse_unary());
    }
    return f;
  }

  bool starts_operand(std::size_t ahead) const {
    const auto k = peek(ahead).kind;
    return k == token_kind::lparen || k == token_kind::bang || k == token_kind::identifier ||
           k == token_kind::constant;
  }

  ctl_formula parse_unary() {
    const token& t = peek();
    switch (t.kind) {
    case token_kind::bang:
      ++pos_;
      return ctl_formula::negation(parse_unary());
    case token_kind::lparen: {
      ++pos_;
      auto f = parse_or();
      expect(token_kind::rparen);
      return f;
    }
    case token_kind::constant:
      ++pos_;
      return ctl_formula::proposition(bool_expr::constant(t.text == "1"));
    case token_kind::identifier:
      return parse_identifier();
    default:
      fail("unexpected " + std::string(detail::describe(t.kind)));
    }
  }

  ctl_formula parse_identifier() {
    const token& t = peek();
    if ((t.text == "E" || t.text == "A") && peek(1).kind == token_kind::lbracket) {
      const bool universal = t.text == "A";
      pos_ += 2;
      auto lhs = parse_or();
      if (peek().kind != token_kind::identifier || peek().text != "U") {
        fail("expected 'U' in until formula");
      }
      ++pos_;
      auto rhs = parse_or();
      expect(token_kind::rbracket);
      return ctl_formula::until(universal, std::move(lhs), std::move(rhs));
    }
    for (const auto& kw : temporal_keywords) {
      if (t.text == kw.text && starts_operand(1)) {
        ++pos_;
        return ctl_formula::unary(kw.kind, parse_unary());
      }
    }
    if (const auto idx = vars_.find(t.text)) {
      ++pos_;
      return ctl_formula::proposition(bool_expr::variable(*idx));
    }
    if (t.text == "TRUE" || t.text == "FALSE") {
      ++pos_;
      return ctl_formula::proposition(bool_expr::constant(t.text == "TRUE"));
    }
    fail("undeclared variable '" + t.text + "' in atom");
  }

  std::vector<token> tokens_;
  const variable_table& vars_;
  std::size_t pos_ = 0;
};

} // namespace

ctl_formula parse_ctl(std::string_view text, const variable_table& vars) { return ctl_parser(text, vars).parse_all(); }

// ---------------------------------------------------------------- evaluation

namespace {

class evaluator {
public:
  explicit evaluator(const transition_system& ts) : ts_(ts), m_(ts.manager()), space_(ts.space()) {}

  dd_ref eval(const ctl_formula& f) {
    switch (f.kind()) {
    case ctl_kind::proposition:
      if (f.expression().variable_bound() > ts_.num_vars()) {
        throw domain_error("formula references an undeclared variable");
      }
      return m_.from_expr(f.expression()) & space_;
    case ctl_kind::state_set:
      if (f.set().manager() != &m_) {
        throw domain_error("state-set atom belongs to a different manager");
      }
      if (!m_.support(f.set()).primed.empty()) {
        throw domain_error("state-set atom references primed slots");
      }
      return f.set() & space_;
    case ctl_kind::negation:
      return space_ - eval(f.operands()[0]);
    case ctl_kind::conjunction:
      return eval(f.operands()[0]) & eval(f.operands()[1]);
    case ctl_kind::disjunction:
      return eval(f.operands()[0]) | eval(f.operands()[1]);
    case ctl_kind::ex:
      return ts_.preimage(eval(f.operands()[0]));
    case ctl_kind::ef:
      return exists_finally(eval(f.operands()[0]));
    case ctl_kind::eg:
      return exists_globally(eval(f.operands()[0]));
    case ctl_kind::ax:
      return space_ - ts_.preimage(space_ - eval(f.operands()[0]));
    case ctl_kind::af:
      return space_ - exists_globally(space_ - eval(f.operands()[0]));
    case ctl_kind::ag:
      return space_ - exists_finally(space_ - eval(f.operands()[0]));
    case ctl_kind::eu:
      return exists_until(eval(f.operands()[0]), eval(f.operands()[1]));
    case ctl_kind::au: {
      const dd_ref lhs = eval(f.operands()[0]);
      const dd_ref rhs = eval(f.operands()[1]);
      const dd_ref not_rhs = space_ - rhs;
      const dd_ref bad = exists_until(not_rhs, not_rhs - lhs) | exists_globally(not_rhs);
      return space_ - bad;
    }
    }
    return m_.constant(false);
  }

private:
  // lfp Z = φ ∨ EX Z, i.e. the backward closure of φ
  dd_ref exists_finally(const dd_ref& target) { return ts_.backward_reach(target); }

  // gfp Z = φ ∧ EX Z
  dd_ref exists_globally(const dd_ref& invariant) {
    dd_ref z = invariant;
    for (;;) {
      const dd_ref next = invariant & ts_.preimage(z);
      if (next == z) {
        return z;
      }
      z = next;
    }
  }

  // lfp Z = ψ ∨ (φ ∧ EX Z)
  dd_ref exists_until(const dd_ref& lhs, const dd_ref& rhs) {
    dd_ref z = rhs;
    dd_ref frontier = rhs;
    while (!frontier.is_false()) {
      frontier = (lhs & ts_.preimage(frontier)) - z;
      z |= frontier;
    }
    return z;
  }

  const transition_system& ts_;
  dd_manager& m_;
  dd_ref space_;
};

} // namespace

dd_ref accepting_states(const transition_system& ts, const ctl_formula& formula) {
  return evaluator(ts).eval(formula);
}

accept_result accept(const transition_system& ts, const ctl_formula& formula, expression_style style) {
  accept_result r;
  r.states = accepting_states(ts, formula);
  r.count = ts.manager().count_states(r.states);
  r.expression = ts.manager().to_expression(r.states, style);
  return r;
}

bool holds_initially(const transition_system& ts, const ctl_formula& formula, const dd_ref& initial) {
  return (initial & ts.space()).implies(accepting_states(ts, formula));
}

} // namespace basinscope
