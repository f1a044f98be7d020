#include "basinscope/expr.hpp"

#include <algorithm>
#include <utility>

namespace basinscope {

bool_expr bool_expr::constant(bool value) {
  bool_expr e;
  e.kind_ = expr_kind::constant;
  e.value_ = value;
  return e;
}

bool_expr bool_expr::variable(std::size_t index) {
  bool_expr e;
  e.kind_ = expr_kind::variable;
  e.index_ = index;
  return e;
}

bool_expr bool_expr::negation(bool_expr operand) {
  bool_expr e;
  e.kind_ = expr_kind::negation;
  e.operands_.push_back(std::move(operand));
  return e;
}

namespace {

bool_expr make_nary(expr_kind kind, std::vector<bool_expr> operands) {
  std::vector<bool_expr> flat;
  flat.reserve(operands.size());
  for (auto& op : operands) {
    if (op.kind() == kind) {
      for (const auto& inner : op.operands()) {
        flat.push_back(inner);
      }
    } else {
      flat.push_back(std::move(op));
    }
  }
  if (flat.empty()) {
    return bool_expr::constant(kind == expr_kind::conjunction);
  }
  if (flat.size() == 1) {
    return std::move(flat.front());
  }
  return kind == expr_kind::conjunction ? bool_expr::conjunction(std::move(flat))
                                        : bool_expr::disjunction(std::move(flat));
}

} // namespace

bool_expr bool_expr::conjunction(std::vector<bool_expr> operands) {
  const bool flat = operands.size() >= 2 && std::none_of(operands.begin(), operands.end(), [](const bool_expr& op) {
                      return op.kind() == expr_kind::conjunction;
                    });
  if (!flat) {
    return make_nary(expr_kind::conjunction, std::move(operands));
  }
  bool_expr e;
  e.kind_ = expr_kind::conjunction;
  e.operands_ = std::move(operands);
  return e;
}

bool_expr bool_expr::disjunction(std::vector<bool_expr> operands) {
  const bool flat = operands.size() >= 2 && std::none_of(operands.begin(), operands.end(), [](const bool_expr& op) {
                      return op.kind() == expr_kind::disjunction;
                    });
  if (!flat) {
    return make_nary(expr_kind::disjunction, std::move(operands));
  }
  bool_expr e;
  e.kind_ = expr_kind::disjunction;
  e.operands_ = std::move(operands);
  return e;
}

std::size_t bool_expr::variable_bound() const {
  std::size_t bound = kind_ == expr_kind::variable ? index_ + 1 : 0;
  for (const auto& op : operands_) {
    bound = std::max(bound, op.variable_bound());
  }
  return bound;
}

std::size_t bool_expr::size() const {
  std::size_t n = 1;
  for (const auto& op : operands_) {
    n += op.size();
  }
  return n;
}

namespace {

// 0 = or, 1 = and, 2 = unary/atom
int precedence(const bool_expr& e) {
  switch (e.kind()) {
  case expr_kind::disjunction:
    return 0;
  case expr_kind::conjunction:
    return 1;
  default:
    return 2;
  }
}

void render(const bool_expr& e, std::span<const std::string> names, std::string& out) {
  switch (e.kind()) {
  case expr_kind::constant:
    out += e.value() ? '1' : '0';
    return;
  case expr_kind::variable:
    out += names[e.index()];
    return;
  case expr_kind::negation: {
    const auto& inner = e.operands().front();
    out += '!';
    if (precedence(inner) < 2) {
      out += '(';
      render(inner, names, out);
      out += ')';
    } else {
      render(inner, names, out);
    }
    return;
  }
  case expr_kind::conjunction:
  case expr_kind::disjunction: {
    const char* sep = e.kind() == expr_kind::conjunction ? " & " : " | ";
    const int own = precedence(e);
    bool first = true;
    for (const auto& op : e.operands()) {
      if (!first) {
        out += sep;
      }
      first = false;
      if (precedence(op) <= own) {
        out += '(';
        render(op, names, out);
        out += ')';
      } else {
        render(op, names, out);
      }
    }
    return;
  }
  }
}

} // namespace

std::string to_string(const bool_expr& expr, std::span<const std::string> names) {
  std::string out;
  render(expr, names, out);
  return out;
}

} // namespace basinscope
