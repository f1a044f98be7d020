#include "basinscope/model.hpp"

#include "basinscope/error.hpp"
#include "scanner.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace basinscope {

variable_table::variable_table(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) {
    throw domain_error("variable table must not be empty");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!valid_identifier(names_[i])) {
      throw domain_error("invalid variable name '" + names_[i] + "'");
    }
    if (!index_.emplace(names_[i], i).second) {
      throw domain_error("duplicate variable name '" + names_[i] + "'");
    }
  }
}

std::optional<std::size_t> variable_table::find(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

bool variable_table::valid_identifier(std::string_view name) {
  if (name.empty()) {
    return false;
  }
  const auto head = static_cast<unsigned char>(name.front());
  if (!std::isalpha(head) && head != '_') {
    return false;
  }
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string state::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) {
    s += b ? '1' : '0';
  }
  return s;
}

std::vector<std::size_t> boolean_network::inputs() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < updates.size(); ++i) {
    const auto& f = updates[i];
    if (f.kind() == expr_kind::variable && f.index() == i) {
      out.push_back(i);
    }
  }
  return out;
}

state boolean_network::successor(const state& x) const {
  std::vector<std::uint8_t> bits(updates.size());
  for (std::size_t i = 0; i < updates.size(); ++i) {
    bits[i] = updates[i].evaluate(x.bits()) ? 1 : 0;
  }
  return state(std::move(bits));
}

bool boolean_network::admissible(const state& x) const {
  return !admissibility || admissibility->evaluate(x.bits());
}

namespace {

using detail::token;
using detail::token_kind;

class expression_parser {
public:
  expression_parser(std::string_view text, const variable_table& vars, std::size_t line, std::size_t column_offset)
      : tokens_(detail::tokenize(text, line)), vars_(vars), line_(line), offset_(column_offset) {}

  bool_expr parse_all() {
    auto e = parse_or();
    if (peek().kind != token_kind::end) {
      fail("unexpected " + std::string(detail::describe(peek().kind)));
    }
    return e;
  }

private:
  const token& peek() const { return tokens_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw parse_error(what, line_, peek().column + offset_);
  }

  bool_expr parse_or() {
    std::vector<bool_expr> ops;
    ops.push_back(parse_and());
    while (peek().kind == token_kind::bar) {
      ++pos_;
      ops.push_back(parse_and());
    }
    return ops.size() == 1 ? std::move(ops.front()) : bool_expr::disjunction(std::move(ops));
  }

  bool_expr parse_and() {
    std::vector<bool_expr> ops;
    ops.push_back(parse_unary());
    while (peek().kind == token_kind::amp) {
      ++pos_;
      ops.push_back(parse_unary());
    }
    return ops.size() == 1 ? std::move(ops.front()) : bool_expr::conjunction(std::move(ops));
  }

  bool_expr parse_unary() {
    const token& t = peek();
    switch (t.kind) {
    case token_kind::bang:
      ++pos_;
      return bool_expr::negation(parse_unary());
    case token_kind::lparen: {
      ++pos_;
      auto e = parse_or();
      if (peek().kind != token_kind::rparen) {
        fail("expected ')'");
      }
      ++pos_;
      return e;
    }
    case token_kind::constant:
      ++pos_;
      return bool_expr::constant(t.text == "1");
    case token_kind::identifier: {
      const auto idx = vars_.find(t.text);
      if (!idx) {
        fail("variable '" + t.text + "' is referenced but never declared as a target");
      }
      ++pos_;
      return bool_expr::variable(*idx);
    }
    default:
      fail("unexpected " + std::string(detail::describe(t.kind)));
    }
  }

  std::vector<token> tokens_;
  const variable_table& vars_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

struct raw_line {
  std::size_t number;
  std::string target;
  std::string expression;
  std::size_t expression_column;
};

bool is_header(std::string_view target, std::string_view expression) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
  };
  return lower(target) == "targets" && lower(expression) == "factors";
}

} // namespace

boolean_network parse_bnet(std::istream& in) {
  std::vector<raw_line> lines;
  std::string buffer;
  std::size_t number = 0;
  bool header_allowed = true;
  while (std::getline(in, buffer)) {
    ++number;
    std::string_view line = buffer;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto content = trim(line);
    if (content.empty()) {
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw parse_error("expected 'target, expression'", number, line.find_first_not_of(" \t") + 1);
    }
    const auto target = trim(line.substr(0, comma));
    const auto expression = line.substr(comma + 1);
    if (header_allowed && is_header(target, trim(expression))) {
      header_allowed = false;
      continue;
    }
    header_allowed = false;
    if (!variable_table::valid_identifier(target)) {
      throw parse_error("invalid target name '" + std::string(target) + "'", number, 1);
    }
    lines.push_back({number, std::string(target), std::string(expression), comma + 1});
  }
  if (lines.empty()) {
    throw parse_error("network has no variables", number == 0 ? 1 : number);
  }

  std::vector<std::string> names;
  std::unordered_map<std::string, std::size_t> first_line;
  for (const auto& l : lines) {
    if (const auto [it, fresh] = first_line.emplace(l.target, l.number); !fresh) {
      throw parse_error("duplicate target '" + l.target + "' (first declared on line " + std::to_string(it->second) + ")",
                        l.number, 1);
    }
    names.push_back(l.target);
  }

  boolean_network net;
  net.variables = variable_table(std::move(names));
  net.updates.reserve(lines.size());
  for (const auto& l : lines) {
    net.updates.push_back(expression_parser(l.expression, net.variables, l.number, l.expression_column).parse_all());
  }
  return net;
}

boolean_network parse_bnet(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_bnet(in);
}

boolean_network read_bnet_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw domain_error("cannot open network file '" + path + "'");
  }
  return parse_bnet(in);
}

std::string to_bnet(const boolean_network& net) {
  std::string out;
  for (std::size_t i = 0; i < net.size(); ++i) {
    out += net.variables.name(i);
    out += ", ";
    out += to_string(net.updates[i], net.variables.names());
    out += '\n';
  }
  return out;
}

bool_expr parse_expression(std::string_view text, const variable_table& vars) {
  return expression_parser(text, vars, 1, 0).parse_all();
}

boolean_network detect_van_ham_pairs(boolean_network net) {
  static constexpr std::string_view medium_suffix = "_medium";
  static constexpr std::string_view high_suffix = "_high";

  std::vector<bool_expr> constraints;
  if (net.admissibility) {
    if (net.admissibility->kind() == expr_kind::conjunction) {
      constraints = net.admissibility->operands();
    } else {
      constraints.push_back(*net.admissibility);
    }
  }
  const std::size_t before = constraints.size();

  for (std::size_t i = 0; i < net.size(); ++i) {
    const std::string& name = net.variables.name(i);
    if (name.size() <= medium_suffix.size() || !name.ends_with(medium_suffix)) {
      continue;
    }
    const std::string stem = name.substr(0, name.size() - medium_suffix.size());
    const auto high = net.variables.find(stem + std::string(high_suffix));
    if (!high) {
      continue;
    }
    // level encoding 0 -> (0,0), 1 -> (1,0), 2 -> (1,1); (medium=0, high=1) is not a level
    auto constraint = bool_expr::negation(
        bool_expr::conjunction({bool_expr::variable(*high), bool_expr::negation(bool_expr::variable(i))}));
    if (std::find(constraints.begin(), constraints.end(), constraint) == constraints.end()) {
      constraints.push_back(std::move(constraint));
    }
  }

  if (constraints.size() != before) {
    net.admissibility = constraints.size() == 1 ? constraints.front() : bool_expr::conjunction(std::move(constraints));
  }
  return net;
}

state state_from_string(const boolean_network& net, std::string_view bits) {
  if (bits.size() != net.size()) {
    throw parse_error("state string has length " + std::to_string(bits.size()) + ", expected " +
                          std::to_string(net.size()),
                      1);
  }
  std::vector<std::uint8_t> values(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') {
      throw parse_error("illegal character '" + std::string(1, bits[i]) + "' in state string", 1, i + 1);
    }
    values[i] = bits[i] == '1' ? 1 : 0;
  }
  return state(std::move(values));
}

} // namespace basinscope
