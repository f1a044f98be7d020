#pragma once

#include "basinscope/expr.hpp"

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace basinscope {

/// Ordered, unique variable names. Declaration order is the bit order of
/// state strings and the decision-diagram variable order.
class variable_table {
public:
  variable_table() = default;
  explicit variable_table(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::span<const std::string> names() const noexcept { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;

  static bool valid_identifier(std::string_view name);

  friend bool operator==(const variable_table& a, const variable_table& b) { return a.names_ == b.names_; }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// One 0/1 value per variable.
class state {
public:
  state() = default;
  explicit state(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  /// Bit string in declaration order, e.g. "10".
  std::string to_string() const;

  friend auto operator<=>(const state&, const state&) = default;
  friend bool operator==(const state&, const state&) = default;

private:
  std::vector<std::uint8_t> bits_;
};

struct boolean_network {
  variable_table variables;
  std::vector<bool_expr> updates;
  /// Restriction of the state space; absent means every state is admissible.
  std::optional<bool_expr> admissibility;

  std::size_t size() const noexcept { return variables.size(); }

  /// Variables whose update is the variable itself (`x, x`).
  std::vector<std::size_t> inputs() const;

  /// Values of all update functions at `x`.
  state successor(const state& x) const;

  bool admissible(const state& x) const;

  friend bool operator==(const boolean_network&, const boolean_network&) = default;
};

boolean_network parse_bnet(std::istream& in);
boolean_network parse_bnet(std::string_view text);
boolean_network read_bnet_file(const std::string& path);

/// Render back to .bnet; parsing the result yields an equal network
/// (admissibility is not part of the format and is dropped).
std::string to_bnet(const boolean_network& net);

/// Parse a Boolean expression over the network's variable names.
bool_expr parse_expression(std::string_view text, const variable_table& vars);

/// Add the admissibility constraint !(x_high & !x_medium) for every
/// booleanized pair x_medium/x_high. Idempotent.
boolean_network detect_van_ham_pairs(boolean_network net);

state state_from_string(const boolean_network& net, std::string_view bits);

} // namespace basinscope
