#include "basinscope/ctl.hpp"
#include "basinscope/error.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace basinscope;
using namespace testing_support;

namespace {

const char* const toggle = "a, !b\nb, !a";

dd_ref set_of(const transition_system& ts, std::initializer_list<const char*> bits) {
  std::vector<oracle::code> xs;
  for (const char* b : bits) {
    xs.push_back(oracle::from_bits(b));
  }
  return from_codes(ts, xs);
}

// Random formula over propositions of depth at most `depth`, paired with its
// explicit meaning.
struct random_formula {
  ctl_formula formula;
  oracle::bitset meaning;
};

random_formula make_formula(std::mt19937_64& rng, const transition_system& ts, const oracle::graph& g, int depth) {
  const int pick = static_cast<int>(rng() % 13);
  if (depth == 0 || pick < 2) {
    std::vector<std::size_t> all(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
      all[i] = i;
    }
    const bool_expr e = random_expr(rng, all, 2);
    oracle::bitset s = oracle::empty(g);
    for (oracle::code x = 0; x < g.size; ++x) {
      s[x] = g.space[x] && g.eval(e, x);
    }
    return {ctl_formula::proposition(e), s};
  }
  auto a = make_formula(rng, ts, g, depth - 1);
  switch (pick) {
  case 2:
    return {ctl_formula::negation(a.formula), oracle::complement(g, a.meaning)};
  case 3: {
    auto b = make_formula(rng, ts, g, depth - 1);
    return {ctl_formula::conjunction(a.formula, b.formula), oracle::intersect(a.meaning, b.meaning)};
  }
  case 4: {
    auto b = make_formula(rng, ts, g, depth - 1);
    return {ctl_formula::disjunction(a.formula, b.formula), oracle::unite(a.meaning, b.meaning)};
  }
  case 5:
    return {ctl_formula::EX(a.formula), oracle::ex(g, a.meaning)};
  case 6:
    return {ctl_formula::EF(a.formula), oracle::ef(g, a.meaning)};
  case 7:
    return {ctl_formula::EG(a.formula), oracle::eg(g, a.meaning)};
  case 8:
    return {ctl_formula::AX(a.formula), oracle::ax(g, a.meaning)};
  case 9:
    return {ctl_formula::AF(a.formula), oracle::af(g, a.meaning)};
  case 10:
    return {ctl_formula::AG(a.formula), oracle::ag(g, a.meaning)};
  case 11: {
    auto b = make_formula(rng, ts, g, depth - 1);
    return {ctl_formula::until(false, a.formula, b.formula), oracle::eu(g, a.meaning, b.meaning)};
  }
  default: {
    auto b = make_formula(rng, ts, g, depth - 1);
    return {ctl_formula::until(true, a.formula, b.formula), oracle::au(g, a.meaning, b.meaning)};
  }
  }
}

} // namespace

TEST_CASE("formula parsing") {
  const auto net = parse_bnet(toggle);
  const auto f = parse_ctl("EF(a & !b)", net.variables);
  CHECK(f.kind() == ctl_kind::ef);
  CHECK(f.operands().front().kind() == ctl_kind::proposition);
  const auto g = parse_ctl("AG(EF(a))", net.variables);
  CHECK(g.kind() == ctl_kind::ag);
  CHECK(g.operands().front().kind() == ctl_kind::ef);
  const auto u = parse_ctl("E[a U !b] | A[1 U b]", net.variables);
  CHECK(u.kind() == ctl_kind::disjunction);
  CHECK(u.operands()[0].kind() == ctl_kind::eu);
  CHECK(u.operands()[1].kind() == ctl_kind::au);
}

TEST_CASE("parse errors") {
  const auto net = parse_bnet(toggle);
  CHECK_THROWS_AS(parse_ctl("EF(", net.variables), parse_error);
  CHECK_THROWS_AS(parse_ctl("EF(a & )", net.variables), parse_error);
  CHECK_THROWS_AS(parse_ctl("E[a U b", net.variables), parse_error);
  try {
    (void)parse_ctl("EF(a & zz)", net.variables);
    FAIL("expected a parse error");
  } catch (const parse_error& e) {
    CHECK(e.column() == 8);
  }
}

TEST_CASE("formulas print back in parseable form") {
  const auto net = parse_bnet(toggle);
  for (const char* text : {"AG(EF(a & !b))", "E[a U b]", "!EX(a | b)", "A[a U EG(b)]"}) {
    const auto f = parse_ctl(text, net.variables);
    const auto again = parse_ctl(f.to_string(net.variables.names()), net.variables);
    CHECK(again.to_string(net.variables.names()) == f.to_string(net.variables.names()));
  }
  CHECK(parse_ctl("AG(EF(a & !b))", net.variables).to_string(net.variables.names()) == "AG(EF(a & !b))");
  CHECK(parse_ctl("!!a", net.variables).to_string(net.variables.names()) == "!!a");
}

TEST_CASE("toggle accepting states") {
  const transition_system ts(parse_bnet(toggle), update_mode::async);
  const auto ef = accept(ts, ctl_formula::EF(ctl_formula::states(set_of(ts, {"10"}))));
  CHECK(ef.states == set_of(ts, {"00", "11", "10"}));
  CHECK(ef.count == 3);
  const auto agef = accept(ts, ctl_formula::AG(ctl_formula::EF(ctl_formula::states(set_of(ts, {"10"})))));
  CHECK(agef.states == set_of(ts, {"10"}));
  CHECK(agef.count == 1);
  const auto af = accept(ts, ctl_formula::AF(ctl_formula::states(set_of(ts, {"01", "10"}))));
  CHECK(af.states.is_true());
}

TEST_CASE("accept reports an equivalent expression") {
  const transition_system ts(parse_bnet(toggle), update_mode::async);
  const auto r = accept(ts, parse_ctl("AG(EF(a & !b))", ts.network().variables));
  CHECK(r.count == 1);
  CHECK(ts.manager().from_expr(r.expression) == r.states);
  for (auto style : {expression_style::dnf_states, expression_style::factored}) {
    const auto s = accept(ts, parse_ctl("EF(a & !b)", ts.network().variables), style);
    CHECK(ts.manager().from_expr(s.expression) == s.states);
  }
}

TEST_CASE("initial-state query") {
  const transition_system ts(parse_bnet(toggle), update_mode::async);
  const auto f = parse_ctl("EF(a & !b)", ts.network().variables);
  CHECK(holds_initially(ts, f, set_of(ts, {"00", "11"})));
  CHECK_FALSE(holds_initially(ts, f, set_of(ts, {"01"})));
}

TEST_CASE("random formulas agree with explicit labelling") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 40; ++round) {
    network_shape shape;
    shape.n = 2 + round % 7;
    shape.van_ham_pair = round % 4 == 1;
    const auto net = random_network(rng, shape);
    const bool sync = round % 5 == 4;
    const transition_system ts(net, sync ? update_mode::sync : update_mode::async);
    const oracle::graph g = oracle::build(net, sync);
    for (int k = 0; k < 6; ++k) {
      const auto f = make_formula(rng, ts, g, 4);
      CHECK(to_bitset(ts, accepting_states(ts, f.formula)) == f.meaning);
    }
  }
}

TEST_CASE("distributive law and the basin inclusion at the formula level") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 30; ++round) {
    network_shape shape;
    shape.n = 3 + round % 6;
    const auto net = random_network(rng, shape);
    const transition_system ts(net, update_mode::async);
    const oracle::graph g = oracle::build(net);
    const auto a = make_formula(rng, ts, g, 0).formula;
    const auto b = make_formula(rng, ts, g, 0).formula;
    const dd_ref lhs = accepting_states(ts, ctl_formula::EF(ctl_formula::disjunction(a, b)));
    const dd_ref rhs = accepting_states(ts, ctl_formula::EF(a)) | accepting_states(ts, ctl_formula::EF(b));
    CHECK(lhs == rhs);
    const dd_ref ef = accepting_states(ts, ctl_formula::EF(a));
    CHECK(accepting_states(ts, ctl_formula::AG(ctl_formula::EF(a))).implies(ef));
    CHECK(accepting_states(ts, a).implies(ef));
  }
}
