#include "basinscope/diagrams.hpp"
#include "basinscope/error.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace basinscope;
using namespace testing_support;

namespace {

dd_ref set_of(const transition_system& ts, std::initializer_list<const char*> bits) {
  std::vector<oracle::code> xs;
  for (const char* b : bits) {
    xs.push_back(oracle::from_bits(b));
  }
  return from_codes(ts, xs);
}

const diagram_node& node(const std::vector<diagram_node>& nodes, const index_set& key) {
  for (const auto& n : nodes) {
    if (n.key == key) {
      return n;
    }
  }
  FAIL("missing node " << to_string(key));
  throw;
}

void check_against_oracle(const transition_system& ts, const quotient_diagram& d, const oracle::graph& g,
                          const oracle::block_diagram& expected) {
  REQUIRE(d.nodes.size() == expected.blocks.size());
  for (const auto& n : d.nodes) {
    REQUIRE(expected.blocks.count(n.key) == 1);
    oracle::bitset want = oracle::empty(g);
    for (auto x : expected.blocks.at(n.key)) {
      want[x] = 1;
    }
    CHECK(to_bitset(ts, n.states) == want);
  }
  std::set<std::pair<index_set, index_set>> edges;
  for (const auto& e : d.edges) {
    edges.insert({e.from, e.to});
    CHECK(e.to.size() < e.from.size());
    CHECK(std::includes(e.from.begin(), e.from.end(), e.to.begin(), e.to.end()));
  }
  CHECK(edges == expected.edges);
}

} // namespace

TEST_CASE("toggle commitment sets and edges") {
  const transition_system ts(parse_bnet("a, !b\nb, !a"), update_mode::async);
  const auto d = commitment_diagram(ts, find_attractors(ts));
  REQUIRE(d.nodes.size() == 3);
  CHECK(d.nodes[0].key == index_set{1});
  CHECK(d.nodes[1].key == index_set{2});
  CHECK(d.nodes[2].key == index_set{1, 2});
  CHECK(d.nodes[0].states == set_of(ts, {"01"}));
  CHECK(d.nodes[1].states == set_of(ts, {"10"}));
  CHECK(d.nodes[2].states == set_of(ts, {"00", "11"}));
  CHECK(d.edges == std::vector<diagram_edge>{{{1, 2}, {1}}, {{1, 2}, {2}}});
  CHECK(d.uncommitted.is_false());
}

TEST_CASE("chain commitment sets") {
  const transition_system ts(parse_bnet("a, a\nb, a & b"), update_mode::async);
  const auto nodes = commitment_sets(ts, find_attractors(ts));
  REQUIRE(nodes.size() == 3);
  CHECK(node(nodes, {1}).states == set_of(ts, {"00", "01"}));
  CHECK(node(nodes, {2}).states == set_of(ts, {"10"}));
  CHECK(node(nodes, {3}).states == set_of(ts, {"11"}));
}

TEST_CASE("single attractor gives one node and no edges") {
  const transition_system ts(parse_bnet("a, !c\nb, a\nc, b"), update_mode::async);
  const auto d = commitment_diagram(ts, find_attractors(ts));
  REQUIRE(d.nodes.size() == 1);
  CHECK(d.nodes[0].states.is_true());
  CHECK(d.edges.empty());
}

TEST_CASE("an incomplete attractor list is detected") {
  const transition_system ts(parse_bnet("a, !b\nb, !a"), update_mode::async);
  const auto one = import_attractors(ts, {state_from_string(ts.network(), "10")});
  CHECK_THROWS_WITH_AS(commitment_sets(ts, one), doctest::Contains("incomplete"), domain_error);
  const auto d = commitment_diagram(ts, one, true);
  CHECK(d.partial);
  REQUIRE(d.nodes.size() == 1);
  CHECK(d.nodes[0].states == set_of(ts, {"10"}));
  CHECK(d.uncommitted == set_of(ts, {"00", "01", "11"}));
  CHECK(d.uncommitted_size.states == 3);
}

TEST_CASE("phenotypes of single states and cycles") {
  const transition_system toggle(parse_bnet("a, !b\nb, !a"), update_mode::async);
  const auto atts = find_attractors(toggle);
  CHECK(phenotype_of(toggle, atts[1], {0}) == "1");
  CHECK_THROWS_AS(phenotype_of(toggle, atts[1], {}), domain_error);

  const transition_system rep(parse_bnet("a, !c\nb, a\nc, b"), update_mode::async);
  CHECK(phenotype_of(rep, find_attractors(rep)[0], {0}) == "*");
}

TEST_CASE("toggle phenotypes mirror the commitment diagram") {
  const transition_system ts(parse_bnet("a, !b\nb, !a"), update_mode::async);
  const auto atts = find_attractors(ts);
  for (std::size_t marker : {0, 1}) {
    const auto phenos = phenotypes(ts, atts, {marker});
    REQUIRE(phenos.size() == 2);
    CHECK(phenos[0].pattern == "0");
    CHECK(phenos[1].pattern == "1");
    // a is 0 in attractor 1 ("01"); b is 0 in attractor 2 ("10")
    CHECK(phenos[0].attractor_indices == index_set{marker == 0 ? 1u : 2u});
    const auto d = phenotype_diagram(ts, atts, phenos);
    REQUIRE(d.nodes.size() == 3);
    CHECK(d.edges.size() == 2);
    CHECK(d.nodes[2].states == set_of(ts, {"00", "11"}));
  }
  CHECK_THROWS(parse_markers("", ts.network()));
  CHECK_THROWS(parse_markers("a,zz", ts.network()));
  CHECK_THROWS(parse_markers("a, a", ts.network()));
  CHECK(parse_markers(" b , a", ts.network()) == std::vector<std::size_t>{1, 0});
}

TEST_CASE("patterns sort with 0 before 1 before *") {
  // x is steady at 0 or 1 depending on the input i; y oscillates when i is on
  const transition_system ts(parse_bnet("i, i\nx, i\ny, !y & i | y & !i & y\nz, !z & i | z & !i"),
                             update_mode::async);
  const auto atts = find_attractors(ts);
  const auto phenos = phenotypes(ts, atts, {0, 3});
  std::vector<std::string> patterns;
  for (const auto& p : phenos) {
    patterns.push_back(p.pattern);
  }
  CHECK(std::is_sorted(patterns.begin(), patterns.end(), [](const std::string& a, const std::string& b) {
    auto rank = [](char c) { return c == '0' ? 0 : c == '1' ? 1 : 2; };
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [&](char p, char q) { return rank(p) < rank(q); });
  }));
  CHECK(patterns.back().find('*') != std::string::npos);
}

TEST_CASE("random networks: partitions, edges and phenotypes agree with explicit blocks") {
  std::mt19937_64 rng(4242);
  for (int round = 0; round < 50; ++round) {
    network_shape shape;
    shape.n = 3 + round % 8;
    shape.van_ham_pair = round % 4 == 0;
    const auto net = random_network(rng, shape);
    const transition_system ts(net, update_mode::async);
    const oracle::graph g = oracle::build(net);
    const auto expected = oracle::attractors(g);
    const auto reach = oracle::reachable_attractors(g, expected);
    const auto atts = find_attractors(ts);
    REQUIRE(atts.size() == expected.size());

    std::vector<std::size_t> identity(atts.size());
    for (std::size_t k = 0; k < atts.size(); ++k) {
      identity[k] = k + 1;
    }
    const auto d = commitment_diagram(ts, atts);
    check_against_oracle(ts, d, g, oracle::blocks(g, reach, identity));

    // partition of the space; ComSet({i}) is the strong basin of attractor i
    dd_ref cover = ts.manager().constant(false);
    for (const auto& n : d.nodes) {
      CHECK_FALSE(cover.intersects(n.states));
      cover |= n.states;
      if (n.key.size() == 1) {
        CHECK(n.states == strong_basin(ts, representative_set(ts, atts[n.key[0] - 1])));
      }
    }
    CHECK(cover == ts.space());

    // committed sets only shrink along transitions
    std::vector<index_set> key(g.size);
    for (const auto& n : d.nodes) {
      for (oracle::code x = 0; x < g.size; ++x) {
        if (ts.manager().contains(n.states, state_of(x, shape.n))) {
          key[x] = n.key;
        }
      }
    }
    for (oracle::code x = 0; x < g.size; ++x) {
      for (auto y : g.succ[x]) {
        CHECK(std::includes(key[x].begin(), key[x].end(), key[y].begin(), key[y].end()));
      }
    }

    // phenotypes over two random markers
    std::vector<std::size_t> markers{rng() % shape.n};
    const std::size_t second = rng() % shape.n;
    if (second != markers[0]) {
      markers.push_back(second);
    }
    const auto phenos = phenotypes(ts, atts, markers);
    std::vector<std::size_t> target_of(atts.size());
    std::size_t assigned = 0;
    for (const auto& p : phenos) {
      for (auto idx : p.attractor_indices) {
        target_of[idx - 1] = p.index;
        CHECK(p.pattern == oracle::pattern(g, expected[idx - 1], markers));
        ++assigned;
      }
    }
    CHECK(assigned == atts.size());
    const auto pd = phenotype_diagram(ts, atts, phenos);
    check_against_oracle(ts, pd, g, oracle::blocks(g, reach, target_of));

    // the phenotype partition coarsens the commitment partition
    for (const auto& n : d.nodes) {
      int containing = 0;
      for (const auto& p : pd.nodes) {
        containing += n.states.implies(p.states) ? 1 : 0;
      }
      CHECK(containing == 1);
    }
  }
}
