#include "basinscope/error.hpp"
#include "basinscope/report.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <doctest.h>

#include <cctype>
#include <numeric>
#include <sstream>

using namespace basinscope;

namespace {

// Recursive-descent check of the DOT subset we emit:
//   graph  := 'digraph' id '{' stmt* '}'
//   stmt   := ('node' | 'edge') attrs ';' | id ('->' id)? attrs? ';'
//   attrs  := '[' (id '=' id (',' id '=' id)*)? ']'
class dot_checker {
public:
  explicit dot_checker(std::string text) : s_(std::move(text)) {}

  struct summary {
    int nodes = 0;
    int edges = 0;
    int double_border = 0;
  };

  summary run() {
    keyword("digraph");
    id();
    expect('{');
    while (skip(), peek() != '}') {
      statement();
    }
    expect('}');
    skip();
    if (pos_ != s_.size()) {
      throw std::runtime_error("trailing text");
    }
    return out_;
  }

private:
  void statement() {
    const std::string first = id();
    skip();
    if (first == "node" || first == "edge") {
      attrs();
    } else if (s_.compare(pos_, 2, "->") == 0) {
      pos_ += 2;
      id();
      ++out_.edges;
      skip();
      if (peek() == '[') {
        attrs();
      }
    } else {
      ++out_.nodes;
      if (peek() == '[') {
        attrs();
      }
    }
    expect(';');
  }

  void attrs() {
    expect('[');
    skip();
    while (peek() != ']') {
      const std::string key = id();
      expect('=');
      const std::string value = id();
      if (key == "peripheries" && value == "2") {
        ++out_.double_border;
      }
      skip();
      if (peek() == ',') {
        ++pos_;
      }
      skip();
    }
    expect(']');
  }

  std::string id() {
    skip();
    std::string v;
    if (peek() == '"') {
      ++pos_;
      while (pos_ < s_.size() && s_[pos_] != '"') {
        if (s_[pos_] == '\\') {
          ++pos_;
        }
        v += s_[pos_++];
      }
      expect('"');
      return v;
    }
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                s_[pos_] == '.' || s_[pos_] == '#')) {
      v += s_[pos_++];
    }
    if (v.empty()) {
      throw std::runtime_error("identifier expected at " + std::to_string(pos_));
    }
    return v;
  }

  void keyword(const char* k) {
    if (id() != k) {
      throw std::runtime_error(std::string("expected ") + k);
    }
  }

  void expect(char c) {
    skip();
    if (peek() != c) {
      throw std::runtime_error(std::string("expected '") + c + "' at " + std::to_string(pos_));
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  std::string s_;
  std::size_t pos_ = 0;
  summary out_;
};

boost::property_tree::ptree parse_xml(const std::string& text) {
  std::istringstream in(text);
  boost::property_tree::ptree tree;
  boost::property_tree::read_xml(in, tree);
  return tree;
}

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) {
    ++n;
  }
  return n;
}

struct toggle_fixture {
  transition_system ts{parse_bnet("a, !b\nb, !a"), update_mode::async};
  std::vector<attractor> atts = find_attractors(ts);
  quotient_diagram diagram = commitment_diagram(ts, atts);
  std::vector<basin_triple> triples = basin_triples(ts, atts);
};

} // namespace

TEST_CASE("commitment diagram as DOT") {
  toggle_fixture f;
  const std::string dot = diagram_to_dot(f.diagram);
  const auto s = dot_checker(dot).run();
  CHECK(s.nodes == 3);
  CHECK(s.edges == 2);
  CHECK(dot.find("{1,2}\\n2 states\\n50%") != std::string::npos);
  CHECK(dot == diagram_to_dot(f.diagram));
}

TEST_CASE("single-node diagram") {
  const transition_system ts(parse_bnet("a, !c\nb, a\nc, b"), update_mode::async);
  const auto d = commitment_diagram(ts, find_attractors(ts));
  const auto s = dot_checker(diagram_to_dot(d)).run();
  CHECK(s.nodes == 1);
  CHECK(s.edges == 0);
}

TEST_CASE("small STG drawing") {
  toggle_fixture f;
  const std::string dot = small_stg_to_dot(f.ts, f.diagram, f.atts);
  const auto s = dot_checker(dot).run();
  CHECK(s.nodes == 4);
  CHECK(s.edges == 4);
  CHECK(s.double_border == 2);
  CHECK(dot == small_stg_to_dot(f.ts, f.diagram, f.atts));
  render_config tight;
  tight.stg_node_limit = 2;
  CHECK_THROWS_WITH_AS(small_stg_to_dot(f.ts, f.diagram, f.atts, tight), doctest::Contains("commitment diagram"),
                       domain_error);
}

TEST_CASE("strong-basin pie") {
  toggle_fixture f;
  const auto slices = strong_basin_slices(f.triples);
  const auto angles = pie_angles(slices, f.ts.space_size());
  REQUIRE(angles.size() == 3);
  CHECK(angles[0] == doctest::Approx(90.0));
  CHECK(angles[1] == doctest::Approx(90.0));
  CHECK(angles[2] == doctest::Approx(180.0));
  const std::string svg = basin_piechart_svg(slices, f.ts.space_size());
  CHECK_NOTHROW(parse_xml(svg));
  CHECK(svg.find("uncommitted: 2") != std::string::npos);
  CHECK(svg.find(render_config{}.uncommitted_colour) != std::string::npos);
  CHECK(svg.find("http://") == svg.find("http://www.w3.org/2000/svg"));
}

TEST_CASE("commitment pie covers the space") {
  toggle_fixture f;
  const auto angles = pie_angles(diagram_slices(f.diagram), f.ts.space_size());
  CHECK(angles == std::vector<double>{90.0, 90.0, 180.0});
  const std::string svg = basin_piechart_svg(diagram_slices(f.diagram), f.ts.space_size());
  CHECK(svg.find("uncommitted") == std::string::npos);
  CHECK_NOTHROW(parse_xml(svg));
}

TEST_CASE("pie angles sum to a full turn") {
  const std::vector<pie_slice> slices{{"x", 1}, {"y", 2}, {"z", 4}};
  for (big_count total : {big_count(7), big_count(11), big_count(1) << 70}) {
    const auto angles = pie_angles(slices, total);
    const double sum = std::accumulate(angles.begin(), angles.end(), 0.0);
    CHECK(std::abs(sum - 360.0) <= 360.0 * 1e-6);
  }
  CHECK_THROWS(pie_angles({{"x", 5}}, 4));
}

TEST_CASE("sizes switch to percentages above the threshold") {
  render_config config;
  const set_size small{3, 75.0};
  CHECK(format_size(small, 4, config) == "3");
  const set_size large{big_count(1) << 20, 6.25};
  CHECK(format_size(large, big_count(1) << 24, config) == "6.25%");
  config.percent_threshold = 2;
  CHECK(format_size(small, 4, config) == "75%");
}

TEST_CASE("bar plot stacks the three basins") {
  toggle_fixture f;
  const std::string svg = basin_barplot_svg(f.ts, f.triples);
  const auto tree = parse_xml(svg);
  // per attractor: cycle-free, strong, weak segments in that order
  std::vector<double> heights;
  for (const auto& [name, child] : tree.get_child("svg")) {
    if (name != "g") {
      continue;
    }
    for (const auto& [inner, bar] : child) {
      if (inner != "g") {
        continue;
      }
      double top = 1e9;
      std::vector<double> tops;
      for (const auto& [kind, rect] : bar) {
        if (kind == "rect") {
          tops.push_back(rect.get<double>("<xmlattr>.y"));
        }
      }
      REQUIRE(tops.size() == 3);
      // a taller basin starts higher up (smaller y)
      for (double t : tops) {
        CHECK(t <= top + 1e-9);
        top = t;
      }
      heights.push_back(tops.back());
    }
  }
  CHECK(heights.size() == 2);
  CHECK(svg == basin_barplot_svg(f.ts, f.triples));
}

TEST_CASE("palette is stable and cycles") {
  render_config config;
  REQUIRE(config.palette.size() == 12);
  CHECK(config.colour(0) == config.colour(12));
  CHECK(config.colour(3) != config.colour(4));
}
