#include "basinscope/report.hpp"

#include "basinscope/error.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace basinscope {

std::vector<std::string> render_config::default_palette() {
  return {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
          "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295"};
}

const std::string& render_config::colour(std::size_t block) const {
  if (palette.empty()) {
    return uncommitted_colour;
  }
  return palette[block % palette.size()];
}

namespace {

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string percent_text(double p) {
  std::string s = fixed(p, 2);
  while (s.back() == '0') {
    s.pop_back();
  }
  if (s.back() == '.') {
    s.pop_back();
  }
  return s + "%";
}

std::string state_word(const big_count& n) { return n == 1 ? "state" : "states"; }

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
    }
    out += c;
  }
  return out;
}

double ratio(const big_count& part, const big_count& whole) {
  if (whole == 0) {
    return 0.0;
  }
  return static_cast<double>(part.convert_to<long double>() / whole.convert_to<long double>());
}

std::string svg_header(int width, int height) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
         std::to_string(width) + " " + std::to_string(height) + "\">\n" +
         "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" fill=\"#ffffff\"/>\n";
}

} // namespace

std::string format_size(const set_size& size, const big_count& space, const render_config& config) {
  if (space > config.percent_threshold) {
    return percent_text(size.percent);
  }
  return size.states.str();
}

std::string diagram_to_dot(const quotient_diagram& diagram, const render_config& config, const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << dot_escape(name) << "\" {\n";
  out << "  node [shape=box, style=\"rounded,filled\", fontname=\"Helvetica\"];\n";
  out << "  edge [color=\"#555555\"];\n";
  for (std::size_t k = 0; k < diagram.nodes.size(); ++k) {
    const auto& n = diagram.nodes[k];
    out << "  n" << k << " [label=\"" << to_string(n.key) << "\\n" << n.size.states.str() << ' '
        << state_word(n.size.states) << "\\n" << percent_text(n.size.percent) << "\", fillcolor=\""
        << config.colour(k) << "\"];\n";
  }
  auto position = [&](const index_set& key) {
    for (std::size_t k = 0; k < diagram.nodes.size(); ++k) {
      if (diagram.nodes[k].key == key) {
        return k;
      }
    }
    throw domain_error("diagram edge refers to missing node " + to_string(key));
  };
  for (const auto& e : diagram.edges) {
    out << "  n" << position(e.from) << " -> n" << position(e.to) << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string basin_barplot_svg(const transition_system& ts, const std::vector<basin_triple>& triples,
                              const render_config& config) {
  if (triples.empty()) {
    throw domain_error("bar plot needs at least one basin triple");
  }
  const int bar = 36;
  const int gap = 18;
  const int left = 56;
  const int top = 40;
  const int plot = 240;
  const int width = left + static_cast<int>(triples.size()) * (bar + gap) + gap + 150;
  const int height = top + plot + 60;
  const big_count space = ts.space_size();

  std::ostringstream out;
  out << svg_header(width, height);
  out << "<title>Basins of attraction</title>\n";
  out << "<g font-family=\"Helvetica, Arial, sans-serif\" font-size=\"11\">\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double y = top + plot - plot * tick / 4.0;
    out << "<line x1=\"" << left << "\" y1=\"" << fixed(y) << "\" x2=\"" << width - 150 << "\" y2=\"" << fixed(y)
        << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << fixed(y + 4) << "\" text-anchor=\"end\">" << tick * 25
        << "%</text>\n";
  }

  const std::string shades[3] = {"#2c5d8a", "#5b9bd5", "#bdd7ee"};
  const char* names[3] = {"cycle-free", "strong", "weak"};
  for (std::size_t k = 0; k < triples.size(); ++k) {
    const auto& t = triples[k];
    const double x = left + gap + static_cast<double>(k) * (bar + gap);
    const set_size* sizes[3] = {&t.cycle_free_size, &t.strong_size, &t.weak_size};
    double below = 0.0;
    out << "<g>\n";
    for (int s = 0; s < 3; ++s) {
      const double h = plot * ratio(sizes[s]->states, space);
      const double seg = std::max(0.0, h - below);
      out << "<rect x=\"" << fixed(x) << "\" y=\"" << fixed(top + plot - h) << "\" width=\"" << bar
          << "\" height=\"" << fixed(seg) << "\" fill=\"" << shades[s] << "\">"
          << "<title>" << names[s] << ": " << format_size(*sizes[s], space, config) << "</title></rect>\n";
      below = std::max(below, h);
    }
    out << "<text x=\"" << fixed(x + bar / 2.0) << "\" y=\"" << top + plot + 16 << "\" text-anchor=\"middle\">"
        << xml_escape(to_string(t.attractor_indices)) << "</text>\n";
    out << "</g>\n";
  }
  for (int s = 2; s >= 0; --s) {
    const int y = top + (2 - s) * 20;
    out << "<rect x=\"" << width - 130 << "\" y=\"" << y << "\" width=\"12\" height=\"12\" fill=\"" << shades[s]
        << "\"/>\n";
    out << "<text x=\"" << width - 112 << "\" y=\"" << y + 10 << "\">" << names[s] << " basin</text>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::vector<double> pie_angles(const std::vector<pie_slice>& slices, const big_count& total) {
  if (total <= 0) {
    throw domain_error("pie chart needs a non-empty space");
  }
  big_count covered = 0;
  std::vector<double> angles;
  for (const auto& s : slices) {
    covered += s.size;
    angles.push_back(360.0 * ratio(s.size, total));
  }
  if (covered > total) {
    throw domain_error("pie slices exceed the state space");
  }
  if (covered < total) {
    angles.push_back(360.0 * ratio(total - covered, total));
  }
  return angles;
}

std::string basin_piechart_svg(const std::vector<pie_slice>& slices, const big_count& total,
                               const render_config& config) {
  if (slices.empty()) {
    throw domain_error("pie chart needs at least one slice");
  }
  const std::vector<double> angles = pie_angles(slices, total);
  big_count covered = 0;
  for (const auto& s : slices) {
    covered += s.size;
  }
  const double cx = 170;
  const double cy = 170;
  const double r = 140;
  const int width = 520;
  const int height = std::max(340, 40 + 20 * static_cast<int>(angles.size()));

  std::ostringstream out;
  out << svg_header(width, height);
  out << "<title>State space partition</title>\n";
  out << "<g font-family=\"Helvetica, Arial, sans-serif\" font-size=\"11\" stroke=\"#ffffff\" stroke-width=\"1\">\n";

  double start = 0.0;
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const bool rest = k == slices.size();
    const std::string& fill = rest ? config.uncommitted_colour : config.colour(k);
    const big_count size = rest ? total - covered : slices[k].size;
    const std::string label = rest ? std::string("uncommitted") : slices[k].label;
    set_size sz{size, 100.0 * ratio(size, total)};
    const std::string title = xml_escape(label) + ": " + format_size(sz, total, config);
    const double sweep = angles[k];
    if (sweep >= 360.0 - 1e-9) {
      out << "<circle cx=\"" << fixed(cx) << "\" cy=\"" << fixed(cy) << "\" r=\"" << fixed(r) << "\" fill=\"" << fill
          << "\"><title>" << title << "</title></circle>\n";
    } else if (sweep > 0.0) {
      // clockwise from twelve o'clock
      const double a0 = (start - 90.0) * std::numbers::pi / 180.0;
      const double a1 = (start + sweep - 90.0) * std::numbers::pi / 180.0;
      out << "<path d=\"M " << fixed(cx) << ' ' << fixed(cy) << " L " << fixed(cx + r * std::cos(a0)) << ' '
          << fixed(cy + r * std::sin(a0)) << " A " << fixed(r) << ' ' << fixed(r) << " 0 " << (sweep > 180.0 ? 1 : 0)
          << " 1 " << fixed(cx + r * std::cos(a1)) << ' ' << fixed(cy + r * std::sin(a1)) << " Z\" fill=\"" << fill
          << "\"><title>" << title << "</title></path>\n";
    }
    start += sweep;
    const int y = 30 + 20 * static_cast<int>(k);
    out << "<rect x=\"340\" y=\"" << y << "\" width=\"12\" height=\"12\" fill=\"" << fill
        << "\" stroke=\"#999999\"/>\n";
    out << "<text x=\"358\" y=\"" << y + 10 << "\" stroke=\"none\">" << title << "</text>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::vector<pie_slice> strong_basin_slices(const std::vector<basin_triple>& triples) {
  std::vector<pie_slice> out;
  for (const auto& t : triples) {
    out.push_back({"strong " + to_string(t.attractor_indices), t.strong_size.states});
  }
  return out;
}

std::vector<pie_slice> diagram_slices(const quotient_diagram& diagram) {
  std::vector<pie_slice> out;
  for (const auto& n : diagram.nodes) {
    out.push_back({to_string(n.key), n.size.states});
  }
  return out;
}

std::string small_stg_to_dot(const transition_system& ts, const quotient_diagram& colouring,
                             const std::vector<attractor>& attractors, const render_config& config) {
  const big_count total = ts.space_size();
  if (total > config.stg_node_limit) {
    throw domain_error("state space has " + total.str() + " states, more than the drawing limit of " +
                       config.stg_node_limit.str() + "; render the commitment diagram instead");
  }
  auto& m = ts.manager();
  const std::vector<state> states = m.states(ts.space(), total.convert_to<std::size_t>());
  const dd_ref in_attractor = attractor_union(ts, attractors);

  std::ostringstream out;
  out << "digraph stg {\n";
  out << "  node [shape=circle, style=filled, fontname=\"Courier\"];\n";
  for (const auto& x : states) {
    const std::string bits = x.to_string();
    std::string fill = config.uncommitted_colour;
    for (std::size_t k = 0; k < colouring.nodes.size(); ++k) {
      if (m.contains(colouring.nodes[k].states, x)) {
        fill = config.colour(k);
        break;
      }
    }
    out << "  s" << bits << " [label=\"" << bits << "\", fillcolor=\"" << fill << "\"";
    if (m.contains(in_attractor, x)) {
      out << ", peripheries=2";
    }
    out << "];\n";
  }
  for (const auto& x : states) {
    for (const auto& y : ts.successors(x)) {
      if (y != x) {
        out << "  s" << x.to_string() << " -> s" << y.to_string() << ";\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

} // namespace basinscope
