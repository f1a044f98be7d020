#include "basinscope/cli.hpp"

#include "basinscope/attractors.hpp"
#include "basinscope/basins.hpp"
#include "basinscope/ctl.hpp"
#include "basinscope/diagrams.hpp"
#include "basinscope/error.hpp"
#include "basinscope/json_io.hpp"
#include "basinscope/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace basinscope {

namespace {

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct options {
  std::string bnet;
  std::string update = "async";
  std::string json_path;
  std::string dot_path;
  std::string svg_path;
  std::uint64_t seed = 0;
  std::string attractor_file;
  std::string markers;
  std::string ctl;
  std::string style = "isop";
  std::uint64_t walks = 10000;
  bool stratify = false;
  unsigned threads = 0;
};

expression_style parse_style(const std::string& s) {
  if (s == "dnf") {
    return expression_style::dnf_states;
  }
  if (s == "factored") {
    return expression_style::factored;
  }
  return expression_style::isop;
}

std::size_t node_limit_from_env() {
  const char* text = std::getenv("BASINSCOPE_NODE_LIMIT");
  if (text == nullptr || *text == '\0') {
    return dd_manager::default_node_limit;
  }
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text, &end, 10);
  if (*end != '\0' || v == 0) {
    throw usage_error(std::string("BASINSCOPE_NODE_LIMIT must be a positive integer, got '") + text + "'");
  }
  return static_cast<std::size_t>(v);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw error("cannot open '" + path + "'");
  }
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw error("cannot write '" + path + "'");
  }
  f << text;
}

// One analysis session: network, dynamics and the attractor list.
class session {
public:
  explicit session(const options& o)
      : opts_(o), ts_(detect_van_ham_pairs(read_bnet_file(o.bnet)), *parse_update_mode(o.update),
                      node_limit_from_env()) {}

  const transition_system& ts() const { return ts_; }
  bool partial() const { return !opts_.attractor_file.empty(); }

  const std::vector<attractor>& attractors() {
    if (!attractors_) {
      if (partial()) {
        const auto seeds = parse_attractor_seeds(read_text(opts_.attractor_file), ts_.network());
        attractors_ = import_attractors(ts_, seeds);
      } else {
        attractors_ = find_attractors(ts_);
      }
    }
    return *attractors_;
  }

  std::vector<phenotype> phenotypes() {
    return basinscope::phenotypes(ts_, attractors(), parse_markers(opts_.markers, ts_.network()));
  }

  // text goes to `out` unless the JSON document does
  bool text_output() const { return opts_.json_path != "-"; }

  void emit_json(const json& doc, std::ostream& out) const {
    if (!opts_.json_path.empty()) {
      write_text(opts_.json_path, doc.dump(2) + "\n", out);
    }
  }

private:
  const options& opts_;
  transition_system ts_;
  std::optional<std::vector<attractor>> attractors_;
};

std::string percent(double p) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << p << '%';
  return s.str();
}

void print_diagram(std::ostream& out, const transition_system& ts, const quotient_diagram& d, expression_style style) {
  out << d.nodes.size() << " sets, " << d.edges.size() << " edges" << (d.partial ? " (partial)" : "") << '\n';
  for (const auto& n : d.nodes) {
    out << "  " << std::left << std::setw(12) << to_string(n.key) << std::right << std::setw(12)
        << n.size.states.str() << std::setw(10) << percent(n.size.percent) << "  "
        << set_expression(ts, n.states, style) << '\n';
  }
  for (const auto& e : d.edges) {
    out << "  " << to_string(e.from) << " -> " << to_string(e.to) << '\n';
  }
  if (d.partial && !d.uncommitted.is_false()) {
    out << "  uncommitted " << d.uncommitted_size.states.str() << ' ' << percent(d.uncommitted_size.percent) << '\n';
  }
}

void cmd_attractors(session& s, const options& o, std::ostream& out) {
  const auto& atts = s.attractors();
  const auto style = parse_style(o.style);
  if (s.text_output()) {
    const auto steady = std::count_if(atts.begin(), atts.end(),
                                      [](const attractor& a) { return a.kind == attractor_kind::steady; });
    out << atts.size() << " attractors (" << steady << " steady, " << atts.size() - steady << " cyclic), "
        << to_string(s.ts().mode()) << " update\n";
    for (const auto& a : atts) {
      out << "  " << a.index << "  " << a.representative.to_string() << "  " << to_string(a.kind) << "  size "
          << a.size.str() << (a.verified ? "" : "  unverified") << '\n';
    }
  }
  s.emit_json(attractors_json(s.ts(), atts, style), out);
}

void cmd_basins(session& s, const options& o, std::ostream& out) {
  const auto& atts = s.attractors();
  const auto triples = basin_triples(s.ts(), atts);
  if (s.text_output()) {
    out << "attractor  representative  weak  strong  cycle-free\n";
    for (std::size_t k = 0; k < triples.size(); ++k) {
      const auto& t = triples[k];
      out << "  " << atts[k].index << "  " << atts[k].representative.to_string() << "  "
          << t.weak_size.states.str() << " (" << percent(t.weak_size.percent) << ")  "
          << t.strong_size.states.str() << " (" << percent(t.strong_size.percent) << ")  "
          << t.cycle_free_size.states.str() << " (" << percent(t.cycle_free_size.percent) << ")\n";
    }
  }
  s.emit_json(basins_json(s.ts(), atts, triples), out);
  if (!o.svg_path.empty()) {
    write_text(o.svg_path, basin_barplot_svg(s.ts(), triples), out);
  }
}

void cmd_commitment(session& s, const options& o, std::ostream& out) {
  const auto style = parse_style(o.style);
  const auto d = commitment_diagram(s.ts(), s.attractors(), s.partial());
  if (s.text_output()) {
    print_diagram(out, s.ts(), d, style);
  }
  s.emit_json(diagram_json(s.ts(), d, style), out);
  if (!o.dot_path.empty()) {
    write_text(o.dot_path, diagram_to_dot(d, {}, "commitment"), out);
  }
  if (!o.svg_path.empty()) {
    write_text(o.svg_path, basin_piechart_svg(diagram_slices(d), s.ts().space_size()), out);
  }
}

void cmd_phenotypes(session& s, const options& o, std::ostream& out) {
  const auto style = parse_style(o.style);
  const auto phenos = s.phenotypes();
  const auto d = phenotype_diagram(s.ts(), s.attractors(), phenos, s.partial());
  if (s.text_output()) {
    out << phenos.size() << " phenotypes\n";
    for (const auto& p : phenos) {
      out << "  " << p.index << "  " << p.pattern << "  attractors " << to_string(p.attractor_indices) << "  "
          << p.steady << " steady, " << p.cyclic << " cyclic\n";
    }
    print_diagram(out, s.ts(), d, style);
  }
  json doc = phenotypes_json(s.ts(), phenos);
  doc["diagram"] = diagram_json(s.ts(), d, style);
  s.emit_json(doc, out);
  if (!o.dot_path.empty()) {
    write_text(o.dot_path, diagram_to_dot(d, {}, "phenotypes"), out);
  }
  if (!o.svg_path.empty()) {
    write_text(o.svg_path, basin_piechart_svg(diagram_slices(d), s.ts().space_size()), out);
  }
}

void cmd_check(session& s, const options& o, std::ostream& out) {
  const auto formula = parse_ctl(o.ctl, s.ts().network().variables);
  const auto result = accept(s.ts(), formula, parse_style(o.style));
  if (s.text_output()) {
    out << "formula: " << o.ctl << '\n'
        << "count: " << result.count.str() << " of " << s.ts().space_size().str() << '\n'
        << "expression: " << to_string(result.expression, s.ts().network().variables.names()) << '\n';
  }
  s.emit_json(accept_json(s.ts(), o.ctl, result), out);
}

void cmd_render(session& s, const options& o, std::ostream& out) {
  if (o.dot_path.empty() && o.svg_path.empty()) {
    throw usage_error("render needs --dot and/or --svg");
  }
  const auto& atts = s.attractors();
  if (!o.dot_path.empty()) {
    const auto d = commitment_diagram(s.ts(), atts, s.partial());
    write_text(o.dot_path, small_stg_to_dot(s.ts(), d, atts), out);
  }
  if (!o.svg_path.empty()) {
    const auto triples = basin_triples(s.ts(), atts);
    write_text(o.svg_path, basin_piechart_svg(strong_basin_slices(triples), s.ts().space_size()), out);
  }
}

void cmd_simulate(session& s, const options& o, std::ostream& out) {
  const auto phenos = s.phenotypes();
  simulation_options so;
  so.walks = o.walks;
  so.seed = o.seed;
  so.stratify_inputs = o.stratify;
  so.threads = o.threads;
  const auto r = simulate_phenotype_reachability(s.ts(), s.attractors(), phenos, so);
  if (s.text_output()) {
    out << r.walks << " walks, seed " << o.seed << ", " << r.capped << " stopped at the step cap\n";
    for (std::size_t p = 0; p < phenos.size(); ++p) {
      out << "  " << phenos[p].index << "  " << phenos[p].pattern << "  " << r.counts[p] << "  "
          << std::fixed << std::setprecision(4) << r.frequencies[p] << '\n';
    }
  }
  s.emit_json(simulation_json(phenos, r, so), out);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symbolic basin, commitment and phenotype analysis of Boolean networks", "basinscope"};
  app.require_subcommand(1, 1);
  options o;

  const auto update_check = CLI::IsMember({"async", "sync", "asynchronous", "synchronous"});
  const auto style_check = CLI::IsMember({"dnf", "factored", "isop"});
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--bnet", o.bnet, "Network in .bnet format")->required();
    sub->add_option("--update", o.update, "Update scheme: async or sync")->check(update_check);
    sub->add_option("--json", o.json_path, "Write JSON to PATH, or '-' for standard output");
  };
  auto add_attractor_file = [&](CLI::App* sub) {
    sub->add_option("--attractor-file", o.attractor_file, "Known attractors (JSON); enables partial mode");
  };
  auto add_style = [&](CLI::App* sub) {
    sub->add_option("--expression-style", o.style, "dnf, factored or isop")->check(style_check);
  };

  auto* attractors = app.add_subcommand("attractors", "List the attractors");
  add_common(attractors);
  add_attractor_file(attractors);
  add_style(attractors);

  auto* basins = app.add_subcommand("basins", "Weak, strong and cycle-free basins");
  add_common(basins);
  add_attractor_file(basins);
  basins->add_option("--svg", o.svg_path, "Stacked bar plot");

  auto* commitment = app.add_subcommand("commitment", "Commitment sets and diagram");
  add_common(commitment);
  add_attractor_file(commitment);
  add_style(commitment);
  commitment->add_option("--dot", o.dot_path, "Commitment diagram (DOT)");
  commitment->add_option("--svg", o.svg_path, "Pie chart of the commitment sets");

  auto* pheno = app.add_subcommand("phenotypes", "Phenotypes and phenotype diagram");
  add_common(pheno);
  add_attractor_file(pheno);
  add_style(pheno);
  pheno->add_option("--markers", o.markers, "Comma-separated marker variables")->required();
  pheno->add_option("--dot", o.dot_path, "Phenotype diagram (DOT)");
  pheno->add_option("--svg", o.svg_path, "Pie chart of the phenotype sets");

  auto* check = app.add_subcommand("check", "Accepting states of a CTL formula");
  add_common(check);
  add_style(check);
  check->add_option("--ctl", o.ctl, "CTL formula")->required();

  auto* render = app.add_subcommand("render", "Coloured STG drawing and strong-basin pie chart");
  add_common(render);
  add_attractor_file(render);
  render->add_option("--dot", o.dot_path, "State transition graph coloured by commitment set (DOT)");
  render->add_option("--svg", o.svg_path, "Pie chart of the strong basins");

  auto* simulate = app.add_subcommand("simulate", "Random-walk phenotype reachability");
  add_common(simulate);
  add_attractor_file(simulate);
  simulate->add_option("--markers", o.markers, "Comma-separated marker variables")->required();
  simulate->add_option("--seed", o.seed, "Random seed");
  simulate->add_option("--walks", o.walks, "Number of walks")->check(CLI::PositiveNumber);
  simulate->add_flag("--stratify", o.stratify, "Spread walks over the input configurations");
  simulate->add_option("--threads", o.threads, "Worker threads (0 = all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    session s(o);
    if (attractors->parsed()) {
      cmd_attractors(s, o, out);
    } else if (basins->parsed()) {
      cmd_basins(s, o, out);
    } else if (commitment->parsed()) {
      cmd_commitment(s, o, out);
    } else if (pheno->parsed()) {
      cmd_phenotypes(s, o, out);
    } else if (check->parsed()) {
      cmd_check(s, o, out);
    } else if (render->parsed()) {
      cmd_render(s, o, out);
    } else if (simulate->parsed()) {
      cmd_simulate(s, o, out);
    }
  } catch (const usage_error& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

} // namespace basinscope
