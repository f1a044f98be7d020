#include "basinscope/error.hpp"
#include "basinscope/json_io.hpp"
#include "basinscope/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

namespace py = pybind11;
using namespace basinscope;

namespace {

expression_style style_of(const std::string& s) {
  if (s == "dnf") {
    return expression_style::dnf_states;
  }
  if (s == "factored") {
    return expression_style::factored;
  }
  if (s == "isop") {
    return expression_style::isop;
  }
  throw domain_error("unknown expression style '" + s + "' (expected dnf, factored or isop)");
}

update_mode mode_of(const std::string& s) {
  const auto m = parse_update_mode(s);
  if (!m) {
    throw domain_error("unknown update mode '" + s + "' (expected async or sync)");
  }
  return *m;
}

// Results cross the boundary as JSON text; the Python layer decodes them.
class model {
public:
  model(boolean_network net, const std::string& update, std::size_t node_limit)
      : ts_(std::make_unique<transition_system>(detect_van_ham_pairs(std::move(net)), mode_of(update), node_limit)) {}

  std::vector<std::string> variables() const {
    const auto names = ts_->network().variables.names();
    return {names.begin(), names.end()};
  }
  std::string update() const { return ts_->mode() == update_mode::async ? "async" : "sync"; }
  std::string space_size() const { return ts_->space_size().str(); }
  bool partial() const { return partial_; }

  void import_attractors(const std::string& seeds_json) {
    attractors_ = basinscope::import_attractors(*ts_, parse_attractor_seeds(seeds_json, ts_->network()));
    partial_ = true;
  }

  std::string attractors(const std::string& style) { return attractors_json(*ts_, atts(), style_of(style)).dump(); }

  std::string basins() { return basins_json(*ts_, atts(), basin_triples(*ts_, atts())).dump(); }

  std::string commitment(const std::string& style) {
    return diagram_json(*ts_, commitment_diagram(*ts_, atts(), partial_), style_of(style)).dump();
  }

  std::string phenotypes(const std::string& markers, const std::string& style) {
    const auto phenos = phenotypes_of(markers);
    json doc = phenotypes_json(*ts_, phenos);
    doc["diagram"] = diagram_json(*ts_, phenotype_diagram(*ts_, atts(), phenos, partial_), style_of(style));
    return doc.dump();
  }

  std::string check(const std::string& formula, const std::string& style) {
    const auto f = parse_ctl(formula, ts_->network().variables);
    return accept_json(*ts_, formula, accept(*ts_, f, style_of(style))).dump();
  }

  std::string simulate(const std::string& markers, std::uint64_t walks, std::uint64_t seed, bool stratify,
                       unsigned threads) {
    simulation_options o;
    o.walks = walks;
    o.seed = seed;
    o.stratify_inputs = stratify;
    o.threads = threads;
    const auto phenos = phenotypes_of(markers);
    const auto result = simulate_phenotype_reachability(*ts_, atts(), phenos, o);
    return simulation_json(phenos, result, o).dump();
  }

  std::string commitment_dot() { return diagram_to_dot(commitment_diagram(*ts_, atts(), partial_)); }

  std::string commitment_pie_svg() {
    return basin_piechart_svg(diagram_slices(commitment_diagram(*ts_, atts(), partial_)), ts_->space_size());
  }

  std::string basin_barplot() { return basin_barplot_svg(*ts_, basin_triples(*ts_, atts())); }

  std::string strong_basin_pie_svg() {
    return basin_piechart_svg(strong_basin_slices(basin_triples(*ts_, atts())), ts_->space_size());
  }

  std::string stg_dot() { return small_stg_to_dot(*ts_, commitment_diagram(*ts_, atts(), partial_), atts()); }

private:
  const std::vector<attractor>& atts() {
    if (!attractors_) {
      attractors_ = find_attractors(*ts_);
    }
    return *attractors_;
  }

  std::vector<phenotype> phenotypes_of(const std::string& markers) {
    return basinscope::phenotypes(*ts_, atts(), parse_markers(markers, ts_->network()));
  }

  std::unique_ptr<transition_system> ts_;
  std::optional<std::vector<attractor>> attractors_;
  bool partial_ = false;
};

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Symbolic basins, commitment sets and phenotypes of Boolean networks";

  // translators are tried newest first, so the base class goes first
  const auto base = py::register_exception<error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<parse_error>(m, "ParseError", base.ptr());
  py::register_exception<domain_error>(m, "DomainError", base.ptr());
  py::register_exception<resource_error>(m, "ResourceError", base.ptr());

  py::class_<model>(m, "Model")
      .def(py::init([](const std::string& text, const std::string& update, std::size_t node_limit) {
             return model(parse_bnet(text), update, node_limit);
           }),
           py::arg("bnet"), py::arg("update") = "async", py::arg("node_limit") = dd_manager::default_node_limit)
      .def_static(
          "load",
          [](const std::string& path, const std::string& update, std::size_t node_limit) {
            return model(read_bnet_file(path), update, node_limit);
          },
          py::arg("path"), py::arg("update") = "async", py::arg("node_limit") = dd_manager::default_node_limit)
      .def_property_readonly("variables", &model::variables)
      .def_property_readonly("update", &model::update)
      .def_property_readonly("_space_size", &model::space_size)
      .def_property_readonly("partial", &model::partial)
      .def("import_attractors", &model::import_attractors, py::arg("seeds_json"))
      .def("_attractors", &model::attractors, py::arg("style"))
      .def("_basins", &model::basins)
      .def("_commitment", &model::commitment, py::arg("style"))
      .def("_phenotypes", &model::phenotypes, py::arg("markers"), py::arg("style"))
      .def("_check", &model::check, py::arg("formula"), py::arg("style"))
      .def("_simulate", &model::simulate, py::arg("markers"), py::arg("walks"), py::arg("seed"),
           py::arg("stratify"), py::arg("threads"))
      .def("commitment_dot", &model::commitment_dot)
      .def("commitment_pie_svg", &model::commitment_pie_svg)
      .def("basin_barplot_svg", &model::basin_barplot)
      .def("strong_basin_pie_svg", &model::strong_basin_pie_svg)
      .def("stg_dot", &model::stg_dot);
}
