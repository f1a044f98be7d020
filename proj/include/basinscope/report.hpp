#pragma once

#include "basinscope/attractors.hpp"
#include "basinscope/basins.hpp"
#include "basinscope/diagrams.hpp"

#include <string>
#include <vector>

namespace basinscope {

struct render_config {
  /// Sizes are shown as percentages when the space has more states than this.
  big_count percent_threshold = 1024;
  /// Block colours, assigned cyclically in canonical block order.
  std::vector<std::string> palette = default_palette();
  /// Reserved for states outside every drawn block.
  std::string uncommitted_colour = "#f4f4f4";
  big_count stg_node_limit = big_count(1) << 15;

  static std::vector<std::string> default_palette();
  const std::string& colour(std::size_t block) const;
};

/// Size text for a label: "3" or "12.5%" depending on the threshold.
std::string format_size(const set_size& size, const big_count& space, const render_config& config);

/// Quotient diagram as a DOT digraph named `name`; node labels carry the
/// index set, the size and the percentage of the space.
std::string diagram_to_dot(const quotient_diagram& diagram, const render_config& config = {},
                           const std::string& name = "commitment");

/// Stacked bars per attractor: cycle-free, then strong, then weak.
std::string basin_barplot_svg(const transition_system& ts, const std::vector<basin_triple>& triples,
                              const render_config& config = {});

struct pie_slice {
  std::string label;
  big_count size;
};

/// Pie over disjoint slices; a light "uncommitted" slice fills up to `total`.
std::string basin_piechart_svg(const std::vector<pie_slice>& slices, const big_count& total,
                               const render_config& config = {});

/// Slice angles in degrees as drawn, including the uncommitted remainder.
std::vector<double> pie_angles(const std::vector<pie_slice>& slices, const big_count& total);

/// Slices for the singleton strong basins of the attractors.
std::vector<pie_slice> strong_basin_slices(const std::vector<basin_triple>& triples);
/// Slices for the nodes of a quotient diagram.
std::vector<pie_slice> diagram_slices(const quotient_diagram& diagram);

/// Explicit STG drawing for small spaces. States are filled by the diagram
/// block containing them and attractor states get a double border.
/// Self-loops are left out.
std::string small_stg_to_dot(const transition_system& ts, const quotient_diagram& colouring,
                             const std::vector<attractor>& attractors, const render_config& config = {});

} // namespace basinscope
