#pragma once

#include "basinscope/attractors.hpp"
#include "basinscope/basins.hpp"
#include "basinscope/ctl.hpp"
#include "basinscope/diagrams.hpp"

#include <json.hpp>

namespace basinscope {

using json = nlohmann::ordered_json;

/// Counts that fit in 64 bits are numbers, larger ones decimal strings.
json count_json(const big_count& n);
/// {size, percent}
json size_json(const set_size& s);

/// Symbolic set rendered as a Boolean expression over the variable names.
std::string set_expression(const transition_system& ts, const dd_ref& set, expression_style style);

json attractors_json(const transition_system& ts, const std::vector<attractor>& attractors, expression_style style);

/// Per attractor: {index, representative, kind, weak, strong, cycle_free}.
json basins_json(const transition_system& ts, const std::vector<attractor>& attractors,
                 const std::vector<basin_triple>& triples);

/// {partial, nodes: [{key, size, percent, expression}], edges: [[I], [J]], uncommitted}
json diagram_json(const transition_system& ts, const quotient_diagram& diagram, expression_style style);

json phenotypes_json(const transition_system& ts, const std::vector<phenotype>& phenos);

json accept_json(const transition_system& ts, const std::string& formula, const accept_result& result);

json simulation_json(const std::vector<phenotype>& phenos, const simulation_result& result,
                     const simulation_options& options);

} // namespace basinscope
