#pragma once

#include <string>
#include <vector>

#include "dynlab/pseudo_orbit.hpp"
#include "dynlab/recurrence.hpp"

namespace dynlab {

/// Step graph as DOT, nodes in label order.
std::string export_dot(const System& f, const StepGraph& graph);

/// Step graph with chain classes rendered as clusters; unclassified points
/// stay at top level.
std::string export_dot(const System& f, const StepGraph& graph,
                       const std::vector<ChainClass>& classes);

}  // namespace dynlab
