#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace cachenet::cli {

/// Names accepted by `reproduce <target>`: table2..table8, fig2, fig5..fig11.
const std::vector<std::string>& reproduce_targets();

/// Emits the target's underlying data as CSV plus a sidecar report comparing
/// achieved values against the published references. Returns false when any
/// tolerance check fails (the CSV and report are still written in full).
bool run_reproduce(const std::string& target, const ExperimentSpec& spec, std::ostream& csv,
                   std::ostream& report);

}  // namespace cachenet::cli
