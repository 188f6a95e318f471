#pragma once

#include <ostream>
#include <string>

#include "config.hpp"

namespace cachenet::cli {

/// Formats a value with 6 significant digits; infinite delays are written as
/// the token "unreachable" so the CSV stays parseable.
std::string csv_number(double value);

/// One CSV row per sweep point (or a single row when no sweep is set).
/// Throws InfeasibleError / ConfigError; simulation errors propagate.
void run_analyze(const ExperimentSpec& spec, std::ostream& out);
void run_optimize(const ExperimentSpec& spec, std::ostream& out);
void run_simulate(const ExperimentSpec& spec, std::ostream& out);

}  // namespace cachenet::cli
