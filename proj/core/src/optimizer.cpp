#include "cachenet/optimizer.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cachenet/errors.hpp"

namespace cachenet {

namespace {

// mu at q_S = 1; also the right end of the stabilizable arrival-rate range.
double max_service_rate(const OptimizerInputs& in) {
    return (1.0 - in.external_request_prob) * in.links.p_sd_s +
           in.external_request_prob * in.dc_availability * in.links.p_sd_s_dc;
}

std::vector<double> grid_axis(double lo, double step) {
    std::vector<double> axis;
    for (double v = 0.0; v < 1.0 - 1e-12; v += step) {
        if (v >= lo - 1e-15) axis.push_back(v);
    }
    axis.push_back(1.0);
    if (axis.empty() || axis.front() > lo + 1e-15) axis.insert(axis.begin(), lo);
    return axis;
}

}  // namespace

ScenarioParams OptimizerInputs::with(double tx_prob, double helper_assist_prob) const {
    ScenarioParams params;
    params.arrival_rate = arrival_rate;
    params.tx_prob = tx_prob;
    params.external_request_prob = external_request_prob;
    params.helper_assist_prob = helper_assist_prob;
    params.helper_hit_prob = helper_hit_prob;
    params.dc_availability = dc_availability;
    params.links = links;
    return params;
}

OptimizationResult optimize_stable(const OptimizerInputs& inputs, double weight) {
    if (!(weight >= 0.0 && weight <= 1.0)) {
        throw std::invalid_argument("optimize_stable: weight outside [0,1]");
    }
    double mu_max = max_service_rate(inputs);
    if (!(inputs.arrival_rate < mu_max)) {
        throw InfeasibleError(
            "optimize_stable: no transmission probability stabilizes the queue; "
            "arrival rate must be below " + std::to_string(mu_max),
            mu_max);
    }

    OptimizationResult result;
    result.regime = Regime::stable;
    result.best_q_s = inputs.arrival_rate / mu_max;
    result.candidates_evaluated = 2;

    // The q_C coefficient of the objective; every other factor multiplying it
    // is strictly positive under feasibility.
    double coeff = (1.0 - weight) * inputs.external_request_prob * inputs.helper_hit_prob *
                   (inputs.links.p_su_s - inputs.dc_availability * inputs.links.p_dc_dc);
    if (coeff > 0.0) {
        result.best_q_c = 1.0;
    } else if (coeff < 0.0) {
        result.best_q_c = 0.0;
    } else {
        result.q_c_tie = true;
        // A helper that can never serve a hit (p_h = 0 or q_U = 0) is
        // reported as not assisting; the remaining flat cases report 1.
        result.best_q_c =
            (inputs.helper_hit_prob == 0.0 || inputs.external_request_prob == 0.0) ? 0.0 : 1.0;
    }

    // The objective does not depend on q_S inside the feasible interval;
    // evaluated at q_S = 1 so the left endpoint itself stays stable.
    result.best_value = weighted_sum_throughput(inputs.with(1.0, result.best_q_c), weight,
                                                Regime::stable);
    return result;
}

OptimizationResult optimize_unstable(const OptimizerInputs& inputs, double weight) {
    if (!(weight >= 0.0 && weight <= 1.0)) {
        throw std::invalid_argument("optimize_unstable: weight outside [0,1]");
    }
    constexpr std::array<double, 3> kCandidates = {0.0, 0.5, 1.0};

    OptimizationResult result;
    result.regime = Regime::unstable;
    bool first = true;
    std::size_t ties = 0;
    bool vertex_attains_best = false;
    for (double q_s : kCandidates) {
        for (double q_c : kCandidates) {
            double value =
                weighted_sum_throughput(inputs.with(q_s, q_c), weight, Regime::unstable);
            ++result.candidates_evaluated;
            bool vertex = q_s != 0.5 && q_c != 0.5;
            if (first || value > result.best_value) {
                first = false;
                result.best_value = value;
                result.best_q_s = q_s;
                result.best_q_c = q_c;
                ties = 0;
                vertex_attains_best = vertex;
            } else if (value == result.best_value) {
                ++ties;
                vertex_attains_best = vertex_attains_best || vertex;
            }
        }
    }
    result.q_c_tie = ties > 0;
    result.interior_candidate_won =
        (result.best_q_s == 0.5 || result.best_q_c == 0.5) && !vertex_attains_best;
    return result;
}

OptimizationResult grid_oracle(const OptimizerInputs& inputs, double weight, Regime regime,
                               double grid_step) {
    if (!(grid_step > 0.0 && grid_step <= 0.5)) {
        throw std::invalid_argument("grid_oracle: grid_step outside (0, 0.5]");
    }
    double q_s_min = 0.0;
    if (regime == Regime::stable) {
        double mu_max = max_service_rate(inputs);
        if (!(inputs.arrival_rate < mu_max)) {
            throw InfeasibleError("grid_oracle: empty feasible grid; arrival rate must be below " +
                                      std::to_string(mu_max),
                                  mu_max);
        }
        q_s_min = inputs.arrival_rate / mu_max;
    }

    std::vector<double> q_s_axis = grid_axis(q_s_min, grid_step);
    std::vector<double> q_c_axis = grid_axis(0.0, grid_step);

    OptimizationResult result;
    result.regime = regime;
    bool first = true;
    for (double q_s : q_s_axis) {
        for (double q_c : q_c_axis) {
            double value;
            if (regime == Regime::stable) {
                // q_S-independent objective; evaluated with tx_prob = 1 so the
                // boundary grid point itself stays inside the stable region.
                value = weighted_sum_throughput(inputs.with(1.0, q_c), weight, Regime::stable);
            } else {
                value = weighted_sum_throughput(inputs.with(q_s, q_c), weight, Regime::unstable);
            }
            ++result.candidates_evaluated;
            if (first || value > result.best_value) {
                first = false;
                result.best_value = value;
                result.best_q_s = q_s;
                result.best_q_c = q_c;
            }
        }
    }
    return result;
}

}  // namespace cachenet
