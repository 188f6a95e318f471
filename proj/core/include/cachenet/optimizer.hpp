#pragma once

#include <cstddef>

#include "cachenet/analysis.hpp"

namespace cachenet {

/// Scenario parameters with the two decision variables (q_S, q_C) left open.
struct OptimizerInputs {
    double arrival_rate = 0.0;
    double external_request_prob = 0.0;
    double helper_hit_prob = 0.0;
    double dc_availability = 0.0;
    LinkProbabilities links{};

    ScenarioParams with(double tx_prob, double helper_assist_prob) const;
};

struct OptimizationResult {
    double best_q_s = 0.0;
    double best_q_c = 0.0;
    double best_value = 0.0;
    Regime regime = Regime::stable;
    std::size_t candidates_evaluated = 0;

    // The objective was flat in q_C at the optimum; the reported q_C is a
    // convention, not a unique maximizer.
    bool q_c_tie = false;
    // An interior candidate (1/2) strictly beat every vertex. Not expected
    // for a bilinear objective; surfaced rather than suppressed.
    bool interior_candidate_won = false;
};

/// Maximum of w*lambda + (1-w)*T_U over the stability-preserving box.
/// The objective is independent of q_S inside the feasible interval; the
/// reported q_S is the smallest feasible value. Throws InfeasibleError when
/// even q_S = 1 cannot stabilize the arrival rate.
OptimizationResult optimize_stable(const OptimizerInputs& inputs, double weight);

/// Maximum of w*mu + (1-w)*T_U' over [0,1]^2, evaluated at the nine
/// candidate points {0, 1/2, 1}^2. Ties break toward smaller q_S, then
/// smaller q_C.
OptimizationResult optimize_unstable(const OptimizerInputs& inputs, double weight);

/// Exhaustive grid evaluation of the same objective, for verification.
/// grid_step must lie in (0, 0.5]. In the stable regime the q_S axis is
/// restricted to the feasible interval.
OptimizationResult grid_oracle(const OptimizerInputs& inputs, double weight, Regime regime,
                               double grid_step = 1.0 / 200.0);

}  // namespace cachenet
