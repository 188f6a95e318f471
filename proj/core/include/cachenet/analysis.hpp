#pragma once

#include <limits>

#include "cachenet/phy.hpp"

namespace cachenet {

enum class Regime { stable, unstable };

/// Full probability tuple of one scenario. Every closed form below is a
/// pure function of these values.
struct ScenarioParams {
    double arrival_rate = 0.0;          // lambda, Bernoulli packet arrivals at the helper
    double tx_prob = 0.0;               // q_S
    double external_request_prob = 0.0; // q_U
    double helper_assist_prob = 0.0;    // q_C
    double helper_hit_prob = 0.0;       // p_h
    double dc_availability = 0.0;       // alpha
    LinkProbabilities links{};

    // The delay closed forms write the helper->user retry transmission with
    // the helper->destination success probability. This flag substitutes the
    // actual helper->user link instead, for sensitivity studies; default is
    // the formula as published.
    bool helper_retry_uses_su_link = false;

    double miss_prob() const { return 1.0 - helper_hit_prob; }

    void validate() const;  // throws std::invalid_argument
};

/// Distinguished value signalling that a request can never be served
/// (e.g. the data center is permanently unavailable).
inline constexpr double kUnreachableDelay = std::numeric_limits<double>::infinity();

inline bool delay_unreachable(double delay) { return !(delay < kUnreachableDelay); }

/// Average service rate mu of the helper's queue. Note the data-center
/// availability gates the whole interfered term: a slot where the user
/// requests externally but the data center is down contributes nothing.
double service_rate(const ScenarioParams& params);

/// Loynes criterion, strict: lambda == mu counts as unstable.
bool is_stable(const ScenarioParams& params);

/// P(Q != 0) = lambda / mu for a stable queue. Throws RegimeError otherwise.
double queue_busy_prob(const ScenarioParams& params);

/// Helper->destination throughput: lambda when stable, mu when not.
double throughput_s(const ScenarioParams& params);

/// User throughput with a stable helper queue. Independent of q_S.
double throughput_u_stable(const ScenarioParams& params);

/// User throughput with a saturated helper queue (arrival rate ignored).
double throughput_u_unstable(const ScenarioParams& params);

/// w * T_S + (1 - w) * T_U with the regime-appropriate T_U.
double weighted_sum_throughput(const ScenarioParams& params, double weight, Regime regime);

/// Expected slots to drain a request that retries the data center every
/// slot, given the per-slot probability that the helper is transmitting.
double delay_dc_state(const ScenarioParams& params, double busy_prob);

/// Expected slots for a request known to be cached at the helper,
/// retrying from the helper/data-center mix.
double delay_helper_state(const ScenarioParams& params, double busy_prob);

/// Average delay from request generation to delivery, inclusive.
double delay_total(const ScenarioParams& params, Regime regime);

/// Everything the analysis produces for one scenario.
struct AnalysisReport {
    double service_rate = 0.0;
    bool stable = false;
    double queue_busy_prob = 0.0;
    double throughput_s = 0.0;
    double throughput_u = 0.0;
    double weighted_sum = 0.0;
    double delay_total = 0.0;
    double delay_helper_state = 0.0;
    double delay_dc_state = 0.0;
};

AnalysisReport analyze(const ScenarioParams& params, double weight);

}  // namespace cachenet
