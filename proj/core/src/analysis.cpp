#include "cachenet/analysis.hpp"

#include <stdexcept>
#include <string>

#include "cachenet/errors.hpp"

namespace cachenet {

namespace {

void check_prob(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string("ScenarioParams: ") + name +
                                    " outside [0,1]");
    }
}

// Per-transmission success probability of the helper's queue, i.e. mu / q_S.
double service_success_per_tx(const ScenarioParams& p) {
    return (1.0 - p.external_request_prob) * p.links.p_sd_s +
           p.external_request_prob * p.dc_availability * p.links.p_sd_s_dc;
}

// Link probability used for helper->user retry transmissions in the delay
// closed forms.
double helper_retry_link(const ScenarioParams& p) {
    return p.helper_retry_uses_su_link ? p.links.p_su_s : p.links.p_sd_s;
}

double weighted_or_zero(double coeff, double value) {
    return coeff == 0.0 ? 0.0 : coeff * value;
}

}  // namespace

void ScenarioParams::validate() const {
    check_prob(arrival_rate, "arrival_rate");
    check_prob(tx_prob, "tx_prob");
    check_prob(external_request_prob, "external_request_prob");
    check_prob(helper_assist_prob, "helper_assist_prob");
    check_prob(helper_hit_prob, "helper_hit_prob");
    check_prob(dc_availability, "dc_availability");
    links.validate();
}

double service_rate(const ScenarioParams& params) {
    return params.tx_prob * service_success_per_tx(params);
}

bool is_stable(const ScenarioParams& params) {
    return params.arrival_rate < service_rate(params);
}

double queue_busy_prob(const ScenarioParams& params) {
    if (!is_stable(params)) {
        throw RegimeError("queue_busy_prob: queue is not stable; P(Q!=0) = 1 in saturation");
    }
    if (params.arrival_rate == 0.0) return 0.0;
    return params.arrival_rate / service_rate(params);
}

double throughput_s(const ScenarioParams& params) {
    return is_stable(params) ? params.arrival_rate : service_rate(params);
}

double throughput_u_stable(const ScenarioParams& params) {
    if (!is_stable(params)) {
        throw RegimeError("throughput_u_stable: queue is not stable");
    }
    double q_u = params.external_request_prob;
    double alpha = params.dc_availability;
    double denom = service_success_per_tx(params);
    // denom > 0 is implied by stability (lambda < q_S * denom <= denom).
    double assisted = alpha * params.links.p_dc_dc +
                      params.helper_assist_prob * params.helper_hit_prob *
                          (params.links.p_su_s - alpha * params.links.p_dc_dc);
    return q_u * alpha * params.arrival_rate * params.links.p_dc_s_dc / denom +
           (denom - params.arrival_rate) / denom * q_u * assisted;
}

double throughput_u_unstable(const ScenarioParams& params) {
    double q_u = params.external_request_prob;
    double alpha = params.dc_availability;
    double q_c_hit = params.helper_assist_prob * params.helper_hit_prob;
    return params.tx_prob * q_u * alpha * params.links.p_dc_s_dc +
           (1.0 - params.tx_prob) * q_u *
               (q_c_hit * params.links.p_su_s + (1.0 - q_c_hit) * alpha * params.links.p_dc_dc);
}

double weighted_sum_throughput(const ScenarioParams& params, double weight, Regime regime) {
    check_prob(weight, "weight");
    if (regime == Regime::stable) {
        if (!is_stable(params)) {
            throw RegimeError("weighted_sum_throughput: stable regime requested for unstable scenario");
        }
        return weight * params.arrival_rate + (1.0 - weight) * throughput_u_stable(params);
    }
    return weight * service_rate(params) + (1.0 - weight) * throughput_u_unstable(params);
}

double delay_dc_state(const ScenarioParams& params, double busy_prob) {
    double busy_tx = params.tx_prob * busy_prob;
    double success = params.dc_availability *
                     (busy_tx * params.links.p_dc_s_dc + (1.0 - busy_tx) * params.links.p_dc_dc);
    return success > 0.0 ? 1.0 / success : kUnreachableDelay;
}

double delay_helper_state(const ScenarioParams& params, double busy_prob) {
    double busy_tx = params.tx_prob * busy_prob;
    double success =
        busy_tx * params.dc_availability * params.links.p_dc_s_dc +
        (1.0 - busy_tx) * (params.helper_assist_prob * helper_retry_link(params) +
                           (1.0 - params.helper_assist_prob) * params.dc_availability *
                               params.links.p_dc_dc);
    return success > 0.0 ? 1.0 / success : kUnreachableDelay;
}

double delay_total(const ScenarioParams& params, Regime regime) {
    double busy = regime == Regime::stable ? queue_busy_prob(params) : 1.0;
    double busy_tx = params.tx_prob * busy;
    double alpha = params.dc_availability;
    double p_h = params.helper_hit_prob;
    double q_c = params.helper_assist_prob;

    double d_s = delay_helper_state(params, busy);
    double d_dc = delay_dc_state(params, busy);

    double helper_retry_weight = p_h * q_c * (1.0 - helper_retry_link(params)) +
                                 p_h * (1.0 - q_c) * (1.0 - alpha * params.links.p_dc_dc);
    double dc_retry_weight = (1.0 - p_h) * (1.0 - alpha * params.links.p_dc_dc);
    double recurse = weighted_or_zero(helper_retry_weight, d_s) +
                     weighted_or_zero(dc_retry_weight, d_dc);
    if (delay_unreachable(recurse)) return kUnreachableDelay;

    double denom = 1.0 - busy_tx * (1.0 - alpha * params.links.p_dc_s_dc);
    if (!(denom > 0.0)) return kUnreachableDelay;
    return (1.0 + (1.0 - busy_tx) * recurse) / denom;
}

AnalysisReport analyze(const ScenarioParams& params, double weight) {
    params.validate();
    AnalysisReport report;
    report.service_rate = service_rate(params);
    report.stable = is_stable(params);
    Regime regime = report.stable ? Regime::stable : Regime::unstable;
    report.queue_busy_prob = report.stable ? queue_busy_prob(params) : 1.0;
    report.throughput_s = throughput_s(params);
    report.throughput_u =
        report.stable ? throughput_u_stable(params) : throughput_u_unstable(params);
    report.weighted_sum = weighted_sum_throughput(params, weight, regime);
    report.delay_helper_state = delay_helper_state(params, report.queue_busy_prob);
    report.delay_dc_state = delay_dc_state(params, report.queue_busy_prob);
    report.delay_total = delay_total(params, regime);
    return report;
}

}  // namespace cachenet
