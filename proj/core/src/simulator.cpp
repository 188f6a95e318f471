#include "cachenet/simulator.hpp"

#include <cmath>
#include <future>
#include <ostream>
#include <random>
#include <stdexcept>

namespace cachenet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D6BE49D3875AB1ULL;
    return x ^ (x >> 31);
}

// Substream for replication r, independent of how many replications run.
std::uint64_t replication_seed(std::uint64_t master, std::uint32_t replication) {
    return splitmix64(master + 0x9E3779B97F4A7C15ULL * (replication + 1));
}

enum class UserState { idle, fresh, retry_helper, retry_dc };

struct Engine {
    const ScenarioParams& p;
    std::mt19937_64 rng;
    std::uniform_real_distribution<double> unit{0.0, 1.0};

    bool coin(double prob) { return unit(rng) < prob; }
};

ReplicationStats run_replication(const SimConfig& config, bool saturated,
                                 std::uint32_t replication, std::uint64_t warmup,
                                 std::ostream* trace) {
    const ScenarioParams& p = config.params;
    Engine eng{p, std::mt19937_64(replication_seed(config.seed, replication))};
    const bool persistent = config.request_model == RequestModel::persistent;

    // Marginal per-transmission success of the queue under the memoryless
    // request mix (mu / q_S); drives departures in persistent mode, where the
    // tagged user's request process is paused while a request is outstanding.
    const double service_per_tx =
        (1.0 - p.external_request_prob) * p.links.p_sd_s +
        p.external_request_prob * p.dc_availability * p.links.p_sd_s_dc;
    // Link used for helper->user transfers. The throughput model always uses
    // the real S->U link; the delay model follows the same flag as the
    // analytical formulas so either variant can be cross-checked.
    const double helper_user_link =
        (persistent && !p.helper_retry_uses_su_link) ? p.links.p_sd_s : p.links.p_su_s;

    ReplicationStats stats;
    std::uint64_t queue_len = 0;
    UserState user = UserState::idle;
    std::uint64_t request_age = 0;
    bool request_counted = false;

    for (std::uint64_t slot = 0; slot < config.num_slots; ++slot) {
        const bool measured = slot >= warmup;
        const bool queue_busy = saturated || queue_len > 0;
        if (measured && queue_busy) ++stats.busy_slots;
        const bool s_tx = queue_busy && eng.coin(p.tx_prob);

        bool s_to_u = false;
        bool dc_tx = false;
        bool delivered = false;
        bool user_request = false;

        auto dc_attempt = [&](double link_prob) {
            if (eng.coin(p.dc_availability)) {
                dc_tx = true;
                if (eng.coin(link_prob)) delivered = true;
            }
        };

        if (!persistent) {
            user_request = eng.coin(p.external_request_prob);
            if (user_request) {
                if (s_tx) {
                    dc_attempt(p.links.p_dc_s_dc);
                } else if (eng.coin(p.helper_assist_prob)) {
                    if (eng.coin(p.helper_hit_prob)) {
                        s_to_u = true;
                        if (eng.coin(p.links.p_su_s)) delivered = true;
                    } else {
                        dc_attempt(p.links.p_dc_dc);  // same-slot redirect on miss
                    }
                } else {
                    dc_attempt(p.links.p_dc_dc);
                }
            }
            if (delivered && measured) ++stats.deliveries;
        } else {
            if (user == UserState::idle && eng.coin(p.external_request_prob)) {
                user = UserState::fresh;
                request_age = 0;
                request_counted = measured;
            }
            if (user != UserState::idle) {
                ++request_age;
                switch (user) {
                    case UserState::fresh:
                        if (s_tx) {
                            dc_attempt(p.links.p_dc_s_dc);
                            // failure leaves the request fresh: the cache
                            // lookup has not happened yet
                        } else {
                            // hit/miss is resolved the first slot the helper
                            // is available and pinned for the request's life
                            const bool hit = eng.coin(p.helper_hit_prob);
                            if (eng.coin(p.helper_assist_prob) && hit) {
                                s_to_u = true;
                                if (eng.coin(helper_user_link)) delivered = true;
                                else user = UserState::retry_helper;
                            } else if (!hit) {
                                dc_attempt(p.links.p_dc_dc);
                                if (!delivered) user = UserState::retry_dc;
                            } else {
                                dc_attempt(p.links.p_dc_dc);
                                if (!delivered) user = UserState::retry_helper;
                            }
                        }
                        break;
                    case UserState::retry_helper:
                        if (s_tx) {
                            dc_attempt(p.links.p_dc_s_dc);
                        } else if (eng.coin(p.helper_assist_prob)) {
                            s_to_u = true;
                            if (eng.coin(helper_user_link)) delivered = true;
                        } else {
                            dc_attempt(p.links.p_dc_dc);
                        }
                        break;
                    case UserState::retry_dc:
                        dc_attempt(s_tx ? p.links.p_dc_s_dc : p.links.p_dc_dc);
                        break;
                    case UserState::idle:
                        break;
                }
                if (delivered) {
                    if (request_counted) {
                        ++stats.completed_requests;
                        stats.delay_slot_sum += static_cast<double>(request_age);
                    }
                    if (measured) ++stats.deliveries;
                    user = UserState::idle;
                }
            }
        }

        if (s_tx && s_to_u) ++stats.exclusion_violations;

        if (s_tx) {
            bool departed;
            if (persistent) {
                departed = eng.coin(service_per_tx);
            } else if (user_request) {
                // the interfered slot only completes when the data center is
                // actually transmitting; an addressed-but-unavailable data
                // center voids the helper's slot, matching the service rate
                departed = dc_tx && eng.coin(p.links.p_sd_s_dc);
            } else {
                departed = eng.coin(p.links.p_sd_s);
            }
            if (departed) {
                ++stats.departures;
                if (measured) ++stats.measured_departures;
                if (!saturated) --queue_len;
            }
        }

        if (!saturated && eng.coin(p.arrival_rate)) {
            ++queue_len;
            ++stats.arrivals;
        }
        if (measured) ++stats.measured_slots;

        if (trace) {
            *trace << "slot=" << slot << " Q=" << queue_len << " s_tx=" << s_tx
                   << " s_to_u=" << s_to_u << " dc_tx=" << dc_tx
                   << " delivered=" << delivered << '\n';
        }
    }
    stats.final_queue_len = queue_len;
    return stats;
}

Estimate across_replications(const std::vector<double>& values) {
    Estimate est;
    if (values.empty()) return est;
    double sum = 0.0;
    for (double v : values) sum += v;
    est.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - est.mean) * (v - est.mean);
        est.std_error = std::sqrt(ss / static_cast<double>(values.size() - 1) /
                                  static_cast<double>(values.size()));
    }
    return est;
}

SimulationReport run(const SimConfig& config, bool saturated) {
    config.params.validate();
    if (config.num_replications < 1) {
        throw std::invalid_argument("SimConfig: num_replications must be >= 1");
    }
    std::uint64_t warmup = config.warmup_slots.value_or(config.num_slots / 10);
    if (warmup >= config.num_slots) {
        throw std::invalid_argument("SimConfig: num_slots must exceed warmup_slots");
    }

    SimulationReport report;
    report.saturated = saturated;
    report.request_model = config.request_model;
    report.replications.resize(config.num_replications);

    std::vector<std::future<ReplicationStats>> jobs;
    jobs.reserve(config.num_replications);
    for (std::uint32_t r = 0; r < config.num_replications; ++r) {
        std::ostream* trace = r == 0 ? config.trace : nullptr;
        jobs.push_back(std::async(std::launch::async, run_replication, std::cref(config),
                                  saturated, r, warmup, trace));
    }
    for (std::uint32_t r = 0; r < config.num_replications; ++r) {
        report.replications[r] = jobs[r].get();
    }

    std::vector<double> ts, tu, busy, delay;
    for (const ReplicationStats& s : report.replications) {
        double slots = static_cast<double>(s.measured_slots);
        ts.push_back(static_cast<double>(s.measured_departures) / slots);
        tu.push_back(static_cast<double>(s.deliveries) / slots);
        busy.push_back(static_cast<double>(s.busy_slots) / slots);
        if (s.completed_requests > 0) {
            delay.push_back(s.delay_slot_sum / static_cast<double>(s.completed_requests));
        }
    }
    report.throughput_s = across_replications(ts);
    report.throughput_u = across_replications(tu);
    report.busy_fraction = across_replications(busy);
    if (config.request_model == RequestModel::persistent) {
        report.mean_delay = across_replications(delay);
    }
    return report;
}

}  // namespace

SimulationReport simulate(const SimConfig& config) { return run(config, false); }

SimulationReport simulate_saturated(const SimConfig& config) { return run(config, true); }

double queue_busy_estimate(const SimulationReport& report) {
    return report.busy_fraction.mean;
}

}  // namespace cachenet
