#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cachenet/analysis.hpp"

namespace cachenet {

enum class RequestModel {
    // A fresh external request is drawn each slot and abandoned at slot end;
    // matches the throughput analysis.
    memoryless,
    // A request is drawn only when the user is idle and persists until
    // delivered; matches the delay analysis.
    persistent,
};

struct SimConfig {
    ScenarioParams params{};
    std::uint64_t num_slots = 100000;   // per replication, including warmup
    std::optional<std::uint64_t> warmup_slots{};  // default: 10% of num_slots
    std::uint32_t num_replications = 20;
    std::uint64_t seed = 1;
    RequestModel request_model = RequestModel::memoryless;
    std::ostream* trace = nullptr;  // per-slot debug trace, replication 0 only
};

/// Raw per-replication counters; all rate statistics are over the
/// post-warmup window.
struct ReplicationStats {
    std::uint64_t measured_slots = 0;
    std::uint64_t arrivals = 0;       // whole run, for queue conservation
    std::uint64_t departures = 0;     // whole run
    std::uint64_t final_queue_len = 0;
    std::uint64_t measured_departures = 0;
    std::uint64_t deliveries = 0;     // successful transfers to the user
    std::uint64_t busy_slots = 0;
    std::uint64_t completed_requests = 0;
    double delay_slot_sum = 0.0;
    // Slots where the engine recorded both a helper->destination and a
    // helper->user transmission; must stay 0.
    std::uint64_t exclusion_violations = 0;
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
};

struct SimulationReport {
    Estimate throughput_s{};
    Estimate throughput_u{};
    Estimate busy_fraction{};
    Estimate mean_delay{};  // persistent model only; zero otherwise
    bool saturated = false;
    RequestModel request_model = RequestModel::memoryless;
    std::vector<ReplicationStats> replications;
};

/// Runs independent replications of the slot-level protocol and aggregates
/// them. Replications execute concurrently; results are deterministic for a
/// fixed (config, seed).
SimulationReport simulate(const SimConfig& config);

/// Same engine with the helper's queue pinned non-empty; the arrival rate is
/// ignored.
SimulationReport simulate_saturated(const SimConfig& config);

/// Empirical counterpart of P(Q != 0).
double queue_busy_estimate(const SimulationReport& report);

}  // namespace cachenet
