#pragma once

#include <stdexcept>
#include <string>

namespace cachenet {

/// Thrown when a stable-regime quantity is requested for an unstable
/// scenario (or vice versa).
class RegimeError : public std::logic_error {
public:
    explicit RegimeError(const std::string& what) : std::logic_error(what) {}
};

/// Thrown when the stability constraint leaves no feasible transmission
/// probability. Carries the largest arrival rate that can be stabilized.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& what, double max_stable_arrival_rate)
        : std::runtime_error(what),
          max_stable_arrival_rate_(max_stable_arrival_rate) {}

    double max_stable_arrival_rate() const { return max_stable_arrival_rate_; }

private:
    double max_stable_arrival_rate_;
};

}  // namespace cachenet
