#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cachenet/analysis.hpp"
#include "cachenet/catalog.hpp"
#include "cachenet/phy.hpp"
#include "cachenet/simulator.hpp"

namespace cachenet::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    enum class Axis { none, lambda, alpha, q_s, m_u, w };
    Axis axis = Axis::none;
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
    std::vector<double> values;  // explicit list; overrides start/stop/step

    std::vector<double> points() const;
};

struct CatalogSpec {
    std::size_t library_size = 0;
    double zipf_shape = 0.0;
    std::size_t user_capacity = 0;
    std::size_t helper_capacity = 0;
    CachePolicy policy = CachePolicy::MPC;
};

/// Everything a run needs, before derived probabilities are resolved.
struct ExperimentSpec {
    std::optional<CatalogSpec> catalog;
    std::optional<NetworkGeometry> geometry;
    std::optional<double> explicit_q_u;
    std::optional<double> explicit_p_h;
    std::optional<LinkProbabilities> explicit_links;

    double arrival_rate = 0.0;
    double tx_prob = 0.0;
    double helper_assist_prob = 0.0;
    double dc_availability = 0.0;
    double weight = 0.5;
    bool helper_retry_uses_su_link = false;

    Regime optimize_regime = Regime::stable;
    double grid_step = 1.0 / 200.0;

    std::uint64_t num_slots = 100000;
    std::optional<std::uint64_t> warmup_slots;
    std::uint32_t num_replications = 20;
    std::uint64_t seed = 1;
    RequestModel request_model = RequestModel::memoryless;

    SweepSpec sweep;

    /// Derives q_U/p_h (from the catalog unless explicit) and the link
    /// probabilities (from the geometry unless explicit).
    ScenarioParams resolve_params() const;
};

/// Raw key=value lines grouped by [section], with line numbers preserved for
/// diagnostics.
struct RawConfig {
    struct Entry {
        std::string value;
        int line = 0;
    };
    std::map<std::string, std::map<std::string, Entry>> sections;

    void set(const std::string& section, const std::string& key, const std::string& value,
             int line);
};

RawConfig parse_raw_config(const std::string& text, const std::string& source_name);
RawConfig load_raw_config_file(const std::string& path);

/// Applies a flat `key=value` override; the section is inferred from the key.
/// Throws ConfigError for unknown keys.
void apply_override(RawConfig& raw, const std::string& key, const std::string& value);

/// All override-able keys, for CLI registration.
const std::vector<std::string>& known_keys();

ExperimentSpec build_spec(const RawConfig& raw);

/// The built-in reference scenario, also shipped as tools/configs/default.cfg.
const std::string& default_config_text();

}  // namespace cachenet::cli
