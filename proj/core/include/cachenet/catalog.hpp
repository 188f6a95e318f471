#pragma once

#include <cstddef>
#include <mutex>
#include <unordered_map>

namespace cachenet {

enum class CachePolicy {
    MPC,   // each node independently caches the most popular files
    CMPC,  // helper caches the next-most-popular files after the user's
};

/// Content library with Zipf popularity: the i-th most popular file is
/// requested with probability Omega / i^shape, where Omega normalizes the
/// masses to 1. Popularities are computed on demand; only prefix sums are
/// cached, so library sizes up to ~1e8 stay cheap.
class ZipfCatalog {
public:
    /// library_size >= 1, shape >= 0 (shape 0 is the uniform library).
    ZipfCatalog(std::size_t library_size, double shape);

    ZipfCatalog(const ZipfCatalog& other);

    std::size_t library_size() const { return size_; }
    double shape() const { return shape_; }

    /// Request probability of the file at the given popularity rank
    /// (1-based). Throws std::domain_error for ranks outside [1, N].
    double popularity(std::size_t rank) const;

    /// Total popularity mass of the `count` most popular files.
    double prefix_mass(std::size_t count) const;

private:
    double raw_prefix_sum(std::size_t count) const;

    std::size_t size_;
    double shape_;
    double norm_;  // Omega

    mutable std::mutex cache_mutex_;
    mutable std::unordered_map<std::size_t, double> prefix_cache_;
};

/// Storage capacities of the user and the helper. The helper is assumed to
/// be at least as large as the user; CMPC additionally requires the two
/// caches to fit disjointly in the library.
struct CacheConfig {
    std::size_t user_capacity = 0;    // M_U
    std::size_t helper_capacity = 0;  // M_S
    CachePolicy policy = CachePolicy::MPC;
};

/// Throws std::invalid_argument if the cache configuration violates the
/// capacity ordering or does not fit the catalog.
void validate(const ZipfCatalog& catalog, const CacheConfig& cache);

/// Probability that the user requests a file outside its own cache (q_U).
double external_request_prob(const ZipfCatalog& catalog, const CacheConfig& cache);

/// Probability that an external request of the user hits the helper's
/// cache (p_h), under the configured placement policy.
double helper_hit_prob(const ZipfCatalog& catalog, const CacheConfig& cache);

}  // namespace cachenet
