#include "cachenet/catalog.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cachenet {

ZipfCatalog::ZipfCatalog(std::size_t library_size, double shape)
    : size_(library_size), shape_(shape) {
    if (size_ < 1) {
        throw std::invalid_argument("ZipfCatalog: library_size must be >= 1");
    }
    if (!(shape_ >= 0.0) || !std::isfinite(shape_)) {
        throw std::invalid_argument("ZipfCatalog: shape must be finite and >= 0");
    }
    norm_ = 1.0 / raw_prefix_sum(size_);
}

ZipfCatalog::ZipfCatalog(const ZipfCatalog& other)
    : size_(other.size_), shape_(other.shape_), norm_(other.norm_) {
    std::lock_guard<std::mutex> lock(other.cache_mutex_);
    prefix_cache_ = other.prefix_cache_;
}

// Summed from rank `count` downward so the smallest terms accumulate first;
// keeps the relative error near 1e-12 even for large libraries.
double ZipfCatalog::raw_prefix_sum(std::size_t count) const {
    double sum = 0.0;
    for (std::size_t i = count; i >= 1; --i) {
        sum += std::pow(static_cast<double>(i), -shape_);
    }
    return sum;
}

double ZipfCatalog::popularity(std::size_t rank) const {
    if (rank < 1 || rank > size_) {
        throw std::domain_error("ZipfCatalog::popularity: rank " + std::to_string(rank) +
                                " outside [1, " + std::to_string(size_) + "]");
    }
    return norm_ * std::pow(static_cast<double>(rank), -shape_);
}

double ZipfCatalog::prefix_mass(std::size_t count) const {
    if (count == 0) return 0.0;
    if (count > size_) {
        throw std::domain_error("ZipfCatalog::prefix_mass: count exceeds library size");
    }
    if (count == size_) return 1.0;
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = prefix_cache_.find(count);
        if (it != prefix_cache_.end()) return it->second * norm_;
    }
    double raw = raw_prefix_sum(count);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    prefix_cache_.emplace(count, raw);
    return raw * norm_;
}

void validate(const ZipfCatalog& catalog, const CacheConfig& cache) {
    if (cache.user_capacity > cache.helper_capacity) {
        throw std::invalid_argument("CacheConfig: user_capacity must not exceed helper_capacity");
    }
    if (cache.helper_capacity > catalog.library_size()) {
        throw std::invalid_argument("CacheConfig: helper_capacity exceeds library size");
    }
    if (cache.policy == CachePolicy::CMPC &&
        cache.user_capacity + cache.helper_capacity > catalog.library_size()) {
        throw std::invalid_argument(
            "CacheConfig: CMPC requires user_capacity + helper_capacity <= library size");
    }
}

double external_request_prob(const ZipfCatalog& catalog, const CacheConfig& cache) {
    validate(catalog, cache);
    return 1.0 - catalog.prefix_mass(cache.user_capacity);
}

double helper_hit_prob(const ZipfCatalog& catalog, const CacheConfig& cache) {
    validate(catalog, cache);
    std::size_t lo = cache.user_capacity;
    std::size_t hi = cache.policy == CachePolicy::MPC
                         ? cache.helper_capacity
                         : cache.user_capacity + cache.helper_capacity;
    if (hi <= lo) return 0.0;
    return catalog.prefix_mass(hi) - catalog.prefix_mass(lo);
}

}  // namespace cachenet
