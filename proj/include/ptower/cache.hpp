#pragma once

#include <filesystem>
#include <string>

#include "ptower/enumerate.hpp"
#include "ptower/error.hpp"

namespace ptower
{

// A cache file exists for a weight class but was written under different
// parameters, or fails validation.
struct cache_mismatch : error {
    using error::error;
};

inline constexpr int cache_format_version = 1;
inline constexpr const char *cache_magic = "PTOWER-CACHE";

// Stable hex digest of every parameter that influences enumeration output.
std::string config_fingerprint(const EnumerationConfig &cfg);

/// One file per weight class, "w<weight>.<fingerprint>.ptc", in one
/// directory. Classes load in weight order; novelty depends on all lighter
/// classes.
class WeightClassCache
{
public:
    WeightClassCache(std::filesystem::path dir, bool force) : dir_(std::move(dir)), force_(force) {}

    // Bring `en` up to max_weight, loading cached classes and writing new
    // ones. Throws cache_mismatch on stale files unless force is set, in
    // which case they are replaced.
    void materialize(Enumeration &en, unsigned long max_weight) const;

    std::filesystem::path class_path(unsigned long w, const std::string &fingerprint) const;

    struct Stats {
        unsigned long loaded = 0;
        unsigned long written = 0;
    };
    const Stats &last_stats() const { return stats_; }

private:
    void load(Enumeration &en, const std::filesystem::path &p, const std::string &fingerprint) const;
    void store(const Enumeration &en, unsigned long w, const std::string &fingerprint) const;

    std::filesystem::path dir_;
    bool force_;
    mutable Stats stats_;
};

// Text of one class file (exposed for tests).
std::string render_class_file(const Enumeration &en, unsigned long w, const std::string &fingerprint);

} // namespace ptower
