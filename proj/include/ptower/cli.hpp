#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ptower/enumerate.hpp"
#include "ptower/io.hpp"

namespace ptower::cli
{

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_cache = 3;
inline constexpr int exit_numeric = 4;
inline constexpr int exit_search = 5;
inline constexpr int exit_range = 6;

inline constexpr const char *cache_dir_env = "PTOWER_CACHE_DIR";

struct RunConfig {
    unsigned long max_weight = 8;
    mpfr_prec_t precision_cap_bits = mpfr_prec_t{1} << 20;
    double magnitude_cap_log10 = 1e6;
    std::string dedup_width = "1e-256";
    mpfr_prec_t working_precision = 128;
    OutputFormat output_format = OutputFormat::plain;
    // Empty disables the cache.
    std::string cache_dir;
    int thread_count = 0;
    bool force = false;

    // Throws domain_error when a cap is not positive or dedup_width >= 1.
    void validate() const;
    EnumerationConfig enumeration_config() const;
};

// Full command line entry point; returns the process exit status.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace ptower::cli
