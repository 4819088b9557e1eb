#include "ptower/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "ptower/approx.hpp"
#include "ptower/cache.hpp"
#include "ptower/decimal.hpp"
#include "ptower/diagonal.hpp"
#include "ptower/error.hpp"

namespace ptower::cli
{

void RunConfig::validate() const
{
    if (precision_cap_bits < 64) {
        throw domain_error("precision cap must be at least 64 bits");
    }
    if (working_precision < 16 || working_precision > precision_cap_bits) {
        throw domain_error("working precision must lie in [16, precision cap]");
    }
    if (!(magnitude_cap_log10 > 0)) {
        throw domain_error("magnitude cap must be positive");
    }
    const mpq_class w = parse_decimal(dedup_width);
    if (sgn(w) <= 0 || w >= 1) {
        throw domain_error("dedup width must lie in (0, 1)");
    }
    if (thread_count < 0) {
        throw domain_error("thread count must be nonnegative");
    }
}

EnumerationConfig RunConfig::enumeration_config() const
{
    EnumerationConfig c;
    c.eval.precision_cap = precision_cap_bits;
    c.eval.magnitude_cap_log10 = magnitude_cap_log10;
    c.working_precision = working_precision;
    c.dedup_width = Float::from_string(dedup_width, 64, MPFR_RNDD);
    c.threads = thread_count;
    return c;
}

namespace
{

void materialize(const RunConfig &cfg, Enumeration &en, unsigned long max_weight)
{
    if (cfg.cache_dir.empty()) {
        en.extend_to(max_weight);
        return;
    }
    WeightClassCache(cfg.cache_dir, cfg.force).materialize(en, max_weight);
}

int cmd_enumerate(const RunConfig &cfg, std::ostream &out)
{
    Enumeration en(cfg.enumeration_config());
    materialize(cfg, en, cfg.max_weight);
    EntryWriter w(out, cfg.output_format);
    for (const auto &e : en.entries()) {
        w.write(entry_row(e, cfg.working_precision));
    }
    return exit_ok;
}

int cmd_stats(const RunConfig &cfg, std::ostream &out)
{
    Enumeration en(cfg.enumeration_config());
    materialize(cfg, en, cfg.max_weight);
    write_stats(out, en.stats(), cfg.output_format);
    return exit_ok;
}

int cmd_eval(const RunConfig &cfg, const std::string &text, std::size_t k, std::ostream &out)
{
    const Expr e = parse(text);
    EvalOptions opts;
    opts.precision_cap = cfg.precision_cap_bits;
    opts.magnitude_cap_log10 = cfg.magnitude_cap_log10;
    out << digits(e, k, opts).str() << '\n';
    return exit_ok;
}

std::vector<unsigned long> parse_weights(const std::string &s)
{
    std::vector<unsigned long> out;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(part, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != part.size()) {
            throw domain_error("bad weight list '" + s + "'");
        }
        out.push_back(v);
    }
    return out;
}

int cmd_approx(const RunConfig &cfg, const std::string &target_text, const std::string &radius,
               const std::string &shape_text, const std::string &table, std::ostream &out)
{
    const Target target = Target::from_string(target_text, radius);
    const ShapeFilter shape = parse_shape(shape_text);
    ApproxOptions opts;
    opts.eval.precision_cap = cfg.precision_cap_bits;
    opts.eval.magnitude_cap_log10 = cfg.magnitude_cap_log10;
    opts.cap_width = Float::from_string(cfg.dedup_width, 64, MPFR_RNDD);
    opts.threads = cfg.thread_count;
    if (!table.empty()) {
        auto weights = parse_weights(table);
        if (std::any_of(weights.begin(), weights.end(), [](unsigned long w) { return w < 2; })) {
            throw domain_error("weights must be at least 2");
        }
        write_approx(out, convergence_table(target, weights, shape, opts), cfg.output_format);
        return exit_ok;
    }
    if (cfg.max_weight < 2) {
        throw domain_error("max weight must be at least 2");
    }
    write_approx(out, {approximate(target, cfg.max_weight, shape, opts)}, cfg.output_format);
    return exit_ok;
}

// Smallest weight (searching a little past the request) with enough values.
std::string weight_hint(const RunConfig &cfg, std::size_t n)
{
    Enumeration probe(cfg.enumeration_config());
    for (unsigned long w = 2; w <= std::max<unsigned long>(cfg.max_weight + 6, 14); ++w) {
        probe.extend_to(w);
        if (probe.new_value_indices().size() >= n) {
            return "rerun with --max-weight " + std::to_string(w) + " or more";
        }
    }
    return "increase --max-weight";
}

int cmd_diag(const RunConfig &cfg, std::size_t n, std::ostream &out, std::ostream &err)
{
    Enumeration en(cfg.enumeration_config());
    materialize(cfg, en, cfg.max_weight);
    DiagonalReport report = [&] {
        try {
            return diagonal(n, en, cfg.thread_count);
        } catch (const range_error &ex) {
            throw range_error(std::string(ex.what()) + "; " + weight_hint(cfg, n));
        }
    }();
    const Verification check = verify(report, en);
    write_diagonal(out, report, check, cfg.output_format);
    if (!check.pass) {
        err << "diagonal verification failed: " << check.message << '\n';
        return exit_numeric;
    }
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Enumerate, evaluate and search rational power towers"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char *env = std::getenv(cache_dir_env)) {
        cfg.cache_dir = env;
    } else {
        cfg.cache_dir = ".ptower-cache";
    }
    std::string format = "plain";
    bool no_cache = false;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--format", format, "Output format: csv, jsonl or plain");
        sub->add_option("--cache-dir", cfg.cache_dir, std::string("Cache directory (env ") + cache_dir_env + ")");
        sub->add_flag("--no-cache", no_cache, "Do not read or write the cache");
        sub->add_flag("--force", cfg.force, "Regenerate stale cache files");
        sub->add_option("--threads", cfg.thread_count, "Worker threads (0 = all)");
        sub->add_option("--precision-cap", cfg.precision_cap_bits, "Refinement precision cap in bits");
        sub->add_option("--magnitude-cap", cfg.magnitude_cap_log10, "Astronomical threshold on |log10|");
        sub->add_option("--dedup-width", cfg.dedup_width, "Width at which overlapping values stay unresolved");
        sub->add_option("--working-precision", cfg.working_precision, "Bits for stored entry values");
    };

    auto *en_cmd = app.add_subcommand("enumerate", "Weight-ordered enumeration with novelty flags");
    add_common(en_cmd);
    en_cmd->add_option("--max-weight", cfg.max_weight, "Largest weight class")->required();

    std::string expr_text;
    std::size_t digit_count = 20;
    auto *eval_cmd = app.add_subcommand("eval", "Certified decimal digits of an expression");
    add_common(eval_cmd);
    eval_cmd->add_option("expression", expr_text, "Expression, e.g. \"(2/1)^((2/1)^(1/2))\"")->required();
    eval_cmd->add_option("--digits", digit_count, "Number of fractional digits");

    std::string target = "e", radius = "0", shape = "full", table;
    auto *approx_cmd = app.add_subcommand("approx", "Best approximation of a constant");
    add_common(approx_cmd);
    approx_cmd->add_option("--target", target, "e, pi, ln2, sqrt2, 2pow-sqrt2 or a decimal literal");
    approx_cmd->add_option("--radius", radius, "Uncertainty of a decimal target");
    approx_cmd->add_option("--max-weight", cfg.max_weight, "Weight budget");
    approx_cmd->add_option("--shape", shape, "full, simple, double or atomic");
    approx_cmd->add_option("--table", table, "Comma separated weights for a convergence table");

    std::size_t diag_n = 10;
    auto *diag_cmd = app.add_subcommand("diag", "Diagonal number over the new-value stream");
    add_common(diag_cmd);
    diag_cmd->add_option("--n", diag_n, "Number of diagonal digits")->required();
    diag_cmd->add_option("--max-weight", cfg.max_weight, "Enumeration depth")->required();

    auto *stats_cmd = app.add_subcommand("stats", "Per-weight counts");
    add_common(stats_cmd);
    stats_cmd->add_option("--max-weight", cfg.max_weight, "Largest weight class")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError &ex) {
        err << "error: " << ex.what() << '\n';
        return exit_usage;
    }

    try {
        cfg.output_format = parse_format(format);
        if (no_cache) {
            cfg.cache_dir.clear();
        }
        cfg.validate();
        if ((en_cmd->parsed() || stats_cmd->parsed() || diag_cmd->parsed()) && cfg.max_weight < 2) {
            throw domain_error("max weight must be at least 2");
        }
        if (eval_cmd->parsed() && digit_count < 1) {
            throw domain_error("--digits must be at least 1");
        }
        if (diag_cmd->parsed() && diag_n < 1) {
            throw domain_error("--n must be at least 1");
        }

        if (en_cmd->parsed()) {
            return cmd_enumerate(cfg, out);
        }
        if (stats_cmd->parsed()) {
            return cmd_stats(cfg, out);
        }
        if (eval_cmd->parsed()) {
            return cmd_eval(cfg, expr_text, digit_count, out);
        }
        if (approx_cmd->parsed()) {
            return cmd_approx(cfg, target, radius, shape, table, out);
        }
        if (diag_cmd->parsed()) {
            return cmd_diag(cfg, diag_n, out, err);
        }
    } catch (const syntax_error &ex) {
        err << "error: " << ex.what() << '\n';
        return exit_usage;
    } catch (const domain_error &ex) {
        err << "error: " << ex.what() << '\n';
        return exit_usage;
    } catch (const cache_mismatch &ex) {
        err << "error: " << ex.what() << '\n';
        return exit_cache;
    } catch (const ambiguous_digit &ex) {
        err << "error: " << ex.what()
            << "\n(the value is, or cannot be told apart from, a number with a terminating decimal expansion)\n";
        return exit_numeric;
    } catch (const magnitude_error &ex) {
        err << "error: " << ex.what() << '\n';
        return exit_numeric;
    } catch (const precision_exhausted &ex) {
        err << "error: " << ex.what() << '\n';
        return exit_numeric;
    } catch (const no_candidate &ex) {
        err << "error: " << ex.what() << '\n';
        return exit_search;
    } catch (const range_error &ex) {
        err << "error: " << ex.what() << '\n';
        return exit_range;
    } catch (const std::filesystem::filesystem_error &ex) {
        err << "error: " << ex.what() << '\n';
        return exit_cache;
    }
    return exit_usage;
}

} // namespace ptower::cli
