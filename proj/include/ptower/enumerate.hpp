#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ptower/eval.hpp"
#include "ptower/expr.hpp"
#include "ptower/kernels.hpp"

namespace ptower
{

/// All canonical expressions of weight w, sorted by structural_cmp.
std::vector<Expr> generate_weight_class(unsigned long w);

/// Memoising generator; class w is built from classes 2 .. w-2.
class ClassGenerator
{
public:
    const std::vector<Expr> &get(unsigned long w);

private:
    std::vector<std::vector<Expr>> classes_;
};

enum class NoveltyKind { new_value, duplicate, unresolved };

struct Novelty {
    NoveltyKind kind = NoveltyKind::new_value;
    // duplicate: the earlier index carrying the same value.
    std::size_t duplicate_of = 0;
    // unresolved: earlier indices that could neither be separated nor matched.
    std::vector<std::size_t> unresolved_vs;

    static Novelty new_value() { return {}; }
    static Novelty duplicate(std::size_t of) { return {NoveltyKind::duplicate, of, {}}; }
    static Novelty unresolved(std::vector<std::size_t> vs) { return {NoveltyKind::unresolved, 0, std::move(vs)}; }

    // "new", "dup:<i>" or "unresolved:<i>;<j>;...".
    std::string str() const;
    static Novelty parse(const std::string &s);

    friend bool operator==(const Novelty &, const Novelty &) = default;
};

struct EnumerationEntry {
    std::size_t index = 0; // 1-based
    Expr expr;
    unsigned long weight = 0;
    BallValue value;
    Novelty novelty;
};

struct WeightClassStats {
    unsigned long weight = 0;
    std::size_t syntactic_count = 0;
    std::size_t new_value_count = 0;
    std::size_t duplicate_count = 0;
    std::size_t unresolved_count = 0;
    std::size_t astronomical_count = 0;

    friend bool operator==(const WeightClassStats &, const WeightClassStats &) = default;
};

struct EnumerationConfig {
    EvalOptions eval;
    // Precision of the stored value of every entry.
    mpfr_prec_t working_precision = 128;
    // Overlapping enclosures are refined until both are at most this wide.
    Float dedup_width = pow10_float(-256);
    ThreadCount threads = 0;
};

enum class Decision { equal, distinct, unresolved };

Decision dedup_decide(const EnumerationEntry &a, const EnumerationEntry &b, const EnumerationConfig &cfg);

/// Materialised weight-ordered enumeration: the bijection between
/// canonical expressions and 1, 2, 3, ...
class Enumeration
{
public:
    explicit Enumeration(EnumerationConfig cfg = {});

    const EnumerationConfig &config() const { return cfg_; }

    // Materialise every weight class up to max_weight (no-op below the
    // current maximum).
    void extend_to(unsigned long max_weight);
    // 1 before any class is materialised.
    unsigned long max_weight() const { return max_weight_; }

    // Append class w = max_weight() + 1 with novelty decided elsewhere (cache
    // reload). Values are recomputed at the working precision.
    void append_class(std::vector<Expr> exprs, std::vector<Novelty> novelty);

    const std::vector<EnumerationEntry> &entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    // Throws range_error beyond the materialised range.
    const EnumerationEntry &expr_at(std::size_t n) const;
    // Absent when expr is not (yet) enumerated.
    std::optional<std::size_t> index_of(const Expr &expr) const;

    std::vector<WeightClassStats> stats() const;
    // Indices of NewValue entries in order.
    std::vector<std::size_t> new_value_indices() const;

    // Entries of weight w (a contiguous range).
    std::vector<const EnumerationEntry *> weight_class(unsigned long w) const;

private:
    struct NarrowKey {
        bool operator()(const Float &a, const Float &b) const { return mpfr_less_p(a.get(), b.get()) != 0; }
    };

    Novelty classify(const EnumerationEntry &e) const;
    void insert(EnumerationEntry e);
    std::vector<std::size_t> overlapping(const BallValue &v) const;

    EnumerationConfig cfg_;
    ClassGenerator gen_;
    unsigned long max_weight_ = 1;
    std::vector<EnumerationEntry> entries_;
    std::unordered_map<std::string, std::size_t> by_text_;
    // Value index: narrow enclosures keyed by lower bound, the rest scanned.
    std::multimap<Float, std::size_t, NarrowKey> narrow_;
    std::vector<std::size_t> wide_;
    std::vector<std::size_t> astronomical_;
};

// Full enumeration stream to max_weight (>= 2).
std::vector<EnumerationEntry> enumerate(unsigned long max_weight, const EnumerationConfig &cfg = {});

std::vector<WeightClassStats> stats(unsigned long max_weight, const EnumerationConfig &cfg = {});

// First entry (in index order) whose enclosure lies strictly inside (lo, hi).
std::optional<EnumerationEntry> density_probe(const mpq_class &lo, const mpq_class &hi, unsigned long max_weight,
                                              Enumeration &en);

} // namespace ptower
