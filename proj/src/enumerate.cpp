#include "ptower/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ptower/error.hpp"

namespace ptower
{

// ---------------------------------------------------------------------------
// Generation

const std::vector<Expr> &ClassGenerator::get(unsigned long w)
{
    if (w < 2) {
        throw domain_error("weight classes start at 2");
    }
    while (classes_.size() <= w) {
        const unsigned long cw = classes_.size();
        std::vector<Expr> cls;
        if (cw >= 2) {
            for (unsigned long m = 1; m < cw; ++m) {
                if (std::gcd(m, cw - m) == 1) {
                    cls.push_back(Expr::leaf(m, cw - m));
                }
            }
            for (unsigned long i = 2; i + 2 <= cw; ++i) {
                for (const Expr &b : classes_[i]) {
                    for (const Expr &x : classes_[cw - i]) {
                        // Children are canonical, so only the root can be a redex.
                        Expr p = Expr::pow(b, x);
                        if (!is_root_redex(p)) {
                            cls.push_back(std::move(p));
                        }
                    }
                }
            }
            std::sort(cls.begin(), cls.end(), StructuralLess{});
        }
        classes_.push_back(std::move(cls));
    }
    return classes_[w];
}

std::vector<Expr> generate_weight_class(unsigned long w)
{
    ClassGenerator g;
    return g.get(w);
}

// ---------------------------------------------------------------------------
// Novelty text

std::string Novelty::str() const
{
    switch (kind) {
    case NoveltyKind::new_value:
        return "new";
    case NoveltyKind::duplicate:
        return "dup:" + std::to_string(duplicate_of);
    case NoveltyKind::unresolved: {
        std::string s = "unresolved:";
        for (std::size_t i = 0; i < unresolved_vs.size(); ++i) {
            if (i) {
                s += ';';
            }
            s += std::to_string(unresolved_vs[i]);
        }
        return s;
    }
    }
    return "?";
}

Novelty Novelty::parse(const std::string &s)
{
    auto parse_index = [&](const std::string &t) {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(t, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != t.size() || v == 0) {
            throw domain_error("bad novelty tag: " + s);
        }
        return static_cast<std::size_t>(v);
    };
    if (s == "new") {
        return new_value();
    }
    if (s.rfind("dup:", 0) == 0) {
        return duplicate(parse_index(s.substr(4)));
    }
    if (s.rfind("unresolved:", 0) == 0) {
        std::vector<std::size_t> vs;
        std::stringstream in(s.substr(11));
        std::string part;
        while (std::getline(in, part, ';')) {
            vs.push_back(parse_index(part));
        }
        if (vs.empty()) {
            throw domain_error("bad novelty tag: " + s);
        }
        return unresolved(std::move(vs));
    }
    throw domain_error("bad novelty tag: " + s);
}

// ---------------------------------------------------------------------------
// Dedup

namespace
{

Decision compare_astronomical(const Expr &a, const Expr &b, const BallValue &va, const BallValue &vb,
                              const EnumerationConfig &cfg)
{
    if (va.huge() != vb.huge()) {
        return Decision::distinct;
    }
    for (mpfr_prec_t p = 64; p <= cfg.eval.precision_cap; p *= 2) {
        const Interval la = log10_enclosure(a, p);
        const Interval lb = log10_enclosure(b, p);
        if (!la.overlaps(lb)) {
            return Decision::distinct;
        }
        if (la.width_at_most(cfg.dedup_width) && lb.width_at_most(cfg.dedup_width)) {
            break;
        }
    }
    return Decision::unresolved;
}

} // namespace

Decision dedup_decide(const EnumerationEntry &a, const EnumerationEntry &b, const EnumerationConfig &cfg)
{
    if (a.expr == b.expr) {
        return Decision::equal;
    }
    const BallValue &va = a.value;
    const BallValue &vb = b.value;
    if (va.is_exact() && vb.is_exact()) {
        return va.rational() == vb.rational() ? Decision::equal : Decision::distinct;
    }
    if (va.is_astronomical() || vb.is_astronomical()) {
        if (va.is_astronomical() && vb.is_astronomical()) {
            return compare_astronomical(a.expr, b.expr, va, vb, cfg);
        }
        return Decision::distinct;
    }
    const mpfr_prec_t start = cfg.working_precision;
    if (va.is_exact() || vb.is_exact()) {
        const mpq_class r = (va.is_exact() ? va : vb).rational().to_mpq();
        Refiner other(va.is_exact() ? b.expr : a.expr, cfg.eval, start);
        while (true) {
            const Interval &iv = other.current().bounds();
            if (!iv.contains(r)) {
                return Decision::distinct;
            }
            if (iv.width_at_most(cfg.dedup_width) || !other.step()) {
                return Decision::unresolved;
            }
        }
    }
    Refiner ra(a.expr, cfg.eval, start);
    Refiner rb(b.expr, cfg.eval, start);
    while (true) {
        const Interval &ia = ra.current().bounds();
        const Interval &ib = rb.current().bounds();
        if (!ia.overlaps(ib)) {
            return Decision::distinct;
        }
        const bool a_done = ia.width_at_most(cfg.dedup_width);
        const bool b_done = ib.width_at_most(cfg.dedup_width);
        if (a_done && b_done) {
            return Decision::unresolved;
        }
        bool stepped = false;
        if (!a_done) {
            stepped |= ra.step();
        }
        if (!b_done) {
            stepped |= rb.step();
        }
        if (!stepped) {
            return Decision::unresolved;
        }
    }
}

// ---------------------------------------------------------------------------
// Enumeration

Enumeration::Enumeration(EnumerationConfig cfg) : cfg_(std::move(cfg)) {}

std::vector<std::size_t> Enumeration::overlapping(const BallValue &v) const
{
    std::vector<std::size_t> out;
    if (v.is_astronomical()) {
        for (std::size_t i : astronomical_) {
            if (entries_[i - 1].value.huge() == v.huge()) {
                out.push_back(i);
            }
        }
        return out;
    }
    const Interval iv = v.enclosure(cfg_.working_precision);
    for (std::size_t i : wide_) {
        if (entries_[i - 1].value.enclosure(cfg_.working_precision).overlaps(iv)) {
            out.push_back(i);
        }
    }
    // A narrow entry [a, b] overlapping [lo, hi] has a >= lo * (1 - 2^-32).
    Float from(iv.lo.prec());
    mpfr_mul_2si(from.get(), iv.lo.get(), -31, MPFR_RNDU);
    mpfr_sub(from.get(), iv.lo.get(), from.get(), MPFR_RNDD);
    for (auto it = narrow_.lower_bound(from); it != narrow_.end() && mpfr_lessequal_p(it->first.get(), iv.hi.get());
         ++it) {
        if (entries_[it->second - 1].value.enclosure(cfg_.working_precision).overlaps(iv)) {
            out.push_back(it->second);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Novelty Enumeration::classify(const EnumerationEntry &e) const
{
    std::vector<std::size_t> unresolved;
    for (std::size_t j : overlapping(e.value)) {
        switch (dedup_decide(entries_[j - 1], e, cfg_)) {
        case Decision::equal:
            return Novelty::duplicate(j);
        case Decision::unresolved:
            unresolved.push_back(j);
            break;
        case Decision::distinct:
            break;
        }
    }
    if (!unresolved.empty()) {
        return Novelty::unresolved(std::move(unresolved));
    }
    return Novelty::new_value();
}

void Enumeration::insert(EnumerationEntry e)
{
    const std::size_t idx = e.index;
    by_text_.emplace(serialize(e.expr), idx);
    if (e.value.is_astronomical()) {
        astronomical_.push_back(idx);
    } else {
        const Interval iv = e.value.enclosure(cfg_.working_precision);
        // Narrow means width <= hi * 2^-32.
        Float lim(64);
        mpfr_mul_2si(lim.get(), iv.hi.get(), -32, MPFR_RNDD);
        if (iv.is_finite() && iv.width_at_most(lim)) {
            narrow_.emplace(iv.lo, idx);
        } else {
            wide_.push_back(idx);
        }
    }
    entries_.push_back(std::move(e));
}

void Enumeration::extend_to(unsigned long max_weight)
{
    while (max_weight_ < max_weight) {
        const unsigned long w = max_weight_ + 1;
        const std::vector<Expr> &cls = gen_.get(w);
        std::vector<BallValue> values = evaluate_all(cls, cfg_.working_precision, cfg_.eval, cfg_.threads);
        // Index assignment and dedup run in order so the stream never depends
        // on the thread count.
        for (std::size_t i = 0; i < cls.size(); ++i) {
            EnumerationEntry e{entries_.size() + 1, cls[i], w, std::move(values[i]), Novelty::new_value()};
            e.novelty = classify(e);
            insert(std::move(e));
        }
        max_weight_ = w;
    }
}

void Enumeration::append_class(std::vector<Expr> exprs, std::vector<Novelty> novelty)
{
    const unsigned long w = max_weight_ + 1;
    if (exprs.size() != novelty.size()) {
        throw domain_error("class size and novelty count differ");
    }
    const std::vector<Expr> &expected = gen_.get(w);
    if (expected.size() != exprs.size() || !std::equal(expected.begin(), expected.end(), exprs.begin())) {
        throw domain_error("weight class " + std::to_string(w) + " does not match the generator");
    }
    std::vector<BallValue> values = evaluate_all(exprs, cfg_.working_precision, cfg_.eval, cfg_.threads);
    for (std::size_t i = 0; i < exprs.size(); ++i) {
        insert(EnumerationEntry{entries_.size() + 1, expected[i], w, std::move(values[i]), std::move(novelty[i])});
    }
    max_weight_ = w;
}

const EnumerationEntry &Enumeration::expr_at(std::size_t n) const
{
    if (n < 1 || n > entries_.size()) {
        throw range_error("index " + std::to_string(n) + " outside the materialised enumeration (1.."
                          + std::to_string(entries_.size()) + ", max weight " + std::to_string(max_weight_) + ")");
    }
    return entries_[n - 1];
}

std::optional<std::size_t> Enumeration::index_of(const Expr &expr) const
{
    auto it = by_text_.find(serialize(expr));
    if (it == by_text_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<WeightClassStats> Enumeration::stats() const
{
    std::vector<WeightClassStats> out;
    for (const auto &e : entries_) {
        if (out.empty() || out.back().weight != e.weight) {
            out.push_back(WeightClassStats{e.weight});
        }
        auto &s = out.back();
        ++s.syntactic_count;
        switch (e.novelty.kind) {
        case NoveltyKind::new_value:
            ++s.new_value_count;
            break;
        case NoveltyKind::duplicate:
            ++s.duplicate_count;
            break;
        case NoveltyKind::unresolved:
            ++s.unresolved_count;
            break;
        }
        if (e.value.is_astronomical()) {
            ++s.astronomical_count;
        }
    }
    return out;
}

std::vector<std::size_t> Enumeration::new_value_indices() const
{
    std::vector<std::size_t> out;
    for (const auto &e : entries_) {
        if (e.novelty.kind == NoveltyKind::new_value) {
            out.push_back(e.index);
        }
    }
    return out;
}

std::vector<const EnumerationEntry *> Enumeration::weight_class(unsigned long w) const
{
    std::vector<const EnumerationEntry *> out;
    for (const auto &e : entries_) {
        if (e.weight == w) {
            out.push_back(&e);
        }
    }
    return out;
}

std::vector<EnumerationEntry> enumerate(unsigned long max_weight, const EnumerationConfig &cfg)
{
    if (max_weight < 2) {
        throw domain_error("max weight must be at least 2");
    }
    Enumeration en(cfg);
    en.extend_to(max_weight);
    return en.entries();
}

std::vector<WeightClassStats> stats(unsigned long max_weight, const EnumerationConfig &cfg)
{
    if (max_weight < 2) {
        throw domain_error("max weight must be at least 2");
    }
    Enumeration en(cfg);
    en.extend_to(max_weight);
    return en.stats();
}

std::optional<EnumerationEntry> density_probe(const mpq_class &lo, const mpq_class &hi, unsigned long max_weight,
                                              Enumeration &en)
{
    if (sgn(lo) <= 0 || lo >= hi) {
        throw domain_error("density probe needs 0 < lower < upper");
    }
    en.extend_to(max_weight);
    for (const auto &e : en.entries()) {
        if (e.weight > max_weight) {
            break;
        }
        if (e.value.is_astronomical()) {
            continue;
        }
        if (e.value.is_exact()) {
            const mpq_class r = e.value.rational().to_mpq();
            if (lo < r && r < hi) {
                return e;
            }
            continue;
        }
        Refiner r(e.expr, en.config().eval, en.config().working_precision);
        while (true) {
            const Interval &iv = r.current().bounds();
            if (iv.strictly_inside(lo, hi)) {
                return e;
            }
            const bool outside = mpfr_cmp_q(iv.hi.get(), lo.get_mpq_t()) <= 0
                                 || mpfr_cmp_q(iv.lo.get(), hi.get_mpq_t()) >= 0;
            if (outside || iv.width_at_most(en.config().dedup_width) || !r.step()) {
                break;
            }
        }
    }
    return std::nullopt;
}

} // namespace ptower
