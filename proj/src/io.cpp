#include "ptower/io.hpp"

#include <ostream>

#include "json.hpp"

#include "ptower/error.hpp"

namespace ptower
{

using ordered_json = nlohmann::ordered_json;

OutputFormat parse_format(const std::string &s)
{
    if (s == "csv") {
        return OutputFormat::csv;
    }
    if (s == "jsonl") {
        return OutputFormat::jsonl;
    }
    if (s == "plain") {
        return OutputFormat::plain;
    }
    throw domain_error("unknown output format '" + s + "' (expected csv, jsonl or plain)");
}

EntryRow entry_row(const EnumerationEntry &e, mpfr_prec_t prec)
{
    const BallText t = to_text(e.value, prec);
    return EntryRow{std::to_string(e.index), std::to_string(e.weight), serialize(e.expr), t.mid, t.rad,
                    e.novelty.str()};
}

void EntryWriter::write(const EntryRow &r)
{
    switch (fmt_) {
    case OutputFormat::plain:
        out_ << r.index << '\t' << r.weight << '\t' << r.expression << '\t' << r.midpoint << '\t' << r.radius
             << '\t' << r.novelty << '\n';
        break;
    case OutputFormat::csv:
        // No field can contain a comma or a quote.
        if (!header_done_) {
            out_ << "index,weight,expression,midpoint,radius,novelty\n";
            header_done_ = true;
        }
        out_ << r.index << ',' << r.weight << ',' << r.expression << ',' << r.midpoint << ',' << r.radius << ','
             << r.novelty << '\n';
        break;
    case OutputFormat::jsonl: {
        ordered_json j;
        j["index"] = std::stoull(r.index);
        j["weight"] = std::stoull(r.weight);
        j["expression"] = r.expression;
        j["midpoint"] = r.midpoint;
        j["radius"] = r.radius;
        j["novelty"] = r.novelty;
        out_ << j.dump() << '\n';
        break;
    }
    }
}

void write_stats(std::ostream &out, const std::vector<WeightClassStats> &rows, OutputFormat fmt)
{
    if (fmt == OutputFormat::csv) {
        out << "weight,syntactic,new_value,duplicate,unresolved,astronomical\n";
    }
    for (const auto &s : rows) {
        switch (fmt) {
        case OutputFormat::csv:
            out << s.weight << ',' << s.syntactic_count << ',' << s.new_value_count << ',' << s.duplicate_count
                << ',' << s.unresolved_count << ',' << s.astronomical_count << '\n';
            break;
        case OutputFormat::plain:
            out << s.weight << '\t' << s.syntactic_count << '\t' << s.new_value_count << '\t' << s.duplicate_count
                << '\t' << s.unresolved_count << '\t' << s.astronomical_count << '\n';
            break;
        case OutputFormat::jsonl: {
            ordered_json j;
            j["weight"] = s.weight;
            j["syntactic"] = s.syntactic_count;
            j["new_value"] = s.new_value_count;
            j["duplicate"] = s.duplicate_count;
            j["unresolved"] = s.unresolved_count;
            j["astronomical"] = s.astronomical_count;
            out << j.dump() << '\n';
            break;
        }
        }
    }
}

void write_approx(std::ostream &out, const std::vector<ApproxRecord> &rows, OutputFormat fmt)
{
    if (fmt == OutputFormat::csv) {
        out << "target,shape,max_weight,best_expr,error_lower,error_upper,precision_bits,indistinguishable,"
               "candidates\n";
    }
    for (const auto &r : rows) {
        const std::string lo = r.error_lower_bound.to_string(6, MPFR_RNDD);
        const std::string hi = r.error_upper_bound.to_string(6, MPFR_RNDU);
        const std::string best = serialize(r.best_expr);
        switch (fmt) {
        case OutputFormat::csv:
            out << r.target.name() << ',' << to_string(r.shape) << ',' << r.max_weight << ',' << best << ',' << lo
                << ',' << hi << ',' << r.certified_precision << ',' << (r.indistinguishable ? "true" : "false")
                << ',' << r.candidates_scanned << '\n';
            break;
        case OutputFormat::plain:
            out << r.target.name() << '\t' << to_string(r.shape) << '\t' << r.max_weight << '\t' << best << '\t'
                << lo << '\t' << hi << '\t' << r.certified_precision << '\t'
                << (r.indistinguishable ? "indistinguishable" : "separated") << '\t' << r.candidates_scanned
                << '\n';
            break;
        case OutputFormat::jsonl: {
            ordered_json j;
            j["target"] = r.target.name();
            j["shape"] = to_string(r.shape);
            j["max_weight"] = r.max_weight;
            j["best_expr"] = best;
            j["error_lower"] = lo;
            j["error_upper"] = hi;
            j["precision_bits"] = r.certified_precision;
            j["indistinguishable"] = r.indistinguishable;
            j["candidates"] = r.candidates_scanned;
            out << j.dump() << '\n';
            break;
        }
        }
    }
}

void write_diagonal(std::ostream &out, const DiagonalReport &report, const Verification &check, OutputFormat fmt)
{
    if (fmt == OutputFormat::jsonl) {
        ordered_json head;
        head["diagonal"] = report.diagonal_digits.str();
        head["n"] = report.n;
        head["skipped"] = report.skipped.size();
        head["verify"] = check.pass ? "pass" : "fail";
        head["message"] = check.message;
        out << head.dump() << '\n';
        for (const auto &w : report.witnesses) {
            ordered_json j;
            j["k"] = w.position;
            j["index"] = w.entry_index;
            j["value_digit"] = w.value_digit ? ordered_json(*w.value_digit) : ordered_json(nullptr);
            j["diagonal_digit"] = w.diagonal_digit;
            out << j.dump() << '\n';
        }
        for (const auto &s : report.skipped) {
            ordered_json j;
            j["skipped"] = s.position;
            j["reason"] = s.reason;
            out << j.dump() << '\n';
        }
        return;
    }
    out << "diagonal " << report.diagonal_digits.str() << '\n';
    out << "k,index,value_digit,diagonal_digit\n";
    for (const auto &w : report.witnesses) {
        out << w.position << ',' << w.entry_index << ',' << (w.value_digit ? std::to_string(*w.value_digit) : "")
            << ',' << w.diagonal_digit << '\n';
    }
    for (const auto &s : report.skipped) {
        out << "skipped " << s.position << ' ' << s.reason << '\n';
    }
    out << "verify " << (check.pass ? "pass" : "fail") << ' ' << check.message << '\n';
}

} // namespace ptower
