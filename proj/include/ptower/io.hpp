#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ptower/approx.hpp"
#include "ptower/diagonal.hpp"
#include "ptower/enumerate.hpp"

namespace ptower
{

enum class OutputFormat { csv, jsonl, plain };

OutputFormat parse_format(const std::string &s);

/// One enumeration record with every field rendered as text. All output
/// formats carry exactly these fields.
struct EntryRow {
    std::string index;
    std::string weight;
    std::string expression;
    std::string midpoint;
    std::string radius;
    std::string novelty;

    friend bool operator==(const EntryRow &, const EntryRow &) = default;
};

EntryRow entry_row(const EnumerationEntry &e, mpfr_prec_t prec);

// Streaming writer: the CSV header is emitted before the first row.
class EntryWriter
{
public:
    EntryWriter(std::ostream &out, OutputFormat fmt) : out_(out), fmt_(fmt) {}
    void write(const EntryRow &row);

private:
    std::ostream &out_;
    OutputFormat fmt_;
    bool header_done_ = false;
};

void write_stats(std::ostream &out, const std::vector<WeightClassStats> &rows, OutputFormat fmt);
void write_approx(std::ostream &out, const std::vector<ApproxRecord> &rows, OutputFormat fmt);
// Digit string, witness table as CSV, skipped positions and verification.
void write_diagonal(std::ostream &out, const DiagonalReport &report, const Verification &check, OutputFormat fmt);

} // namespace ptower
