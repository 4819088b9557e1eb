#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ptower/enumerate.hpp"
#include "ptower/eval.hpp"

namespace ptower
{

struct DiagonalWitness {
    std::size_t position = 0;    // k, 1-based
    std::size_t entry_index = 0; // index of the k-th new value in the enumeration
    // k-th fractional digit of that value; absent when skipped.
    std::optional<int> value_digit;
    int diagonal_digit = 5;
};

struct SkippedPosition {
    std::size_t position = 0;
    std::string reason;
};

/// A number that differs from each of the first n new values at its
/// diagonal digit, with the witnesses that show it.
struct DiagonalReport {
    std::size_t n = 0;
    DigitString diagonal_digits; // integer part 0
    std::vector<DiagonalWitness> witnesses;
    std::vector<SkippedPosition> skipped;
};

// 5 unless the witness digit is 5, then 4.
inline int anti_digit(int d)
{
    return d == 5 ? 4 : 5;
}

// Runs over the NewValue stream of `en`; throws range_error when it has
// fewer than n values.
DiagonalReport diagonal(std::size_t n, const Enumeration &en, ThreadCount threads = 0);

struct Verification {
    bool pass = false;
    // Position of the first violated witness, if any.
    std::optional<std::size_t> first_violation;
    std::string message;
};

// Independent re-extraction of every non-skipped witness digit, starting
// from twice the precision a direct extraction would use.
Verification verify(const DiagonalReport &report, const Enumeration &en);

} // namespace ptower
