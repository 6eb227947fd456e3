#pragma once

#include "symcensus/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace symcensus {

/** Dominant weight of the degree-n lift at even weight k.
 *
 * Entries are (n - 2j)(k/2 - 1) for j = 0..n: weakly decreasing, summing to
 * zero, and antisymmetric under reversal.
 */
struct WeightVector {
    Int n = 0;
    Int k = 0;
    std::vector<Int> entries;

    bool operator==(const WeightVector&) const = default;
};

WeightVector weight_mu(Int k, Int n);

// Level exponent j = (n+2) i reached by degree-n lifts of conductor exponent i.
Int level_propagation(Int i, Int n);
// A newform of conductor exponent l lands in level exponents [1, (n+2) l].
std::pair<Int, Int> newform_level_range(Int l, Int n);

/** One row of the lower-bound table at level p^i.
 *
 * newform_sum counts eigenforms of conductor p^l, 1 <= l <= i; subtracting
 * the induced (CM) forms and clamping at zero leaves a certified lower bound
 * for the number of degree-n lifts at level exponent j = (n+2) i, compared
 * against the target p^{2i}.
 */
struct CensusRow {
    Int k = 0;
    Int n = 0;
    Int p = 0;
    Int i = 0;
    Int j = 0;
    Int newform_sum = 0;
    Int cm_count_val = 0;
    Int lower_bound = 0;
    Int target = 0;
    Rat ratio{0};

    bool operator==(const CensusRow&) const = default;
};

// Rows for i = 1..i_max in increasing i; jobs > 1 computes rows concurrently
// with output independent of the schedule.
std::vector<CensusRow> census(Int k, Int n, Int p, Int i_max, int jobs = 1);

std::string emit_csv(const std::vector<CensusRow>& rows);
std::string emit_json(const std::vector<CensusRow>& rows);
// format is "csv" or "json"; anything else raises std::domain_error.
std::string emit(const std::vector<CensusRow>& rows, const std::string& format);

// Inverse of emit_json, for round-trip checks and downstream tooling.
std::vector<CensusRow> parse_json_rows(const std::string& text);

}  // namespace symcensus
