#pragma once

#include "symcensus/rational.hpp"

#include <vector>

namespace symcensus {

// Geometric data of the modular curve X_1(N): index of the image of the
// congruence subgroup in PSL(2,Z), elliptic point counts, cusp count, genus.
struct CurveGeometry {
    Int level = 1;
    Int index = 1;
    Int elliptic2 = 0;
    Int elliptic3 = 0;
    Int cusps = 1;
    Int genus = 0;
};

CurveGeometry curve_geometry(Int level);

// Dimension of the weight-k cusp space for the level-N congruence subgroup
// fixing a point of order N. Only even weights k >= 2 are supported; odd
// weights throw std::domain_error. Memoized, safe for concurrent callers.
Int dim_cusp(Int k, Int level);

// Dimension of the new subspace, obtained from dim_cusp by Moebius-style
// inversion of the old/new level decomposition.
Int dim_new(Int k, Int level);

struct DimensionRecord {
    Int k = 0;
    Int level = 0;
    Int dim_full = 0;
    Int dim_new = 0;
};

DimensionRecord dimension_record(Int k, Int level);

// One line of a density table: an exact dimension divided by the square of
// the level, compared against the limiting density for that weight.
struct DensityRow {
    Int level = 0;
    Int dimension = 0;
    double ratio = 0.0;
    double target = 0.0;
    double relative_error = 0.0;
};

// Limit of dim_cusp(k, N) / N^2 as the level grows.
double full_density_target(Int k);
// Limit of dim_new(k, p^i) / p^(2i) over prime powers.
double new_density_target(Int k, Int p);

std::vector<DensityRow> asymptotic_report(Int k, const std::vector<Int>& levels);
DensityRow newform_density(Int k, Int p, int i);

}  // namespace symcensus
