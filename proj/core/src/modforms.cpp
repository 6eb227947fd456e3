#include "symcensus/modforms.hpp"

#include "symcensus/dirichlet.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace symcensus {

namespace {

// Levels 1..4 have elliptic points or a coincidence of cusps; the generic
// closed forms below only apply from level 5 on.
constexpr CurveGeometry kSmallGeometry[] = {
    {1, 1, 1, 1, 1, 0},
    {2, 3, 1, 0, 2, 0},
    {3, 4, 0, 1, 2, 0},
    {4, 6, 0, 0, 3, 0},
};

void require_census_weight(Int k) {
    if (k < 2 || k % 2 != 0)
        throw std::domain_error("weight must be an even integer >= 2");
}

// Dirichlet-inverse of the divisor-count function: multiplicative with
// beta(p) = -2, beta(p^2) = 1, beta(p^e) = 0 for e >= 3.
Int newform_inversion_weight(Int m) {
    Int out = 1;
    for (const auto& [p, e] : factorize(m)) {
        if (e == 1)
            out *= -2;
        else if (e != 2)
            return 0;
    }
    return out;
}

}  // namespace

CurveGeometry curve_geometry(Int level) {
    if (level < 1) throw std::domain_error("level must be positive");
    if (level <= 4) return kSmallGeometry[level - 1];

    CurveGeometry geo;
    geo.level = level;
    // -1 is not in the group once level > 4, so the PSL index is half the
    // SL index N^2 prod (1 - 1/p^2) = phi(N) psi(N).
    geo.index = euler_phi(level) * psi_index(level) / 2;
    geo.elliptic2 = 0;
    geo.elliptic3 = 0;
    Int cusp_twice = 0;
    for (Int d : divisors(level)) cusp_twice += euler_phi(d) * euler_phi(level / d);
    geo.cusps = cusp_twice / 2;

    Int genus_num = 12 + geo.index - 6 * geo.cusps;
    if (genus_num % 12 != 0) throw std::logic_error("non-integral genus");
    geo.genus = genus_num / 12;
    return geo;
}

Int dim_cusp(Int k, Int level) {
    require_census_weight(k);
    if (level < 1) throw std::domain_error("level must be positive");

    static std::map<std::pair<Int, Int>, Int> memo;
    static std::mutex memo_mutex;
    const auto key = std::make_pair(k, level);
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }

    const CurveGeometry geo = curve_geometry(level);
    Int dim;
    if (k == 2) {
        dim = geo.genus;
    } else {
        dim = (k - 1) * (geo.genus - 1) + (k / 4) * geo.elliptic2 +
              (k / 3) * geo.elliptic3 + (k / 2 - 1) * geo.cusps;
    }
    if (dim < 0) throw std::logic_error("negative cusp dimension");

    std::lock_guard<std::mutex> lock(memo_mutex);
    memo.emplace(key, dim);
    return dim;
}

Int dim_new(Int k, Int level) {
    require_census_weight(k);
    if (level < 1) throw std::domain_error("level must be positive");
    Int out = 0;
    for (Int d : divisors(level)) out += newform_inversion_weight(level / d) * dim_cusp(k, d);
    if (out < 0) throw std::logic_error("negative newform dimension");
    return out;
}

DimensionRecord dimension_record(Int k, Int level) {
    return DimensionRecord{k, level, dim_cusp(k, level), dim_new(k, level)};
}

double full_density_target(Int k) {
    require_census_weight(k);
    return static_cast<double>(k - 1) / (4.0 * M_PI * M_PI);
}

double new_density_target(Int k, Int p) {
    const double shrink = 1.0 - 1.0 / (static_cast<double>(p) * static_cast<double>(p));
    return full_density_target(k) * shrink * shrink;
}

namespace {

DensityRow make_row(Int level, Int dim, double target) {
    DensityRow row;
    row.level = level;
    row.dimension = dim;
    row.ratio = static_cast<double>(dim) / (static_cast<double>(level) * static_cast<double>(level));
    row.target = target;
    row.relative_error = target == 0.0 ? 0.0 : (row.ratio - target) / target;
    return row;
}

}  // namespace

std::vector<DensityRow> asymptotic_report(Int k, const std::vector<Int>& levels) {
    std::vector<DensityRow> rows;
    rows.reserve(levels.size());
    const double target = full_density_target(k);
    for (Int level : levels) rows.push_back(make_row(level, dim_cusp(k, level), target));
    return rows;
}

DensityRow newform_density(Int k, Int p, int i) {
    if (!is_prime(p)) throw std::domain_error("prime power level expected");
    if (i < 1) throw std::domain_error("exponent must be positive");
    Int level = 1;
    for (int s = 0; s < i; ++s) level = checked_mul(level, p);
    return make_row(level, dim_new(k, level), new_density_target(k, p));
}

}  // namespace symcensus
