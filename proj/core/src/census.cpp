#include "symcensus/census.hpp"

#include "symcensus/cm.hpp"
#include "symcensus/dirichlet.hpp"
#include "symcensus/modforms.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace symcensus {

WeightVector weight_mu(Int k, Int n) {
    if (k < 2 || k % 2 != 0) throw std::domain_error("weight must be an even integer >= 2");
    if (n < 1) throw std::domain_error("symmetric power degree must be >= 1");

    WeightVector out;
    out.n = n;
    out.k = k;
    out.entries.reserve(static_cast<std::size_t>(n) + 1);
    for (Int j = 0; j <= n; ++j) out.entries.push_back(checked_mul(n - 2 * j, k / 2 - 1));

    Int sum = 0;
    for (std::size_t j = 0; j + 1 < out.entries.size(); ++j)
        if (out.entries[j] < out.entries[j + 1]) throw std::logic_error("weight not decreasing");
    for (std::size_t j = 0; j < out.entries.size(); ++j) {
        sum += out.entries[j];
        if (out.entries[j] != -out.entries[out.entries.size() - 1 - j])
            throw std::logic_error("weight not antisymmetric");
    }
    if (sum != 0) throw std::logic_error("weight entries do not sum to zero");
    return out;
}

Int level_propagation(Int i, Int n) {
    if (i < 1) throw std::domain_error("conductor exponent must be >= 1");
    if (n < 2) throw std::domain_error("symmetric power degree must be >= 2");
    return checked_mul(n + 2, i);
}

std::pair<Int, Int> newform_level_range(Int l, Int n) {
    return {1, level_propagation(l, n)};
}

namespace {

CensusRow census_row(Int k, Int n, Int p, Int i) {
    CensusRow row;
    row.k = k;
    row.n = n;
    row.p = p;
    row.i = i;
    row.j = level_propagation(i, n);

    Int level = 1;
    for (Int l = 1; l <= i; ++l) {
        level = checked_mul(level, p);
        row.newform_sum += dim_new(k, level);
    }
    row.cm_count_val = cm_count(k, level).total;
    row.lower_bound = std::max<Int>(0, row.newform_sum - row.cm_count_val);
    row.target = checked_mul(level, level);
    row.ratio = Rat(row.lower_bound, row.target);
    return row;
}

}  // namespace

std::vector<CensusRow> census(Int k, Int n, Int p, Int i_max, int jobs) {
    if (p == 2 || !is_prime(p)) throw std::domain_error("level base must be an odd prime");
    if (k < 2 || k % 2 != 0) throw std::domain_error("weight must be an even integer >= 2");
    if (n < 2) throw std::domain_error("symmetric power degree must be >= 2");
    if (i_max < 0) throw std::domain_error("exponent range must be >= 0");

    std::vector<CensusRow> rows(static_cast<std::size_t>(i_max));
    const int workers = static_cast<int>(std::min<Int>(std::max(jobs, 1), std::max<Int>(i_max, 1)));
    if (workers <= 1) {
        for (Int i = 1; i <= i_max; ++i) rows[static_cast<std::size_t>(i - 1)] = census_row(k, n, p, i);
        return rows;
    }

    std::atomic<Int> next{1};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto work = [&] {
        try {
            for (Int i = next.fetch_add(1); i <= i_max; i = next.fetch_add(1))
                rows[static_cast<std::size_t>(i - 1)] = census_row(k, n, p, i);
        } catch (...) {
            const std::lock_guard<std::mutex> hold(failure_lock);
            if (!failure) failure = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return rows;
}

std::string emit_csv(const std::vector<CensusRow>& rows) {
    std::ostringstream out;
    out << "k,n,p,i,j,newform_sum,cm_count,lower_bound,ratio_num,ratio_den\n";
    for (const auto& r : rows)
        out << r.k << ',' << r.n << ',' << r.p << ',' << r.i << ',' << r.j << ','
            << r.newform_sum << ',' << r.cm_count_val << ',' << r.lower_bound << ','
            << r.ratio.numerator() << ',' << r.ratio.denominator() << '\n';
    return out.str();
}

std::string emit_json(const std::vector<CensusRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows)
        arr.push_back({{"k", r.k},
                       {"n", r.n},
                       {"p", r.p},
                       {"i", r.i},
                       {"j", r.j},
                       {"newform_sum", r.newform_sum},
                       {"cm_count", r.cm_count_val},
                       {"lower_bound", r.lower_bound},
                       {"ratio_num", r.ratio.numerator()},
                       {"ratio_den", r.ratio.denominator()}});
    return arr.dump(2) + "\n";
}

std::string emit(const std::vector<CensusRow>& rows, const std::string& format) {
    if (format == "csv") return emit_csv(rows);
    if (format == "json") return emit_json(rows);
    throw std::domain_error("unknown format '" + format + "': expected csv or json");
}

std::vector<CensusRow> parse_json_rows(const std::string& text) {
    const auto arr = nlohmann::json::parse(text);
    if (!arr.is_array()) throw std::domain_error("expected a JSON array of rows");
    std::vector<CensusRow> rows;
    rows.reserve(arr.size());
    for (const auto& item : arr) {
        CensusRow r;
        r.k = item.at("k").get<Int>();
        r.n = item.at("n").get<Int>();
        r.p = item.at("p").get<Int>();
        r.i = item.at("i").get<Int>();
        r.j = item.at("j").get<Int>();
        r.newform_sum = item.at("newform_sum").get<Int>();
        r.cm_count_val = item.at("cm_count").get<Int>();
        r.lower_bound = item.at("lower_bound").get<Int>();
        r.ratio = Rat(item.at("ratio_num").get<Int>(), item.at("ratio_den").get<Int>());
        Int target = 1;
        for (Int l = 0; l < 2 * r.i; ++l) target = checked_mul(target, r.p);
        r.target = target;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace symcensus
