// Acceptance gate: every shipped guarantee of the toolkit, one line each.
// Prints PASS/FAIL per check and exits nonzero when any check fails.
// Tolerances and budgets are pinned here; nothing is calibrated at runtime.

#include <symcensus/abelian.hpp>
#include <symcensus/census.hpp>
#include <symcensus/cm.hpp>
#include <symcensus/dirichlet.hpp>
#include <symcensus/local_field.hpp>
#include <symcensus/modforms.hpp>
#include <symcensus/rational.hpp>
#include <symcensus/weil_deligne.hpp>

#include "dimension_oracle.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace symcensus;
using Clock = std::chrono::steady_clock;

// Pinned thresholds.  Each one is final; a miss is reported, never absorbed.
constexpr double kPrimeDensityTol = 0.05;     // relative, full cusp density at prime level
constexpr double kNewformDensityTol = 0.10;   // relative, newform density at p = 97
constexpr double kSlopeCap = 1.7;             // log-log CM growth over primes
constexpr double kLowerBoundFloor = 0.5;      // census row floor, units of density * p^2
constexpr double kCmShareCap = 0.05;          // CM term must stay below this share
constexpr double kScreenLo = 0.3;             // census ratio screen, lower lip
constexpr double kScreenHi = 1.2;             // census ratio screen, upper lip
constexpr double kSupercuspidalBudget = 120.0;  // seconds
constexpr double kCensusBudget = 300.0;         // seconds

int g_checks = 0;
int g_failures = 0;
std::vector<std::string> g_failed_names;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string pct(double x) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << 100.0 * x << '%';
    return s.str();
}

std::string num(double x, int prec = 4) {
    std::ostringstream s;
    s << std::setprecision(prec) << x;
    return s.str();
}

void report(const std::string& name, bool pass, const std::string& detail,
            const std::vector<std::string>& notes = {}) {
    ++g_checks;
    if (!pass) {
        ++g_failures;
        g_failed_names.push_back(name);
    }
    std::cout << name << ": " << (pass ? "PASS" : "FAIL") << "  " << detail << '\n';
    for (const std::string& note : notes) std::cout << "    note: " << note << '\n';
    std::cout.flush();
}

// Least-squares slope; fewer than two points means no measurable growth.
double fitted_slope(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(pts.size());
    const double det = m * sxx - sx * sx;
    return det == 0.0 ? 0.0 : (m * sxy - sx * sy) / det;
}

std::string field_name(const LocalField& f) {
    std::ostringstream s;
    switch (f.kind) {
        case FieldKind::Base: s << "Q_" << f.p; break;
        case FieldKind::Unramified: s << "unram(" << f.p << ")"; break;
        case FieldKind::Ramified: s << "ram(" << f.p << (f.twist ? ",tw)" : ")"); break;
    }
    return s.str();
}

// Certified window for every irreducible induction at small residue characteristic.
void criterion_supercuspidal() {
    const auto t0 = Clock::now();
    long checked = 0, skipped = 0, violations = 0;
    std::string first_bad;
    for (Int p : {3, 5, 7, 11}) {
        for (const LocalField& ext : quadratic_extensions(p)) {
            const UnitQuotient& q = unit_quotient(ext, 2);
            const auto chars = enumerate_characters(q.group());
            for (const GroupCharacter& chi : chars) {
                for (const QmodZ& uval : {QmodZ::zero(), QmodZ(1, 3)}) {
                    const LocalCharacter eta(ext, 2, chi.images(), uval);
                    if (eta.galois_invariant()) {
                        ++skipped;
                        continue;
                    }
                    const Gl2Parameter pi = Gl2Parameter::induced(eta);
                    const Int base = pi.conductor();
                    for (int n = 1; n <= 8; ++n) {
                        const SymPowerData data = sym_power(pi, n);
                        ++checked;
                        const bool ok = data.within_bounds() && data.conductor >= 1 &&
                                        data.conductor <= (n + 2) * base &&
                                        data.certified_bound == (n + 2) * base;
                        if (!ok && ++violations == 1) {
                            std::ostringstream s;
                            s << field_name(ext) << " n=" << n << " c=" << data.conductor;
                            first_bad = s.str();
                        }
                    }
                }
            }
        }
    }
    const double dt = seconds_since(t0);
    std::ostringstream d;
    d << "window 1 <= c(sym^n) <= (n+2)c(pi): " << checked << " lifts, " << violations
      << " violations, " << skipped << " reducible eta skipped (" << num(dt, 3) << "s, budget "
      << num(kSupercuspidalBudget, 3) << "s)";
    std::vector<std::string> notes;
    if (!first_bad.empty()) notes.push_back("first violation at " + first_bad);
    report("criterion 1 supercuspidal window", violations == 0 && dt < kSupercuspidalBudget,
           d.str(), notes);
}

// Split lifts stay under n * c(phi); twisted Steinberg conductors are exact.
void criterion_ps_special() {
    long ps_checked = 0, ps_viol = 0;
    long st_checked = 0, st_viol = 0, st_degenerate = 0;
    for (Int p : {3, 5, 7}) {
        const LocalField base = base_field(p);
        const UnitQuotient& q = unit_quotient(base, 2);
        std::vector<LocalCharacter> mus;
        for (const GroupCharacter& chi : enumerate_characters(q.group()))
            mus.emplace_back(base, 2, chi.images(), QmodZ::zero());
        mus.push_back(LocalCharacter::unramified_twist(base, QmodZ(1, 3)));
        for (const LocalCharacter& m1 : mus) {
            for (const LocalCharacter& m2 : mus) {
                const Gl2Parameter phi = Gl2Parameter::principal_series(m1, m2);
                const Int cap = phi.conductor();
                for (int n = 1; n <= 8; ++n) {
                    ++ps_checked;
                    if (sym_power(phi, n).conductor > n * cap) ++ps_viol;
                }
            }
        }
        for (const LocalCharacter& mu : mus) {
            const Gl2Parameter st = Gl2Parameter::steinberg(mu);
            for (int n = 1; n <= 8; ++n) {
                const Int cn = mu.pow(n).conductor();
                // A ramified twist whose n-th power is unramified sends the block
                // back to the untwisted size n; otherwise the exponent scales.
                const Int expect = cn == 0 ? n : (n + 1) * cn;
                if (mu.conductor() > 0 && cn == 0) ++st_degenerate;
                ++st_checked;
                if (sym_power(st, n).conductor != expect) ++st_viol;
            }
        }
    }
    std::ostringstream d;
    d << "split: " << ps_checked << " lifts, " << ps_viol << " over n*c(phi); special: "
      << st_checked << " lifts, " << st_viol << " mismatches";
    report("criterion 2 split and special laws", ps_viol == 0 && st_viol == 0, d.str(),
           {"ramified twists with unramified n-th power fall back to the untwisted conductor n (" +
            std::to_string(st_degenerate) + " cases exercised)"});
}

// f * c(chi o N) = c(chi) + c(chi omega) - c(omega), integer equality everywhere.
void criterion_norm_conductor() {
    const auto t0 = Clock::now();
    long checked = 0, fails = 0;
    std::string first_bad;
    for (Int p : {3, 5, 7, 11, 13}) {
        const LocalField base = base_field(p);
        const UnitQuotient& q = unit_quotient(base, 3);
        const auto chars = enumerate_characters(q.group());
        for (const LocalField& ext : quadratic_extensions(p)) {
            for (const GroupCharacter& chi : chars) {
                const LocalCharacter c(base, 3, chi.images(), QmodZ::zero());
                const NormConductorCheck check = check_norm_conductor(c, ext);
                ++checked;
                if (!check.holds() && ++fails == 1) {
                    std::ostringstream s;
                    s << field_name(ext) << " c(chi)=" << check.c_chi << " lhs=" << check.lhs
                      << " rhs=" << check.rhs;
                    first_bad = s.str();
                }
            }
        }
    }
    std::ostringstream d;
    d << checked << " characters across 15 extensions, " << fails << " mismatches ("
      << num(seconds_since(t0), 3) << "s)";
    std::vector<std::string> notes;
    if (!first_bad.empty()) notes.push_back("first mismatch at " + first_bad);
    report("criterion 3 norm conductor identity", fails == 0, d.str(), notes);
}

// Brute-force Galois comparison, built from raw quotient arithmetic only.
bool direct_sigma_equal(const LocalCharacter& a, const LocalCharacter& b, const UnitQuotient& q) {
    for (Int x = 0; x < q.ring().mod_a; ++x) {
        for (Int y = 0; y < q.ring().mod_b; ++y) {
            const ElemKey e = q.encode(x, y);
            if (!q.is_unit(e)) continue;
            if (!(a.eval_unit(q.galois(e)) == b.eval_unit(e))) return false;
        }
    }
    QmodZ left = a.eval(1, q.encode(1));
    // The involution fixes p and negates the ramified square root.
    if (a.field().kind == FieldKind::Ramified) left = left + a.eval_unit(q.encode(-1));
    return left == b.eval(1, q.encode(1));
}

bool direct_equal(const LocalCharacter& a, const LocalCharacter& b, const UnitQuotient& q) {
    for (Int x = 0; x < q.ring().mod_a; ++x) {
        for (Int y = 0; y < q.ring().mod_b; ++y) {
            const ElemKey e = q.encode(x, y);
            if (!q.is_unit(e)) continue;
            if (!(a.eval_unit(e) == b.eval_unit(e))) return false;
        }
    }
    return a.eval(1, q.encode(1)) == b.eval(1, q.encode(1));
}

// Irreducibility and isomorphism criteria against pointwise evaluation.
void criterion_induction_criteria() {
    const auto t0 = Clock::now();
    long irr_checked = 0, irr_mismatch = 0;
    long iso_checked = 0, iso_mismatch = 0;
    for (Int p : {3, 5}) {
        for (const LocalField& ext : quadratic_extensions(p)) {
            const UnitQuotient& q = unit_quotient(ext, 2);
            const auto chars = enumerate_characters(q.group());
            // Take everything when the dual is small, else a deterministic stride.
            const std::size_t stride =
                chars.size() <= 100 ? 1 : std::max<std::size_t>(1, chars.size() / 24);
            std::vector<LocalCharacter> xis;
            for (std::size_t i = 0; i < chars.size(); i += stride)
                for (const QmodZ& uv : {QmodZ::zero(), QmodZ(1, 4)})
                    xis.emplace_back(ext, 2, chars[i].images(), uv);
            for (const LocalCharacter& xi : xis) {
                ++irr_checked;
                if (induced_irreducible(xi) != !direct_sigma_equal(xi, xi, q)) ++irr_mismatch;
            }
            for (const LocalCharacter& xi : xis) {
                for (const LocalCharacter& zeta : xis) {
                    ++iso_checked;
                    const bool direct =
                        direct_equal(xi, zeta, q) || direct_sigma_equal(xi, zeta, q);
                    if (induced_isomorphic(xi, zeta) != direct) ++iso_mismatch;
                }
            }
        }
    }
    std::ostringstream d;
    d << "irreducibility: " << irr_checked << " characters, " << irr_mismatch
      << " disagreements; isomorphism: " << iso_checked << " pairs, " << iso_mismatch
      << " disagreements (" << num(seconds_since(t0), 3) << "s)";
    report("criterion 4 induction criteria", irr_mismatch == 0 && iso_mismatch == 0, d.str());
}

// Exact agreement with the independent trace-formula count.
void criterion_oracle() {
    long cells = 0, mismatches = 0;
    std::string first_bad;
    for (Int k = 2; k <= 12; k += 2) {
        for (Int level = 1; level <= 60; ++level) {
            ++cells;
            const Int got = dim_cusp(k, level);
            const Int want = oracle::dim_cusp(k, level);
            if (got != want && ++mismatches == 1) {
                std::ostringstream s;
                s << "k=" << k << " N=" << level << " got " << got << " oracle " << want;
                first_bad = s.str();
            }
        }
    }
    std::ostringstream d;
    d << cells << " cells (N <= 60, even k <= 12), " << mismatches << " mismatches";
    std::vector<std::string> notes;
    if (!first_bad.empty()) notes.push_back("first mismatch at " + first_bad);
    report("criterion 5a oracle agreement", mismatches == 0, d.str(), notes);
}

void criterion_prime_density() {
    double worst = 0.0;
    std::string worst_at;
    double worst_corrected = 0.0;
    int out_of_tol = 0;
    for (Int k : {4, 12}) {
        for (Int N : {1009, 2003}) {
            const double square = static_cast<double>(N) * static_cast<double>(N);
            const double ratio = static_cast<double>(dim_cusp(k, N)) / square;
            const double target = full_density_target(k);
            const double rel = std::abs(ratio - target) / target;
            if (rel > kPrimeDensityTol) ++out_of_tol;
            if (rel > worst) {
                worst = rel;
                std::ostringstream s;
                s << "k=" << k << " N=" << N << " (measured " << num(ratio) << ", target "
                  << num(target) << ")";
                worst_at = s.str();
            }
            // Reference model: the exact prime-level density (k-1)/24 * (1 - 1/N^2).
            const double reference =
                static_cast<double>(k - 1) / 24.0 * (1.0 - 1.0 / square);
            worst_corrected = std::max(worst_corrected, std::abs(ratio - reference) / reference);
        }
    }
    std::ostringstream d;
    d << "|dim/N^2 - (k-1)/4pi^2| <= " << pct(kPrimeDensityTol) << " of target: " << out_of_tol
      << " of 4 cells out of tolerance, worst " << pct(worst) << " at " << worst_at;
    report("criterion 5b prime-level density", out_of_tol == 0, d.str(),
           {"measured densities match (k-1)/24 * (1 - 1/N^2) within " + pct(worst_corrected) +
                "; the pinned constant (k-1)/4pi^2 sits below that by exactly zeta(2) = pi^2/6 "
                "= 1.6449",
            "the tolerance cannot absorb a 64% constant-factor gap; left red on purpose, the "
            "reference model above reproduces every measured cell"});
}

void criterion_newform_density() {
    const Int p = 97;
    double worst = 0.0;
    std::string worst_at;
    double worst_corrected = 0.0;
    int out_of_tol = 0;
    const double shrink = 1.0 - 1.0 / (static_cast<double>(p) * static_cast<double>(p));
    for (Int k : {4, 12}) {
        const double square = static_cast<double>(p) * static_cast<double>(p);
        const double ratio = static_cast<double>(dim_new(k, p)) / square;
        const double target = new_density_target(k, p);
        const double rel = std::abs(ratio - target) / target;
        if (rel > kNewformDensityTol) ++out_of_tol;
        if (rel > worst) {
            worst = rel;
            std::ostringstream s;
            s << "k=" << k << " (measured " << num(ratio) << ", target " << num(target) << ")";
            worst_at = s.str();
        }
        const double reference = static_cast<double>(k - 1) / 24.0 * shrink * shrink;
        worst_corrected = std::max(worst_corrected, std::abs(ratio - reference) / reference);
    }
    std::ostringstream d;
    d << "dim_new(k,97)/97^2 within " << pct(kNewformDensityTol)
      << " of (k-1)/4pi^2 * (1-1/p^2)^2: " << out_of_tol << " of 2 cells out, worst "
      << pct(worst) << " at " << worst_at;
    report("criterion 5c newform density", out_of_tol == 0, d.str(),
           {"same constant-factor gap as the full-space check; against (k-1)/24 * (1-1/p^2)^2 "
            "the worst deviation is " +
            pct(worst_corrected)});
}

// Class numbers two ways, CM counts capped by dimensions, growth slope bounded.
void criterion_cm() {
    bool class_ok = true;
    std::string class_detail;
    for (auto [d, expect] : {std::pair<Int, Int>{-4, 1}, {-8, 1}, {-23, 3}}) {
        const ImagQuadField f = class_group(d);
        const bool ok = f.h == expect && f.class_structure->order() == expect &&
                        static_cast<Int>(f.form_reps.size()) == expect;
        class_ok = class_ok && ok;
        std::ostringstream s;
        s << class_detail << (class_detail.empty() ? "" : ", ") << "h(" << d << ")=" << f.h << "/"
          << f.class_structure->order();
        class_detail = s.str();
    }
    long cap_cells = 0, cap_viol = 0;
    for (Int k : {2, 4, 6, 12}) {
        for (Int p : {3, 5, 7, 11, 13}) {
            Int level = 1;
            for (int i = 1; i <= 3; ++i) {
                level *= p;
                ++cap_cells;
                if (cm_count(k, level).total > dim_cusp(k, level)) ++cap_viol;
            }
        }
    }
    for (Int level : {27, 32, 9, 16}) {
        ++cap_cells;
        if (cm_count(2, level).total > dim_cusp(2, level)) ++cap_viol;
    }
    std::vector<std::pair<double, double>> pts;
    long positive = 0;
    for (Int p = 3; p <= 200; ++p) {
        if (!is_prime(p)) continue;
        const Int c = cm_count(12, p).total;
        if (c > 0) {
            ++positive;
            pts.emplace_back(std::log(static_cast<double>(p)),
                             std::log(static_cast<double>(c)));
        }
    }
    const double slope = fitted_slope(pts);
    std::ostringstream d;
    d << "class numbers " << class_detail << "; cm <= dim on " << cap_cells << " levels ("
      << cap_viol << " violations); growth slope " << num(slope, 3) << " <= " << kSlopeCap;
    report("criterion 6 class numbers and CM caps",
           class_ok && cap_viol == 0 && slope <= kSlopeCap, d.str(),
           {"every weight-12 count at prime level is zero (odd infinity type kills the unit "
            "parity), so the slope degenerates to 0; positive points: " +
            std::to_string(positive)});
}

// The census floor, the negligible CM share, and the level exponent law.
void criterion_census_floor() {
    const auto t0 = Clock::now();
    bool ok = true;
    double min_margin = 1e9;
    std::string worst_at;
    for (Int n : {2, 3, 8}) {
        for (Int p : {13, 31, 61, 97}) {
            const auto rows = census(12, n, p, 1);
            const CensusRow& r = rows.at(0);
            const double square = static_cast<double>(p) * static_cast<double>(p);
            const double floor_value = kLowerBoundFloor * full_density_target(12) * square;
            const double margin = static_cast<double>(r.lower_bound) / floor_value;
            if (margin < min_margin) {
                min_margin = margin;
                std::ostringstream s;
                s << "n=" << n << " p=" << p;
                worst_at = s.str();
            }
            ok = ok && static_cast<double>(r.lower_bound) >= floor_value;
            ok = ok && static_cast<double>(r.cm_count_val) <
                           kCmShareCap * static_cast<double>(r.newform_sum);
            ok = ok && r.j == (n + 2) * r.i && r.i == 1 && r.target == p * p;
        }
    }
    const double dt = seconds_since(t0);
    std::ostringstream d;
    d << "12 rows (k=12, n in {2,3,8}, p in {13,31,61,97}): lower_bound >= "
      << num(kLowerBoundFloor, 2) << " * density * p^2, tightest margin " << num(min_margin, 3)
      << "x at " << worst_at << ", CM share < " << pct(kCmShareCap) << ", j = (n+2)i ("
      << num(dt, 3) << "s, budget " << num(kCensusBudget, 3) << "s)";
    report("criterion 7 census lower bound", ok && dt < kCensusBudget, d.str(),
           {"CM counts are identically zero at these prime levels, so the share cap holds "
            "with room"});
}

// Module screen: the per-prime ratio must hug the limiting density window.
void census_density_screen() {
    double lo = 1e9, hi = 0.0;
    const double density = full_density_target(12);
    for (Int p = 13; p <= 97; ++p) {
        if (!is_prime(p)) continue;
        const auto rows = census(12, 2, p, 1);
        const double ratio = static_cast<double>(rows.at(0).lower_bound) /
                             (static_cast<double>(p) * static_cast<double>(p));
        lo = std::min(lo, ratio / density);
        hi = std::max(hi, ratio / density);
    }
    const bool pass = lo >= kScreenLo && hi <= kScreenHi;
    std::ostringstream d;
    d << "lower_bound/p^2 over primes 13..97 spans [" << num(lo, 4) << ", " << num(hi, 4)
      << "] * (k-1)/4pi^2, window [" << num(kScreenLo, 2) << ", " << num(kScreenHi, 2) << "]";
    report("census density screen", pass, d.str(),
           {"the measured band sits at zeta(2) * [0.89, 1.0], the exact (k-1)/24 density up "
            "to small-prime finite-size dips; it cannot enter a window capped at 1.2"});
}

// Weight ladder literals plus the three structural invariants.
void criterion_weights() {
    const auto expect = [](Int k, Int n, std::vector<Int> want) {
        return weight_mu(k, n).entries == want;
    };
    bool literals = expect(4, 2, {2, 0, -2}) && expect(4, 3, {3, 1, -1, -3}) &&
                    expect(6, 5, {10, 6, 2, -2, -6, -10});
    long cells = 0, bad = 0;
    for (Int k = 2; k <= 40; k += 2) {
        for (Int n = 1; n <= 20; ++n) {
            ++cells;
            const WeightVector w = weight_mu(k, n);
            bool ok = static_cast<Int>(w.entries.size()) == n + 1;
            Int sum = 0;
            for (std::size_t i = 0; i < w.entries.size(); ++i) {
                sum += w.entries[i];
                ok = ok && w.entries[i] == -w.entries[w.entries.size() - 1 - i];
                if (i > 0) ok = ok && w.entries[i - 1] >= w.entries[i];
            }
            ok = ok && sum == 0;
            if (!ok) ++bad;
        }
    }
    std::ostringstream d;
    d << "literals (4,2),(4,3),(6,5) " << (literals ? "exact" : "WRONG") << "; invariants on "
      << cells << " ladders (k <= 40, n <= 20), " << bad << " violations";
    report("criterion 8 weight ladder", literals && bad == 0, d.str());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Library rows across thread counts, then the shipped binary across env settings.
void criterion_determinism(const char* cli) {
    const auto serial = census(12, 3, 5, 4, 1);
    const auto parallel = census(12, 3, 5, 4, 8);
    bool ok = serial == parallel && emit_csv(serial) == emit_csv(parallel) &&
              emit_json(serial) == emit_json(parallel);
    std::string cli_note = "CLI binary not supplied; library paths only";
    if (cli != nullptr) {
        bool cli_ok = true;
        for (const std::string fmt : {"csv", "json"}) {
            const std::string f1 = "acceptance_j1." + fmt;
            const std::string f8 = "acceptance_j8." + fmt;
            const std::string args = std::string("' census --weight 12 --sym 3 --prime 5") +
                                     " --max-i 4 --format " + fmt + " > ";
            const int rc1 =
                std::system(("SYMCENSUS_JOBS=1 '" + std::string(cli) + args + f1).c_str());
            const int rc8 =
                std::system(("SYMCENSUS_JOBS=8 '" + std::string(cli) + args + f8).c_str());
            const std::string b1 = slurp(f1);
            const std::string b8 = slurp(f8);
            cli_ok = cli_ok && rc1 == 0 && rc8 == 0 && !b1.empty() && b1 == b8;
            if (fmt == "csv") cli_ok = cli_ok && b1 == emit_csv(serial);
            std::remove(f1.c_str());
            std::remove(f8.c_str());
        }
        ok = ok && cli_ok;
        cli_note = cli_ok ? "CLI bytes identical for jobs {1,8} in csv and json, csv matches "
                            "the library emitter"
                          : "CLI outputs diverged across job counts";
    }
    report("criterion 9 parallel determinism", ok,
           "rows and emitted bytes for (k=12, n=3, p=5, i<=4) identical across jobs {1,8}",
           {cli_note});
}

}  // namespace

int main(int argc, char** argv) {
    const char* cli = argc > 1 ? argv[1] : nullptr;
    const auto t0 = Clock::now();
    const auto guarded = [](const std::string& name, auto&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            report(name, false, std::string("unhandled exception: ") + e.what());
        }
    };
    guarded("criterion 1 supercuspidal window", [] { criterion_supercuspidal(); });
    guarded("criterion 2 split and special laws", [] { criterion_ps_special(); });
    guarded("criterion 3 norm conductor identity", [] { criterion_norm_conductor(); });
    guarded("criterion 4 induction criteria", [] { criterion_induction_criteria(); });
    guarded("criterion 5a oracle agreement", [] { criterion_oracle(); });
    guarded("criterion 5b prime-level density", [] { criterion_prime_density(); });
    guarded("criterion 5c newform density", [] { criterion_newform_density(); });
    guarded("criterion 6 class numbers and CM caps", [] { criterion_cm(); });
    guarded("criterion 7 census lower bound", [] { criterion_census_floor(); });
    guarded("census density screen", [] { census_density_screen(); });
    guarded("criterion 8 weight ladder", [] { criterion_weights(); });
    guarded("criterion 9 parallel determinism", [cli] { criterion_determinism(cli); });

    std::cout << "acceptance: " << (g_checks - g_failures) << " of " << g_checks
              << " checks passed";
    if (g_failures > 0) {
        std::cout << ", failed:";
        for (const std::string& n : g_failed_names) std::cout << " [" << n << "]";
    }
    std::cout << " (" << std::fixed << std::setprecision(1) << seconds_since(t0) << "s)\n";
    return g_failures == 0 ? 0 : 1;
}
