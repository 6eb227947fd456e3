#include "symcensus/cm.hpp"

#include "symcensus/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace symcensus {

namespace {

Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Int mod_pos(Int a, Int b) { return a - b * floor_div(a, b); }

bool squarefree(Int n) {
    for (Int p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

Int isqrt(Int n) {
    if (n < 0) return -1;
    Int r = static_cast<Int>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::optional<Int> exact_sqrt(Int n) {
    if (n < 0) return std::nullopt;
    Int r = isqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

void require_fundamental(Int d) {
    if (!is_fundamental_discriminant(d))
        throw std::domain_error("fundamental discriminant < 0 required");
}

// x + y w with w = (1+sqrt(d))/2 for odd d, sqrt(d)/2 for even d
struct Elem {
    Int x = 0;
    Int y = 0;
};

Elem elem_mul(Int d, Elem u, Elem v) {
    Elem out;
    const Int cross = checked_mul(u.y, v.y);
    if (mod_pos(d, 2) == 1) {
        out.x = checked_mul(u.x, v.x) + checked_mul(cross, (d - 1) / 4);
        out.y = checked_mul(u.x, v.y) + checked_mul(u.y, v.x) + cross;
    } else {
        out.x = checked_mul(u.x, v.x) + checked_mul(cross, d / 4);
        out.y = checked_mul(u.x, v.y) + checked_mul(u.y, v.x);
    }
    return out;
}

Elem elem_pow(Int d, Elem base, Int e) {
    Elem out{1, 0};
    while (e > 0) {
        if (e & 1) out = elem_mul(d, out, base);
        base = elem_mul(d, base, base);
        e >>= 1;
    }
    return out;
}

Elem unit_generator(Int d) {
    if (d == -3 || d == -4) return {0, 1};
    return {-1, 0};
}

Int unit_count(Int d) {
    if (d == -3) return 6;
    if (d == -4) return 4;
    return 2;
}

QuadraticForm principal_form(Int d) {
    if (mod_pos(d, 2) == 1) return {1, 1, (1 - d) / 4};
    return {1, 0, -d / 4};
}

std::vector<QuadraticForm> reduced_forms(Int d) {
    std::vector<QuadraticForm> out;
    for (Int b = mod_pos(d, 2); 3 * b * b <= -d; b += 2) {
        const Int m = (b * b - d) / 4;
        for (Int a : divisors(m)) {
            if (a < std::max<Int>(b, 1) || a * a > m) continue;
            const Int c = m / a;
            out.push_back({a, b, c});
            if (b > 0 && b < a && a < c) out.push_back({a, -b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// minimal polynomial of w is x^2 - x + (1-d)/4 (odd d) or x^2 - d/4 (even)
Int omega_poly(Int d, Int t) {
    if (mod_pos(d, 2) == 1) return t * t - t + (1 - d) / 4;
    return t * t - d / 4;
}

Int omega_poly_derivative(Int d, Int t) {
    return mod_pos(d, 2) == 1 ? 2 * t - 1 : 2 * t;
}

// Residues of w modulo p, one per prime ideal above p; empty means inert.
std::vector<Int> omega_residues(Int d, Int p) {
    const Int k = kronecker_symbol(d, p);
    if (k == -1) return {};
    std::vector<Int> roots;
    for (Int t = 0; t < p; ++t)
        if (mod_pos(omega_poly(d, t), p) == 0) roots.push_back(t);
    if (k == 1 && roots.size() != 2) throw std::logic_error("split prime without two roots");
    if (k == 0 && roots.size() != 1) throw std::logic_error("ramified prime without double root");
    return roots;
}

// Lift a simple root of the minimal polynomial from mod p to mod p^s.
Int hensel_lift(Int d, Int p, int s, Int root) {
    Int modulus = p;
    Int t = root;
    for (int j = 1; j < s; ++j) {
        modulus = checked_mul(modulus, p);
        const Int f = mod_pos(omega_poly(d, t), modulus);
        const Int fp = mod_pos(omega_poly_derivative(d, t), modulus);
        t = mod_pos(t - checked_mul(f, mod_inverse(fp, modulus)), modulus);
    }
    if (mod_pos(omega_poly(d, t), modulus) != 0) throw std::logic_error("lift failed");
    return t;
}

bool ideal_contains(const Ideal& I, Int x, Int y) {
    if (mod_pos(y, I.c) != 0) return false;
    return mod_pos(x - checked_mul(y, I.b), I.a) == 0;
}

// prime ideals above p that divide I (I's norm is divisible by p)
std::vector<Ideal> dividing_primes(Int d, Int p, const Ideal& I) {
    std::vector<Ideal> out;
    const auto roots = omega_residues(d, p);
    if (roots.empty()) {
        Ideal inert{p, 0, p};
        if (ideal_contains(inert, I.a, 0) && ideal_contains(inert, checked_mul(I.c, I.b), I.c))
            out.push_back(inert);
        return out;
    }
    for (Int t : roots) {
        Ideal prime{p, mod_pos(-t, p), 1};
        if (ideal_contains(prime, I.a, 0) && ideal_contains(prime, checked_mul(I.c, I.b), I.c))
            out.push_back(prime);
    }
    return out;
}

// all ideals of norm p^e, as (exponent pattern) -> Hermite form
std::vector<Ideal> prime_power_ideals(Int d, Int p, int e) {
    const Int k = kronecker_symbol(d, p);
    std::vector<Ideal> out;
    if (k == -1) {
        if (e % 2 == 0) {
            const Int q = pow_int(p, e / 2);
            out.push_back({q, 0, q});
        }
        return out;
    }
    const auto roots = omega_residues(d, p);
    if (k == 0) {
        const Int q = pow_int(p, e / 2);
        if (e % 2 == 0) {
            out.push_back({q, 0, q});
        } else {
            out.push_back({checked_mul(q, p), mod_pos(-roots[0], p), q});
        }
        return out;
    }
    for (int j = 0; j <= e; ++j) {
        const int m = std::min(j, e - j);
        const int s = e - 2 * m;
        const Int pm = pow_int(p, m);
        if (s == 0) {
            out.push_back({pm, 0, pm});
            continue;
        }
        const Int root = hensel_lift(d, p, s, j > e - j ? roots[0] : roots[1]);
        out.push_back({checked_mul(pm, pow_int(p, s)), mod_pos(-root, pow_int(p, s)), pm});
    }
    return out;
}

Int crt_pair(Int r1, Int m1, Int r2, Int m2) {
    if (m1 == 1) return mod_pos(r2, std::max<Int>(m2, 1));
    if (m2 == 1) return mod_pos(r1, m1);
    const Int inv = mod_inverse(mod_pos(m1, m2), m2);
    const Int shift = mod_pos(checked_mul(mod_pos(r2 - r1, m2), inv), m2);
    return mod_pos(r1 + checked_mul(shift, m1), checked_mul(m1, m2));
}

Ideal ideal_mul_coprime(const Ideal& u, const Ideal& v) {
    Ideal out;
    out.a = checked_mul(u.a, v.a);
    out.c = checked_mul(u.c, v.c);
    out.b = crt_pair(u.b, u.a / u.c, v.b, v.a / v.c);
    return out;
}

// Hermite form of the module spanned by (x_i, y_i); must be an ideal.
Ideal ideal_from_generators(std::vector<std::pair<Int, Int>> gens) {
    // gcd of the w-components with an accumulated generator
    Int X0 = 0, C = 0;
    std::vector<Int> xs;
    for (auto [x, y] : gens) {
        if (y == 0) {
            xs.push_back(x);
            continue;
        }
        if (C == 0) {
            X0 = x;
            C = y;
        } else {
            // reduce (x, y) against (X0, C) by the extended Euclid step
            while (y != 0) {
                const Int q = floor_div(C, y);
                Int nx = X0 - checked_mul(q, x);
                Int nc = C - checked_mul(q, y);
                X0 = x;
                C = y;
                x = nx;
                y = nc;
            }
            xs.push_back(x);
        }
    }
    if (C < 0) {
        C = -C;
        X0 = -X0;
    }
    Int A = 0;
    for (Int x : xs) A = std::gcd(A, x);
    if (A == 0 || C == 0) throw std::logic_error("degenerate ideal generators");
    if (A % C != 0 || X0 % C != 0) throw std::logic_error("module is not an ideal");
    return Ideal{A, mod_pos(X0 / C, A / C), C};
}

Ideal form_to_ideal(Int d, const QuadraticForm& f) {
    const Int b0 = mod_pos(mod_pos(d, 2) == 1 ? (-f.b - 1) / 2 : -f.b / 2, f.a);
    return Ideal{f.a, b0, 1};
}

QuadraticForm ideal_to_form(Int d, const Ideal& I) {
    // class representative of the primitive part (1/c) I
    const Int a = I.a / I.c;
    const Int b = mod_pos(d, 2) == 1 ? -(2 * I.b + 1) : -2 * I.b;
    const Int c = (b * b - d) / (4 * a);
    if (b * b - 4 * a * c != d) throw std::logic_error("ideal does not match discriminant");
    return reduce_form(d, {a, b, c});
}

Ideal ideal_product_general(Int d, const Ideal& u, const Ideal& v) {
    const bool odd = mod_pos(d, 2) == 1;
    std::vector<std::pair<Int, Int>> gens;
    const Int ub = checked_mul(u.c, u.b), vb = checked_mul(v.c, v.b);
    gens.emplace_back(checked_mul(u.a, v.a), 0);
    gens.emplace_back(checked_mul(u.a, vb), checked_mul(u.a, v.c));
    gens.emplace_back(checked_mul(v.a, ub), checked_mul(v.a, u.c));
    // (ub + uc w)(vb + vc w)
    const Int cross = checked_mul(u.c, v.c);
    Int gx = checked_mul(ub, vb) + checked_mul(cross, odd ? (d - 1) / 4 : d / 4);
    Int gy = checked_mul(ub, v.c) + checked_mul(vb, u.c) + (odd ? cross : 0);
    gens.emplace_back(gx, gy);
    Ideal out = ideal_from_generators(std::move(gens));
    if (out.norm() != checked_mul(u.norm(), v.norm()))
        throw std::logic_error("ideal product norm mismatch");
    return out;
}

struct ElemEncoding {
    Int a = 1, c = 1;
    ElemKey encode(Int x, Int y) const {
        return static_cast<ElemKey>(x) * static_cast<ElemKey>(c) + static_cast<ElemKey>(y);
    }
    std::pair<Int, Int> decode(ElemKey k) const {
        return {static_cast<Int>(k) / c, static_cast<Int>(k) % c};
    }
};

}  // namespace

bool is_fundamental_discriminant(Int d) {
    if (d >= 0) return false;
    const Int r = mod_pos(d, 4);
    if (r == 1) return squarefree(-d);
    if (r == 0) {
        const Int m = d / 4;
        const Int rm = mod_pos(m, 4);
        return (rm == 2 || rm == 3) && squarefree(-m);
    }
    return false;
}

QuadraticForm reduce_form(Int d, QuadraticForm f) {
    if (f.a <= 0 || f.b * f.b - 4 * f.a * f.c != d)
        throw std::domain_error("not a positive definite form of the given discriminant");
    while (true) {
        if (f.b > f.a || f.b <= -f.a) {
            const Int q = floor_div(f.b + f.a - 1, 2 * f.a);
            f.b -= 2 * q * f.a;
            f.c = (f.b * f.b - d) / (4 * f.a);
        }
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        break;
    }
    if (f.b < 0 && f.a == f.c) f.b = -f.b;
    if (f.b < 0 && f.b == -f.a) f.b = f.a;  // unreachable after normalization; kept as guard
    return f;
}

QuadraticForm compose_forms(Int d, const QuadraticForm& f, const QuadraticForm& g) {
    return ideal_to_form(d, ideal_product_general(d, form_to_ideal(d, f), form_to_ideal(d, g)));
}

ImagQuadField class_group(Int d) {
    require_fundamental(d);
    ImagQuadField field;
    field.d = d;
    field.w = unit_count(d);
    field.form_reps = reduced_forms(d);
    field.h = static_cast<Int>(field.form_reps.size());

    std::map<QuadraticForm, ElemKey> index;
    for (ElemKey i = 0; i < field.form_reps.size(); ++i) index[field.form_reps[i]] = i;
    std::vector<ElemKey> keys(field.form_reps.size());
    std::iota(keys.begin(), keys.end(), ElemKey{0});

    const auto& reps = field.form_reps;
    auto mul = [d, &index, &reps](ElemKey i, ElemKey j) -> ElemKey {
        const QuadraticForm out = compose_forms(d, reps[i], reps[j]);
        auto it = index.find(out);
        if (it == index.end()) throw std::logic_error("composition left the reduced set");
        return it->second;
    };
    field.class_structure = group_from_multiplication(keys, mul);
    if (field.class_structure->order() != field.h)
        throw std::logic_error("composition group order disagrees with form count");
    return field;
}

std::vector<Ideal> ideals_of_norm(const ImagQuadField& field, Int n) {
    if (n < 1) throw std::domain_error("ideal norm must be positive");
    std::vector<Ideal> out{Ideal{1, 0, 1}};
    for (const auto& [p, e] : factorize(n)) {
        const auto locals = prime_power_ideals(field.d, p, e);
        if (locals.empty()) return {};
        std::vector<Ideal> next;
        next.reserve(out.size() * locals.size());
        for (const auto& u : out)
            for (const auto& v : locals) next.push_back(ideal_mul_coprime(u, v));
        out = std::move(next);
    }
    std::sort(out.begin(), out.end(), [](const Ideal& u, const Ideal& v) {
        return std::tie(u.a, u.c, u.b) < std::tie(v.a, v.c, v.b);
    });
    return out;
}

RayResidues::RayResidues(const ImagQuadField& field, const Ideal& modulus)
    : d_(field.d), modulus_(modulus) {
    if (modulus.a < 1 || modulus.c < 1 || modulus.a % modulus.c != 0 ||
        modulus.b < 0 || (modulus.a / modulus.c > 1 && modulus.b >= modulus.a / modulus.c))
        throw std::domain_error("malformed ideal");
    for (const auto& [p, e] : factorize(modulus.norm()))
        for (const auto& prime : dividing_primes(d_, p, modulus_))
            prime_divisors_.push_back(prime);

    const ElemEncoding enc{modulus_.a, modulus_.c};
    std::vector<ElemKey> units;
    for (Int x = 0; x < modulus_.a; ++x)
        for (Int y = 0; y < modulus_.c; ++y)
            if (key(x, y)) units.push_back(enc.encode(x, y));

    const Int d = d_;
    const Ideal m = modulus_;
    auto mul = [d, m, enc](ElemKey lhs, ElemKey rhs) -> ElemKey {
        const auto [x1, y1] = enc.decode(lhs);
        const auto [x2, y2] = enc.decode(rhs);
        const Elem prod = elem_mul(d, Elem{x1, y1}, Elem{x2, y2});
        const Int q = floor_div(prod.y, m.c);
        const Int y = prod.y - checked_mul(q, m.c);
        const Int x = mod_pos(prod.x - checked_mul(q, checked_mul(m.c, m.b)), m.a);
        return enc.encode(x, y);
    };
    group_ = group_from_multiplication(units, mul);
}

std::pair<Int, Int> RayResidues::reduce(Int x, Int y) const {
    const Int q = floor_div(y, modulus_.c);
    y -= checked_mul(q, modulus_.c);
    x = mod_pos(x - checked_mul(q, checked_mul(modulus_.c, modulus_.b)), modulus_.a);
    return {x, y};
}

std::optional<ElemKey> RayResidues::key(Int x, Int y) const {
    const auto [rx, ry] = reduce(x, y);
    for (const auto& prime : prime_divisors_)
        if (ideal_contains(prime, rx, ry)) return std::nullopt;
    return ElemEncoding{modulus_.a, modulus_.c}.encode(rx, ry);
}

GroupPtr ray_unit_group(const ImagQuadField& field, const Ideal& modulus) {
    return RayResidues(field, modulus).group();
}

namespace {

// order of the image of the unit group inside (O/m)^*
Int unit_image_order(const ImagQuadField& field, const RayResidues& ray) {
    const Elem u = unit_generator(field.d);
    const auto ukey = ray.key(u.x, u.y);
    if (!ukey) throw std::logic_error("unit not coprime to modulus");
    const auto vec = ray.group()->dlog(*ukey);
    if (!vec) throw std::logic_error("unit residue missing from group table");
    const auto& factors = ray.group()->invariant_factors();
    Int ord = 1;
    for (std::size_t i = 0; i < factors.size(); ++i)
        ord = std::lcm(ord, factors[i] / std::gcd(factors[i], (*vec)[i]));
    return ord;
}

}  // namespace

HeckeCharCount hecke_char_count(const ImagQuadField& field, const Ideal& modulus,
                                Int infinity_type) {
    if (infinity_type < 1) throw std::domain_error("infinity type must be >= 1");
    const RayResidues ray(field, modulus);
    const Int image = unit_image_order(field, ray);
    const Int kernel = field.w / image;

    HeckeCharCount out;
    out.d = field.d;
    out.modulus_norm = modulus.norm();
    out.infinity_type = infinity_type;
    out.induced_level = checked_mul(-field.d, out.modulus_norm);
    out.count = (infinity_type % kernel == 0) ? field.h * (ray.group()->order() / image) : 0;
    return out;
}

std::vector<GroupCharacter> compatible_ray_characters(const ImagQuadField& field,
                                                      const Ideal& modulus,
                                                      Int infinity_type) {
    if (infinity_type < 1) throw std::domain_error("infinity type must be >= 1");
    const RayResidues ray(field, modulus);
    const Elem u = unit_generator(field.d);
    const auto uvec = ray.group()->dlog(*ray.key(u.x, u.y));
    const QmodZ power(infinity_type, field.w);

    std::vector<GroupCharacter> out;
    for (const auto& chi : enumerate_characters(ray.group()))
        if ((chi.eval_vec(*uvec) + power).is_zero()) out.push_back(chi);
    return out;
}

CmCount cm_count(Int k, Int level) {
    if (k < 2 || k % 2 != 0) throw std::domain_error("weight must be an even integer >= 2");
    if (level < 1) throw std::domain_error("level must be positive");

    CmCount out;
    out.k = k;
    out.level = level;
    for (Int dd = 3; dd <= level; ++dd) {
        if (level % dd != 0 || !is_fundamental_discriminant(-dd)) continue;
        const ImagQuadField field = class_group(-dd);
        CmContribution row{-dd, level / dd, 0};
        for (const auto& m : ideals_of_norm(field, row.modulus_norm))
            row.count += hecke_char_count(field, m, k - 1).count;
        out.total += row.count;
        out.breakdown.push_back(row);
    }
    return out;
}

namespace {

CyclotomicSum cyclotomic_of(Int d, const Elem& e) {
    CyclotomicSum out;
    auto acc = [&out](QmodZ angle, Rat weight) {
        if (weight.numerator() == 0) return;
        auto [it, inserted] = out.try_emplace(angle, weight);
        if (!inserted && (it->second += weight).numerator() == 0) out.erase(it);
    };
    if (d == -4) {
        acc(QmodZ::zero(), e.x);
        acc(QmodZ(1, 4), e.y);
        return out;
    }
    if (d == -3) {
        acc(QmodZ::zero(), e.x);
        acc(QmodZ(1, 6), e.y);
        return out;
    }
    // sqrt(d) = sum over a of kronecker(d, a) e(a/|d|)
    const bool odd = mod_pos(d, 2) == 1;
    acc(QmodZ::zero(), odd ? Rat(2 * e.x + e.y, 2) : Rat(e.x));
    for (Int a = 1; a < -d; ++a) {
        const Int chi = kronecker_symbol(d, a);
        if (chi != 0) acc(QmodZ(a, -d), Rat(chi * e.y, 2));
    }
    return out;
}

std::vector<Elem> elements_of_norm(Int d, Int n) {
    std::vector<Elem> out;
    if (mod_pos(d, 2) == 0) {
        const Int m0 = -d / 4;
        for (Int y = -isqrt(n / m0); y * y * m0 <= n; ++y) {
            const auto x = exact_sqrt(n - m0 * y * y);
            if (!x) continue;
            out.push_back({*x, y});
            if (*x > 0) out.push_back({-*x, y});
        }
        return out;
    }
    for (Int y = -isqrt(4 * n / -d); d * y * y + 4 * n >= 0; ++y) {
        const auto s = exact_sqrt(4 * n + d * y * y);
        if (!s) continue;
        for (Int sign : {*s, -*s}) {
            if (mod_pos(sign - y, 2) != 0) continue;
            out.push_back({(sign - y) / 2, y});
            if (*s == 0) break;
        }
    }
    return out;
}

}  // namespace

std::vector<CyclotomicSum> cm_q_expansion(const HeckeCharacter& zeta, Int terms,
                                          bool include_norm_factor) {
    if (zeta.field.h != 1)
        throw std::domain_error("expansion requires class number one");
    if (zeta.infinity_type < 1) throw std::domain_error("infinity type must be >= 1");
    if (include_norm_factor && zeta.infinity_type % 2 != 0)
        throw std::domain_error("norm factor needs an even infinity type");
    if (terms < 1) throw std::domain_error("need at least one coefficient");

    const Int d = zeta.field.d;
    const Int t = zeta.infinity_type;
    const RayResidues ray(zeta.field, zeta.modulus);
    if (static_cast<int>(zeta.ray.images().size()) != ray.group()->rank())
        throw std::domain_error("ray character does not match the modulus");

    const Elem u = unit_generator(d);
    if (!(zeta.ray.eval_vec(*ray.group()->dlog(*ray.key(u.x, u.y))) + QmodZ(t, zeta.field.w))
             .is_zero())
        throw std::domain_error("character incompatible with the unit group");

    std::vector<CyclotomicSum> coeffs(static_cast<std::size_t>(terms));
    for (Int n = 1; n <= terms; ++n) {
        CyclotomicSum& total = coeffs[static_cast<std::size_t>(n - 1)];
        std::set<std::pair<Int, Int>> seen;
        for (const Elem& alpha : elements_of_norm(d, n)) {
            if (seen.count({alpha.x, alpha.y})) continue;
            // orbit under units; one canonical generator per ideal
            Elem canon = alpha;
            Elem cur = alpha;
            for (Int j = 0; j < zeta.field.w; ++j) {
                seen.insert({cur.x, cur.y});
                if (std::tie(cur.x, cur.y) > std::tie(canon.x, canon.y)) canon = cur;
                cur = elem_mul(d, cur, u);
            }
            const auto key = ray.key(canon.x, canon.y);
            if (!key) continue;  // not coprime to the modulus
            const QmodZ angle = zeta.ray.eval_vec(*ray.group()->dlog(*key));
            const Rat scale = include_norm_factor ? Rat(pow_int(n, t / 2)) : Rat(1);
            for (const auto& [q, wgt] : cyclotomic_of(d, elem_pow(d, canon, t))) {
                auto [it, inserted] = total.try_emplace(q + angle, wgt * scale);
                if (!inserted && (it->second += wgt * scale).numerator() == 0) total.erase(it);
            }
        }
    }
    return coeffs;
}

}  // namespace symcensus
