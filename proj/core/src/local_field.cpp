#include "symcensus/local_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace symcensus {

namespace {

constexpr int kHiShift = 32;
constexpr Int kComponentCap = Int(1) << 31;  // keeps all ring products inside Int

void validate_odd_prime(Int p) {
    if (p == 2) throw std::domain_error("residue characteristic 2 is not supported");
    if (!is_prime(p)) throw std::domain_error("p must be an odd prime");
}

using Ring = UnitQuotient::Ring;

ElemKey rp_encode(const Ring& r, Int a, Int b) {
    a %= r.mod_a;
    if (a < 0) a += r.mod_a;
    b %= r.mod_b;
    if (b < 0) b += r.mod_b;
    return static_cast<ElemKey>(a) | (static_cast<ElemKey>(b) << kHiShift);
}

std::pair<Int, Int> rp_decode(ElemKey e) {
    return {static_cast<Int>(e & 0xffffffffULL), static_cast<Int>(e >> kHiShift)};
}

bool rp_valid(const Ring& r, ElemKey e) {
    auto [a, b] = rp_decode(e);
    return a < r.mod_a && b < r.mod_b;
}

bool rp_is_unit(const Ring& r, ElemKey e) {
    auto [a, b] = rp_decode(e);
    if (r.kind == FieldKind::Unramified) return a % r.p != 0 || b % r.p != 0;
    return a % r.p != 0;
}

ElemKey rp_mul(const Ring& r, ElemKey x, ElemKey y) {
    auto [a, b] = rp_decode(x);
    auto [c, d] = rp_decode(y);
    Int na = (a * c % r.mod_a + (r.sq % r.mod_a) * (b * d % r.mod_a)) % r.mod_a;
    Int nb = r.mod_b == 1 ? 0 : (a * d % r.mod_b + b * c % r.mod_b) % r.mod_b;
    return rp_encode(r, na, nb);
}

ElemKey rp_pow(const Ring& r, ElemKey x, Int e) {
    if (e < 0) throw std::domain_error("rp_pow: negative exponent");
    ElemKey out = rp_encode(r, 1, 0);
    while (e > 0) {
        if (e & 1) out = rp_mul(r, out, x);
        x = rp_mul(r, x, x);
        e >>= 1;
    }
    return out;
}

// (a + b*gen)^-1 = (a - b*gen) / (a^2 - sq b^2); the norm is a p-adic unit.
ElemKey rp_inv(const Ring& r, ElemKey x) {
    auto [a, b] = rp_decode(x);
    Int n = ((a * a - (r.sq % r.mod_a) * (b * b % r.mod_a)) % r.mod_a + r.mod_a) % r.mod_a;
    Int ninv = mod_inverse(n, r.mod_a);
    return rp_encode(r, a * ninv % r.mod_a, r.mod_b == 1 ? 0 : -(b % r.mod_b) * ninv);
}

// x^(q^(level-1)): the Teichmueller component of a unit.
ElemKey rp_teich(const Ring& r, Int q, int level, ElemKey x) {
    for (int i = 1; i < level; ++i) x = rp_pow(r, x, q);
    return x;
}

Ring make_ring(const LocalField& f, int level) {
    Ring r;
    r.p = f.p;
    r.kind = f.kind;
    switch (f.kind) {
        case FieldKind::Base:
            r.mod_a = pow_int(f.p, level);
            r.mod_b = 1;
            r.sq = 0;
            break;
        case FieldKind::Unramified:
            r.mod_a = r.mod_b = pow_int(f.p, level);
            r.sq = f.twist;
            break;
        case FieldKind::Ramified:
            r.mod_a = pow_int(f.p, (level + 1) / 2);
            r.mod_b = pow_int(f.p, level / 2);
            r.sq = f.twist * f.p;
            break;
    }
    if (r.mod_a >= kComponentCap) throw std::domain_error("unit quotient level is too deep");
    return r;
}

// Generator of the residue field's multiplicative group, as level-1 coordinates.
std::pair<Int, Int> residue_generator(const LocalField& f) {
    Ring r1 = make_ring(f, 1);
    const Int q = f.residue_size();
    std::vector<Int> prime_divs;
    for (const auto& [p, e] : factorize(q - 1)) prime_divs.push_back(p);
    auto is_generator = [&](ElemKey x) {
        for (Int ell : prime_divs)
            if (rp_pow(r1, x, (q - 1) / ell) == rp_encode(r1, 1, 0)) return false;
        return true;
    };
    for (Int b = 0; b < r1.mod_b; ++b)
        for (Int a = 0; a < r1.mod_a; ++a) {
            ElemKey x = rp_encode(r1, a, b);
            if (rp_is_unit(r1, x) && is_generator(x)) return {a, b};
        }
    throw std::logic_error("residue field has no multiplicative generator");
}

// Everything the functional dlog needs, owned by the closure.
struct DlogCore {
    Ring ring;
    Int q = 0;
    int level = 1;
    GroupPtr u1;
    std::unordered_map<ElemKey, Int> teich_index;
    Int crt_inv = 0;  // inverse of q-1 modulo the top principal-unit factor

    std::optional<ExpVec> combine(Int teich_exp, const ExpVec& u1_vec) const {
        const std::size_t r = u1->invariant_factors().size();
        if (r == 0) return ExpVec{teich_exp};
        ExpVec out(u1_vec);
        if (q - 1 > 1) {
            const Int top = u1->invariant_factors().back();
            Int t = ((u1_vec[r - 1] - teich_exp) % top + top) % top;
            out[r - 1] = teich_exp + (q - 1) * (t * crt_inv % top);
        }
        return out;
    }

    std::optional<ExpVec> operator()(ElemKey e) const {
        if (!rp_valid(ring, e) || !rp_is_unit(ring, e)) return std::nullopt;
        ElemKey t = rp_teich(ring, q, level, e);
        auto it = teich_index.find(t);
        if (it == teich_index.end()) return std::nullopt;
        auto v = u1->dlog(rp_mul(ring, e, rp_inv(ring, t)));
        if (!v) return std::nullopt;
        return combine(it->second, *v);
    }
};

}  // namespace

LocalField base_field(Int p) {
    validate_odd_prime(p);
    return {p, FieldKind::Base, 0};
}

LocalField unramified_quadratic(Int p) {
    validate_odd_prime(p);
    return {p, FieldKind::Unramified, smallest_quadratic_nonresidue(p)};
}

LocalField ramified_quadratic(Int p, bool twisted) {
    validate_odd_prime(p);
    return {p, FieldKind::Ramified, twisted ? smallest_quadratic_nonresidue(p) : 1};
}

std::vector<LocalField> quadratic_extensions(Int p) {
    return {unramified_quadratic(p), ramified_quadratic(p, false),
            ramified_quadratic(p, true)};
}

UnitQuotient::UnitQuotient(const LocalField& field, int level) : field_(field), level_(level) {
    if (level < 1) throw std::domain_error("unit quotient needs level >= 1");
    validate_odd_prime(field.p);
    ring_ = make_ring(field, level);

    auto core = std::make_shared<DlogCore>();
    core->ring = ring_;
    core->q = field.residue_size();
    core->level = level;
    core->u1 = group_from_multiplication(
        principal_units(1), [r = ring_](ElemKey x, ElemKey y) { return rp_mul(r, x, y); });

    auto [ga, gb] = residue_generator(field);
    ElemKey teich_gen = rp_teich(ring_, core->q, level, rp_encode(ring_, ga, gb));
    ElemKey t = rp_encode(ring_, 1, 0);
    for (Int j = 0; j < core->q - 1; ++j) {
        core->teich_index.emplace(t, j);
        t = rp_mul(ring_, t, teich_gen);
    }
    if (t != rp_encode(ring_, 1, 0) ||
        core->teich_index.size() != static_cast<std::size_t>(core->q - 1))
        throw std::logic_error("Teichmueller lift does not have full order");

    // Invariant factors: principal-unit chain with q-1 folded into the top.
    std::vector<Int> factors = core->u1->invariant_factors();
    std::vector<ElemKey> reps = core->u1->generator_reps();
    if (factors.empty()) {
        factors.push_back(core->q - 1);
        reps.push_back(teich_gen);
    } else {
        const Int top = factors.back();
        core->crt_inv = mod_inverse((core->q - 1) % top, top);
        factors.back() = checked_mul(top, core->q - 1);
        reps.back() = rp_mul(ring_, teich_gen, reps.back());
    }

    GroupPtr u1_keep = core->u1;
    group_ = std::make_shared<FiniteAbelianGroup>(
        std::move(factors), [core](ElemKey e) { return (*core)(e); }, std::move(reps));

    // Discrete logs of every filtration layer, deepest last; all layers sit
    // inside U_1, so no Teichmueller component ever appears.
    filtration_.resize(level);
    for (int i = 1; i <= level; ++i) {
        for (ElemKey e : principal_units(i)) {
            auto v = core->combine(0, *u1_keep->dlog(e));
            filtration_[i - 1].push_back(std::move(*v));
        }
    }
}

Int UnitQuotient::unit_count() const { return group_->order(); }

ElemKey UnitQuotient::encode(Int a, Int b) const { return rp_encode(ring_, a, b); }

std::pair<Int, Int> UnitQuotient::decode(ElemKey e) const { return rp_decode(e); }

bool UnitQuotient::is_unit(ElemKey e) const { return rp_valid(ring_, e) && rp_is_unit(ring_, e); }

ElemKey UnitQuotient::mul(ElemKey x, ElemKey y) const { return rp_mul(ring_, x, y); }

ElemKey UnitQuotient::pow(ElemKey x, Int e) const { return rp_pow(ring_, x, e); }

ElemKey UnitQuotient::inv(ElemKey x) const {
    if (!is_unit(x)) throw std::domain_error("cannot invert a non-unit");
    return rp_inv(ring_, x);
}

ElemKey UnitQuotient::galois(ElemKey x) const {
    auto [a, b] = rp_decode(x);
    return rp_encode(ring_, a, -b);
}

int UnitQuotient::norm_level() const {
    return field_.kind == FieldKind::Ramified ? (level_ + 1) / 2 : level_;
}

Int UnitQuotient::norm(ElemKey x) const {
    auto [a, b] = rp_decode(x);
    if (field_.kind == FieldKind::Base) return a;
    Int n = (a * a - (ring_.sq % ring_.mod_a) * (b * b % ring_.mod_a)) % ring_.mod_a;
    return n < 0 ? n + ring_.mod_a : n;
}

int UnitQuotient::base_level() const {
    return field_.kind == FieldKind::Ramified ? (level_ + 1) / 2 : level_;
}

ElemKey UnitQuotient::from_base(Int a) const { return rp_encode(ring_, a, 0); }

ElemKey UnitQuotient::reduce_to(ElemKey x, const UnitQuotient& lower) const {
    if (!(lower.field_ == field_) || lower.level_ > level_)
        throw std::invalid_argument("reduction target is not a shallower quotient");
    auto [a, b] = rp_decode(x);
    return rp_encode(lower.ring_, a, b);
}

ExpVec UnitQuotient::dlog(ElemKey x) const {
    auto v = group_->dlog(x);
    if (!v) throw std::domain_error("discrete log of a non-unit");
    return *v;
}

std::vector<ElemKey> UnitQuotient::principal_units(int i) const {
    if (i < 1 || i > level_) throw std::invalid_argument("filtration index out of range");
    Int stride_a, stride_b;
    switch (field_.kind) {
        case FieldKind::Base:
            stride_a = std::min(pow_int(field_.p, i), ring_.mod_a);
            stride_b = 1;
            break;
        case FieldKind::Unramified:
            stride_a = stride_b = std::min(pow_int(field_.p, i), ring_.mod_a);
            break;
        case FieldKind::Ramified:
            stride_a = std::min(pow_int(field_.p, (i + 1) / 2), ring_.mod_a);
            stride_b = std::min(pow_int(field_.p, i / 2), ring_.mod_b);
            break;
    }
    std::vector<ElemKey> out;
    out.reserve(static_cast<std::size_t>((ring_.mod_a / stride_a) *
                                         std::max<Int>(ring_.mod_b / stride_b, 1)));
    for (Int a = 1; a <= ring_.mod_a; a += stride_a)
        for (Int b = 0; b < std::max<Int>(ring_.mod_b, 1); b += stride_b)
            out.push_back(rp_encode(ring_, a % ring_.mod_a, b));
    return out;
}

const std::vector<ExpVec>& UnitQuotient::filtration_dlogs(int i) const {
    if (i < 1 || i > level_) throw std::invalid_argument("filtration index out of range");
    return filtration_[i - 1];
}

const UnitQuotient& unit_quotient(const LocalField& field, int level) {
    using Key = std::tuple<Int, int, Int, int>;
    static std::map<Key, std::unique_ptr<UnitQuotient>> cache;
    static std::mutex cache_mutex;
    Key key{field.p, static_cast<int>(field.kind), field.twist, level};
    std::lock_guard lock(cache_mutex);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<UnitQuotient>(field, level)).first;
    return *it->second;
}

LocalCharacter::LocalCharacter(LocalField field, int level, std::vector<QmodZ> unit_images,
                               QmodZ unif_value)
    : field_(field),
      level_(level),
      unit_chi_(unit_quotient(field, level).group(), std::move(unit_images)),
      unif_value_(unif_value) {}

LocalCharacter LocalCharacter::trivial(const LocalField& field) {
    return unramified_twist(field, QmodZ::zero());
}

LocalCharacter LocalCharacter::unramified_twist(const LocalField& field, QmodZ unif_value) {
    const auto& uq = unit_quotient(field, 1);
    return LocalCharacter(field, 1, std::vector<QmodZ>(uq.group()->rank(), QmodZ::zero()),
                          unif_value);
}

QmodZ LocalCharacter::eval(Int valuation, ElemKey u) const {
    return unif_value_ * valuation + eval_unit(u);
}

Int LocalCharacter::conductor() const {
    if (unit_chi_.is_trivial()) return 0;
    const UnitQuotient& uq = quotient();
    // Deepest nontrivial layer wins; layers shrink as i grows, so scanning
    // from the bottom exits early for wildly ramified characters.
    for (int i = level_ - 1; i >= 1; --i)
        for (const ExpVec& v : uq.filtration_dlogs(i))
            if (!unit_chi_.eval_vec(v).is_zero()) return i + 1;
    return 1;
}

Int LocalCharacter::order() const {
    return std::lcm(unit_chi_.order(), unif_value_.order());
}

LocalCharacter LocalCharacter::at_level(int new_level) const {
    if (new_level < level_) throw std::invalid_argument("characters only inflate upward");
    if (new_level == level_) return *this;
    const UnitQuotient& hi = unit_quotient(field_, new_level);
    const UnitQuotient& lo = quotient();
    std::vector<QmodZ> images;
    images.reserve(hi.group()->rank());
    for (ElemKey g : hi.group()->generator_reps())
        images.push_back(eval_unit(hi.reduce_to(g, lo)));
    return LocalCharacter(field_, new_level, std::move(images), unif_value_);
}

LocalCharacter LocalCharacter::mul(const LocalCharacter& other) const {
    if (!(field_ == other.field_))
        throw std::invalid_argument("characters live on different fields");
    const int n = std::max(level_, other.level_);
    LocalCharacter a = at_level(n), b = other.at_level(n);
    return LocalCharacter(field_, n, a.unit_chi_.mul(b.unit_chi_).images(),
                          unif_value_ + other.unif_value_);
}

LocalCharacter LocalCharacter::pow(Int k) const {
    return LocalCharacter(field_, level_, unit_chi_.pow(k).images(), unif_value_ * k);
}

LocalCharacter LocalCharacter::galois_conjugate() const {
    if (!field_.is_quadratic())
        throw std::domain_error("galois conjugation needs a quadratic extension");
    const UnitQuotient& uq = quotient();
    std::vector<QmodZ> images;
    for (ElemKey g : uq.group()->generator_reps()) images.push_back(eval_unit(uq.galois(g)));
    QmodZ uv = unif_value_;
    // sigma fixes p; over a ramified field sigma(gen) = -gen = gen * (-1).
    if (field_.kind == FieldKind::Ramified) uv = uv + eval_unit(uq.from_base(-1));
    return LocalCharacter(field_, level_, std::move(images), uv);
}

bool LocalCharacter::galois_invariant() const { return same_as(galois_conjugate()); }

LocalCharacter LocalCharacter::restrict_to_base() const {
    if (!field_.is_quadratic())
        throw std::domain_error("restriction needs a quadratic extension");
    const UnitQuotient& uq = quotient();
    const UnitQuotient& bq = unit_quotient(base_field(field_.p), uq.base_level());
    std::vector<QmodZ> images;
    for (ElemKey g : bq.group()->generator_reps())
        images.push_back(eval_unit(uq.from_base(bq.decode(g).first)));
    QmodZ uv;
    if (field_.kind == FieldKind::Unramified) {
        uv = unif_value_;  // p is the uniformizer upstairs as well
    } else {
        // p = gen^2 * twist^-1
        uv = unif_value_ * 2 + eval_unit(uq.from_base(mod_inverse(field_.twist, uq.modulus_a())));
    }
    return LocalCharacter(base_field(field_.p), uq.base_level(), std::move(images), uv);
}

bool LocalCharacter::same_as(const LocalCharacter& other) const {
    if (!(field_ == other.field_)) return false;
    const int n = std::max(level_, other.level_);
    LocalCharacter a = at_level(n), b = other.at_level(n);
    return a.unit_chi_.images() == b.unit_chi_.images() && a.unif_value_ == b.unif_value_;
}

LocalCharacter quadratic_character(const LocalField& ext) {
    if (!ext.is_quadratic()) throw std::domain_error("expected a quadratic extension");
    if (ext.kind == FieldKind::Unramified)
        return LocalCharacter::unramified_twist(base_field(ext.p), QmodZ::half());
    // Ramified: the tame quadratic character on units, value at p by the
    // Hilbert symbol (p, twist * p) = (-twist | p).
    QmodZ at_p = legendre_symbol(-ext.twist, ext.p) == 1 ? QmodZ::zero() : QmodZ::half();
    return LocalCharacter(base_field(ext.p), 1, {QmodZ::half()}, at_p);
}

LocalCharacter norm_compose(const LocalCharacter& chi, const LocalField& ext) {
    if (chi.field().kind != FieldKind::Base)
        throw std::invalid_argument("norm composition starts from a base-field character");
    if (!ext.is_quadratic() || ext.p != chi.field().p)
        throw std::invalid_argument("extension does not match the character's field");
    const int m = ext.ram_index() == 1 ? chi.level() : 2 * chi.level() - 1;
    const UnitQuotient& kq = unit_quotient(ext, m);
    const UnitQuotient& bq = chi.quotient();
    std::vector<QmodZ> images;
    for (ElemKey g : kq.group()->generator_reps())
        images.push_back(chi.eval_unit(bq.encode(kq.norm(g))));
    QmodZ uv;
    if (ext.kind == FieldKind::Unramified) {
        uv = chi.unif_value() * 2;  // N(p) = p^2
    } else {
        // N(gen) = -gen^2 = -twist * p
        uv = chi.unif_value() + chi.eval_unit(bq.encode(-ext.twist));
    }
    return LocalCharacter(ext, m, std::move(images), uv);
}

NormConductorCheck check_norm_conductor(const LocalCharacter& chi, const LocalField& ext) {
    LocalCharacter omega = quadratic_character(ext);
    NormConductorCheck out;
    out.c_chi = chi.conductor();
    out.c_chi_omega = chi.mul(omega).conductor();
    out.c_omega = omega.conductor();
    out.c_composed = norm_compose(chi, ext).conductor();
    out.lhs = ext.res_degree() * out.c_composed;
    out.rhs = out.c_chi + out.c_chi_omega - out.c_omega;
    return out;
}

Int induced_conductor(const LocalCharacter& xi) {
    const LocalField& k = xi.field();
    if (!k.is_quadratic()) throw std::domain_error("induction needs a quadratic extension");
    return k.disc_valuation() + k.res_degree() * xi.conductor();
}

std::pair<LocalCharacter, LocalCharacter> solve_norm_factorization(const LocalCharacter& xi) {
    const LocalField& k = xi.field();
    if (!k.is_quadratic()) throw std::domain_error("norm factorization needs an extension");
    if (!xi.galois_invariant())
        throw std::domain_error("only Galois-invariant characters factor through the norm");
    const LocalField b = base_field(k.p);
    const int search_level = static_cast<int>(xi.conductor()) + 1;
    const UnitQuotient& bq = unit_quotient(b, search_level);

    std::vector<LocalCharacter> sols;
    for (const auto& psi : enumerate_characters(bq.group())) {
        std::vector<QmodZ> uvals;
        if (k.kind == FieldKind::Unramified) {
            // 2 * v = xi(p) has two square roots in Q/Z
            QmodZ v0(xi.unif_value().num(), 2 * xi.unif_value().den());
            uvals = {v0, v0 + QmodZ::half()};
        } else {
            // xi(gen) = v + psi(-twist) pins v
            uvals = {xi.unif_value() - psi.eval(bq.encode(-k.twist))};
        }
        for (const QmodZ& v : uvals) {
            LocalCharacter phi(b, search_level, psi.images(), v);
            if (norm_compose(phi, k).same_as(xi)) sols.push_back(phi);
        }
    }
    if (sols.size() != 2)
        throw std::logic_error("norm factorization did not find exactly two solutions");

    auto lex_before = [](const LocalCharacter& x, const LocalCharacter& y) {
        if (x.conductor() != y.conductor()) return x.conductor() < y.conductor();
        if (!(x.unif_value() == y.unif_value())) return x.unif_value() < y.unif_value();
        return x.unit_part().images() < y.unit_part().images();
    };
    if (lex_before(sols[1], sols[0])) std::swap(sols[0], sols[1]);
    return {sols[0], sols[1]};
}

}  // namespace symcensus
