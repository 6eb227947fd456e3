#pragma once

#include "symcensus/abelian.hpp"
#include "symcensus/dirichlet.hpp"
#include "symcensus/rational.hpp"

#include <utility>
#include <vector>

namespace symcensus {

enum class FieldKind { Base, Unramified, Ramified };

/** Q_p for an odd prime p, or one of its three quadratic extensions.
 *
 * Unramified: generated by a square root of the smallest nonresidue u.
 * Ramified: generated by a square root of twist * p, twist in {1, u}.
 */
struct LocalField {
    Int p = 0;
    FieldKind kind = FieldKind::Base;
    Int twist = 0;

    int ram_index() const { return kind == FieldKind::Ramified ? 2 : 1; }
    int res_degree() const { return kind == FieldKind::Unramified ? 2 : 1; }
    Int residue_size() const { return kind == FieldKind::Unramified ? p * p : p; }
    int disc_valuation() const { return kind == FieldKind::Ramified ? 1 : 0; }
    bool is_quadratic() const { return kind != FieldKind::Base; }

    bool operator==(const LocalField&) const = default;
};

LocalField base_field(Int p);
LocalField unramified_quadratic(Int p);
LocalField ramified_quadratic(Int p, bool twisted);
std::vector<LocalField> quadratic_extensions(Int p);

/** The finite group (O_K / p_K^level)^x with exact structure and discrete logs.
 *
 * Elements are residues a + b*gen packed into an ElemKey; b is always 0 over
 * the base field.  The group structure splits the prime-to-p part (powers of
 * the Teichmueller generator) from the principal units, whose p-group
 * structure is recovered from its multiplication table.
 */
class UnitQuotient {
  public:
    // Residue coordinates a + b*gen live modulo (mod_a, mod_b); gen^2 = sq.
    struct Ring {
        Int mod_a = 1, mod_b = 1, sq = 0, p = 0;
        FieldKind kind = FieldKind::Base;
    };

    UnitQuotient(const LocalField& field, int level);

    const LocalField& field() const { return field_; }
    int level() const { return level_; }
    const GroupPtr& group() const { return group_; }
    Int unit_count() const;
    const Ring& ring() const { return ring_; }

    // Component moduli of the residue representation (second is 1 over the base).
    Int modulus_a() const { return ring_.mod_a; }
    Int modulus_b() const { return ring_.mod_b; }

    ElemKey one() const { return encode(1, 0); }
    ElemKey encode(Int a, Int b = 0) const;
    std::pair<Int, Int> decode(ElemKey e) const;
    bool is_unit(ElemKey e) const;

    ElemKey mul(ElemKey x, ElemKey y) const;
    ElemKey pow(ElemKey x, Int e) const;  // e >= 0
    ElemKey inv(ElemKey x) const;
    ElemKey galois(ElemKey x) const;  // the nontrivial automorphism; identity on the base

    // Norm to Q_p, a residue modulo p^norm_level().
    Int norm(ElemKey x) const;
    int norm_level() const;
    // Embedding of a base residue modulo p^base_level().
    ElemKey from_base(Int a) const;
    int base_level() const;
    // Reduction onto a shallower quotient of the same field.
    ElemKey reduce_to(ElemKey x, const UnitQuotient& lower) const;

    ExpVec dlog(ElemKey x) const;  // throws std::domain_error on non-units

    // Elements of 1 + p_K^i inside this quotient, 1 <= i <= level.
    std::vector<ElemKey> principal_units(int i) const;
    // Their discrete logs, cached; the conductor scan walks these.
    const std::vector<ExpVec>& filtration_dlogs(int i) const;

  private:
    LocalField field_;
    int level_;
    Ring ring_;
    GroupPtr group_;
    std::vector<std::vector<ExpVec>> filtration_;
};

// Shared quotient instances; references stay valid for the process lifetime.
const UnitQuotient& unit_quotient(const LocalField& field, int level);

/** Smooth character of K^x of finite order.
 *
 * Determined by a character of the level-m unit quotient together with the
 * value at the fixed uniformizer (p, or the square root of twist * p).
 * Values are additive in Q/Z.  Unramified characters get conductor 0.
 */
class LocalCharacter {
  public:
    LocalCharacter(LocalField field, int level, std::vector<QmodZ> unit_images,
                   QmodZ unif_value);

    static LocalCharacter trivial(const LocalField& field);
    static LocalCharacter unramified_twist(const LocalField& field, QmodZ unif_value);

    const LocalField& field() const { return field_; }
    int level() const { return level_; }
    const UnitQuotient& quotient() const { return unit_quotient(field_, level_); }
    const GroupCharacter& unit_part() const { return unit_chi_; }
    const QmodZ& unif_value() const { return unif_value_; }

    QmodZ eval_unit(ElemKey u) const { return unit_chi_.eval(u); }
    QmodZ eval(Int valuation, ElemKey u) const;

    Int conductor() const;
    bool is_unramified() const { return conductor() == 0; }
    Int order() const;

    LocalCharacter at_level(int new_level) const;  // inflation, new_level >= level
    LocalCharacter mul(const LocalCharacter& other) const;
    LocalCharacter pow(Int k) const;
    LocalCharacter inverse() const { return pow(-1); }

    LocalCharacter galois_conjugate() const;
    bool galois_invariant() const;
    LocalCharacter restrict_to_base() const;  // precompose with Q_p^x -> K^x

    // Level-insensitive equality on the same field.
    bool same_as(const LocalCharacter& other) const;

  private:
    LocalField field_;
    int level_;
    GroupCharacter unit_chi_;
    QmodZ unif_value_;
};

// Quadratic character of Q_p^x cutting out the extension.
LocalCharacter quadratic_character(const LocalField& ext);

// chi composed with the norm from ext down to Q_p.
LocalCharacter norm_compose(const LocalCharacter& chi, const LocalField& ext);

// Conductor bookkeeping for norm composition:
//   res_degree * c(chi o N) = c(chi) + c(chi * omega) - c(omega).
struct NormConductorCheck {
    Int lhs = 0, rhs = 0;
    Int c_chi = 0, c_chi_omega = 0, c_omega = 0, c_composed = 0;
    bool holds() const { return lhs == rhs; }
};
NormConductorCheck check_norm_conductor(const LocalCharacter& chi, const LocalField& ext);

// Conductor of the two-dimensional induction of a character of K^x.
Int induced_conductor(const LocalCharacter& xi);

// The two characters chi of Q_p^x with chi o N = xi (xi Galois-invariant);
// first entry has the smaller conductor.
std::pair<LocalCharacter, LocalCharacter> solve_norm_factorization(const LocalCharacter& xi);

}  // namespace symcensus
