#pragma once

#include "symcensus/abelian.hpp"
#include "symcensus/rational.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace symcensus {

// Binary quadratic form a x^2 + b xy + c y^2.
struct QuadraticForm {
    Int a = 1;
    Int b = 0;
    Int c = 1;
    friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
    friend auto operator<=>(const QuadraticForm&, const QuadraticForm&) = default;
};

bool is_fundamental_discriminant(Int d);

// Imaginary quadratic field of fundamental discriminant d, with its class
// number h computed by reduced-form enumeration, the unit count w, and the
// class group realized a second time through form composition.
struct ImagQuadField {
    Int d = -3;
    Int h = 1;
    Int w = 6;
    std::vector<QuadraticForm> form_reps;
    GroupPtr class_structure;
};

ImagQuadField class_group(Int d);

QuadraticForm reduce_form(Int d, QuadraticForm f);
QuadraticForm compose_forms(Int d, const QuadraticForm& f, const QuadraticForm& g);

// Integral ideal of the maximal order in Hermite form a Z + c (b + w) Z,
// where w is the standard generator (sqrt(d)/2 or (1+sqrt(d))/2). Invariants:
// c | a, 0 <= b < a/c, and b + w satisfies the closure congruence.
struct Ideal {
    Int a = 1;
    Int b = 0;
    Int c = 1;
    Int norm() const { return a * c; }
    friend bool operator==(const Ideal&, const Ideal&) = default;
};

// All integral ideals of the given norm, deterministically ordered.
std::vector<Ideal> ideals_of_norm(const ImagQuadField& field, Int n);

// Residue ring O/m restricted to its unit group, with stable element keys.
class RayResidues {
  public:
    RayResidues(const ImagQuadField& field, const Ideal& modulus);

    const Ideal& modulus() const { return modulus_; }
    GroupPtr group() const { return group_; }

    // reduced residue of x + y w; nullopt when the element shares a prime
    // ideal with the modulus
    std::optional<ElemKey> key(Int x, Int y) const;
    std::pair<Int, Int> reduce(Int x, Int y) const;

  private:
    Int d_;
    Ideal modulus_;
    std::vector<Ideal> prime_divisors_;
    GroupPtr group_;
};

GroupPtr ray_unit_group(const ImagQuadField& field, const Ideal& modulus);

struct HeckeCharCount {
    Int d = 0;
    Int modulus_norm = 0;
    Int infinity_type = 0;
    Int count = 0;
    Int induced_level = 0;
};

// Number of ideal characters of the given modulus acting on principal ideals
// generated by ray-trivial elements as the infinity_type power; zero when a
// ray-trivial unit obstructs the definition.
HeckeCharCount hecke_char_count(const ImagQuadField& field, const Ideal& modulus,
                                Int infinity_type);

// Ray components compatible with the infinity type: characters chi of
// (O/m)^* with chi(u) u^t = 1 for every unit u.
std::vector<GroupCharacter> compatible_ray_characters(const ImagQuadField& field,
                                                      const Ideal& modulus,
                                                      Int infinity_type);

struct CmContribution {
    Int d = 0;
    Int modulus_norm = 0;
    Int count = 0;
};

struct CmCount {
    Int k = 0;
    Int level = 0;
    Int total = 0;
    std::vector<CmContribution> breakdown;
};

// Counts weight-k level-N forms induced from imaginary quadratic ideal
// characters: discriminants with |d| dividing N, moduli with |d| N(m) = N,
// infinity type k - 1.
CmCount cm_count(Int k, Int level);

// Exact element of a cyclotomic field: finite sum of rational multiples of
// roots of unity e(q), keyed by the angle q.
using CyclotomicSum = std::map<QmodZ, Rat>;

struct HeckeCharacter {
    ImagQuadField field;
    Ideal modulus;
    GroupCharacter ray;
    Int infinity_type = 1;
};

// Coefficients a_1 .. a_terms of the induced expansion: a_n sums zeta(a) over
// ideals of norm n coprime to the modulus, optionally scaled by n^(t/2).
// Restricted to class number one.
std::vector<CyclotomicSum> cm_q_expansion(const HeckeCharacter& zeta, Int terms,
                                          bool include_norm_factor = true);

}  // namespace symcensus
