#pragma once

#include "symcensus/abelian.hpp"
#include "symcensus/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace symcensus {

using Factorization = std::vector<std::pair<Int, int>>;  // (prime, exponent), primes increasing

Factorization factorize(Int n);  // n >= 1
Int euler_phi(Int n);
Int moebius(Int n);  // 0 on non-squarefree
Int sigma0(Int n);
bool is_squarefree(Int n);
std::vector<Int> divisors(Int n);  // increasing
Int psi_index(Int n);              // n * prod_{p|n} (1 + 1/p)

Int powmod(Int a, Int e, Int m);
Int mod_inverse(Int a, Int m);       // throws when gcd(a, m) > 1
bool is_prime(Int n);
Int legendre_symbol(Int a, Int p);   // odd prime p
Int kronecker_symbol(Int a, Int n);  // full Kronecker extension
Int smallest_quadratic_nonresidue(Int p);

// Unit group (Z/n)^* with dlog on residues; results are cached per modulus.
GroupPtr unit_group(Int n);

/** Character of (Z/N)^*, additively valued in Q/Z on coprime residues.
 *
 * Non-coprime arguments have no value (the multiplicative convention would
 * assign 0); eval reports them as nullopt.
 */
class DirichletCharacter {
  public:
    DirichletCharacter(Int modulus, GroupCharacter chi);

    static DirichletCharacter trivial(Int modulus);

    Int modulus() const { return modulus_; }
    const GroupCharacter& character() const { return chi_; }

    std::optional<QmodZ> eval(Int a) const;
    bool is_even() const;  // vanishes at -1
    Int order() const { return chi_.order(); }
    bool is_trivial() const { return chi_.is_trivial(); }

    // Smallest f | N such that the character factors through (Z/f)^*.
    Int conductor() const;
    bool is_primitive() const { return conductor() == modulus_; }

    DirichletCharacter mul(const DirichletCharacter& other) const;
    DirichletCharacter pow(Int k) const;

    bool operator==(const DirichletCharacter& o) const {
        return modulus_ == o.modulus_ && chi_ == o.chi_;
    }

  private:
    Int modulus_;
    GroupCharacter chi_;
};

std::vector<DirichletCharacter> enumerate_dirichlet_characters(Int modulus);
Int count_even_characters(Int modulus);

}  // namespace symcensus
