#pragma once

#include "symcensus/local_field.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace symcensus {

/** A certified inequality failed; the census CLI maps this to its own exit code. */
struct invariant_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ParamKind { PrincipalSeries, Steinberg, Induced };

/** Local parameter of a GL(2) representation over Q_p, in one of three shapes:
 * a pair of characters (principal series), a twisted Steinberg block, or the
 * induction of a character of a quadratic extension (which must not be fixed
 * by the Galois involution, so the induction is irreducible).
 */
class Gl2Parameter {
  public:
    static Gl2Parameter principal_series(LocalCharacter mu1, LocalCharacter mu2);
    static Gl2Parameter steinberg(LocalCharacter mu);
    static Gl2Parameter induced(LocalCharacter eta);

    ParamKind kind() const { return kind_; }
    Int p() const;

    const LocalCharacter& mu1() const;
    const LocalCharacter& mu2() const;
    const LocalCharacter& twist() const;     // Steinberg
    const LocalCharacter& inducing() const;  // Induced

    Int conductor() const;
    LocalCharacter central_character() const;

    // For Induced parameters: the central character composed with the norm
    // must equal eta * eta^sigma.  Trivially true for the other kinds.
    bool central_norm_consistent() const;

  private:
    Gl2Parameter(ParamKind k, std::vector<LocalCharacter> chars);
    ParamKind kind_;
    std::vector<LocalCharacter> chars_;
};

// Induction from the quadratic extension is irreducible iff xi is moved by sigma.
bool induced_irreducible(const LocalCharacter& xi);
// Ind(xi) and Ind(zeta) are isomorphic iff zeta lies in {xi, xi^sigma}.
bool induced_isomorphic(const LocalCharacter& xi, const LocalCharacter& zeta);

struct SymSummand {
    enum class Kind { OneDim, SteinbergBlock, Induced };
    Kind kind;
    int dim;
    Int conductor;
    std::optional<LocalCharacter> base_char;  // OneDim and SteinbergBlock
    std::optional<LocalCharacter> ext_char;   // Induced
    bool steinberg_degenerate = false;        // block twisted by an unramified character
};

/** A Galois-invariant power character split into two one-dimensionals; the
 * conductor of the would-be induction must match the sum of the pieces. */
struct NormSplitCertificate {
    Int induced_formula = 0;  // disc valuation + residue degree * c(xi)
    Int split_sum = 0;        // c(phi) + c(phi * omega)
    bool holds() const { return induced_formula == split_sum; }
};

/** Even-power inductions leave one one-dimensional piece, pinned against the
 * determinant of the full symmetric power; the rejected alternative differs
 * by the quadratic character. */
struct DeterminantCertificate {
    LocalCharacter chosen;
    LocalCharacter alternative;
    bool norm_consistent = false;  // chosen o N recovers the middle power character
};

struct SymPowerData {
    int n = 1;
    Int conductor = 0;
    Int base_conductor = 0;
    Int certified_bound = 0;  // (n + 2) * c(pi)
    std::vector<SymSummand> summands;
    std::vector<NormSplitCertificate> split_checks;
    std::optional<DeterminantCertificate> det_check;

    bool within_bounds() const { return conductor >= 1 && conductor <= certified_bound; }
    int total_dim() const;
};

// Decomposition and conductor of the n-th symmetric power of pi, n >= 1.
SymPowerData sym_power(const Gl2Parameter& pi, int n);
// Same, but throws invariant_violation unless 1 <= conductor <= (n+2) c(pi).
SymPowerData sym_power_certified(const Gl2Parameter& pi, int n);

}  // namespace symcensus
