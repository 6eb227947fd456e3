#include "symcensus/weil_deligne.hpp"

#include <algorithm>
#include <numeric>

namespace symcensus {

Gl2Parameter::Gl2Parameter(ParamKind k, std::vector<LocalCharacter> chars)
    : kind_(k), chars_(std::move(chars)) {}

Gl2Parameter Gl2Parameter::principal_series(LocalCharacter mu1, LocalCharacter mu2) {
    if (mu1.field().kind != FieldKind::Base || mu2.field().kind != FieldKind::Base)
        throw std::invalid_argument("principal series characters live on the base field");
    if (mu1.field().p != mu2.field().p)
        throw std::invalid_argument("principal series characters must share p");
    return Gl2Parameter(ParamKind::PrincipalSeries, {std::move(mu1), std::move(mu2)});
}

Gl2Parameter Gl2Parameter::steinberg(LocalCharacter mu) {
    if (mu.field().kind != FieldKind::Base)
        throw std::invalid_argument("the Steinberg twist lives on the base field");
    return Gl2Parameter(ParamKind::Steinberg, {std::move(mu)});
}

Gl2Parameter Gl2Parameter::induced(LocalCharacter eta) {
    if (!eta.field().is_quadratic())
        throw std::invalid_argument("induction starts from a quadratic extension");
    if (eta.galois_invariant())
        throw std::domain_error("inducing character must be moved by the Galois involution");
    return Gl2Parameter(ParamKind::Induced, {std::move(eta)});
}

Int Gl2Parameter::p() const { return chars_[0].field().p; }

const LocalCharacter& Gl2Parameter::mu1() const {
    if (kind_ != ParamKind::PrincipalSeries) throw std::logic_error("not a principal series");
    return chars_[0];
}

const LocalCharacter& Gl2Parameter::mu2() const {
    if (kind_ != ParamKind::PrincipalSeries) throw std::logic_error("not a principal series");
    return chars_[1];
}

const LocalCharacter& Gl2Parameter::twist() const {
    if (kind_ != ParamKind::Steinberg) throw std::logic_error("not a Steinberg parameter");
    return chars_[0];
}

const LocalCharacter& Gl2Parameter::inducing() const {
    if (kind_ != ParamKind::Induced) throw std::logic_error("not an induced parameter");
    return chars_[0];
}

Int Gl2Parameter::conductor() const {
    switch (kind_) {
        case ParamKind::PrincipalSeries:
            return std::max<Int>(1, chars_[0].conductor() + chars_[1].conductor());
        case ParamKind::Steinberg:
            return std::max<Int>(1, 2 * chars_[0].conductor());
        case ParamKind::Induced:
            return induced_conductor(chars_[0]);
    }
    throw std::logic_error("unreachable");
}

LocalCharacter Gl2Parameter::central_character() const {
    switch (kind_) {
        case ParamKind::PrincipalSeries:
            return chars_[0].mul(chars_[1]);
        case ParamKind::Steinberg:
            return chars_[0].pow(2);
        case ParamKind::Induced:
            return chars_[0].restrict_to_base().mul(quadratic_character(chars_[0].field()));
    }
    throw std::logic_error("unreachable");
}

bool Gl2Parameter::central_norm_consistent() const {
    if (kind_ != ParamKind::Induced) return true;
    const LocalCharacter& eta = chars_[0];
    LocalCharacter lifted = norm_compose(central_character(), eta.field());
    return lifted.same_as(eta.mul(eta.galois_conjugate()));
}

bool induced_irreducible(const LocalCharacter& xi) { return !xi.galois_invariant(); }

bool induced_isomorphic(const LocalCharacter& xi, const LocalCharacter& zeta) {
    return xi.same_as(zeta) || xi.galois_conjugate().same_as(zeta);
}

int SymPowerData::total_dim() const {
    int d = 0;
    for (const auto& s : summands) d += s.dim;
    return d;
}

namespace {

SymSummand one_dim(LocalCharacter chi) {
    SymSummand s{SymSummand::Kind::OneDim, 1, chi.conductor(), std::move(chi), std::nullopt,
                 false};
    return s;
}

void sym_principal_series(const Gl2Parameter& pi, int n, SymPowerData& out) {
    for (int i = 0; i <= n; ++i)
        out.summands.push_back(one_dim(pi.mu1().pow(i).mul(pi.mu2().pow(n - i))));
}

void sym_steinberg(const Gl2Parameter& pi, int n, SymPowerData& out) {
    LocalCharacter chi = pi.twist().pow(n);
    SymSummand s{SymSummand::Kind::SteinbergBlock, n + 1, 0, chi, std::nullopt, false};
    Int c = chi.conductor();
    if (c == 0) {
        // The block of an unramified twist drops one exponent from the
        // monodromy filtration instead of scaling with the character.
        s.conductor = n;
        s.steinberg_degenerate = true;
    } else {
        s.conductor = static_cast<Int>(n + 1) * c;
    }
    out.summands.push_back(std::move(s));
}

void sym_induced(const Gl2Parameter& pi, int n, SymPowerData& out) {
    const LocalCharacter& eta = pi.inducing();
    const LocalField& k = eta.field();
    const LocalCharacter sigma = eta.galois_conjugate();
    const LocalCharacter omega = quadratic_character(k);

    std::vector<LocalCharacter> dets;  // determinants of the induced summands
    for (int i = 0; i <= (n - 1) / 2; ++i) {
        LocalCharacter xi = eta.pow(n - i).mul(sigma.pow(i));
        dets.push_back(omega.mul(xi.restrict_to_base()));
        if (induced_irreducible(xi)) {
            out.summands.push_back(SymSummand{SymSummand::Kind::Induced, 2,
                                              induced_conductor(xi), std::nullopt, xi, false});
        } else {
            // the induction falls apart into two characters of Q_p^x
            auto [phi, phi_omega] = solve_norm_factorization(xi);
            out.split_checks.push_back(NormSplitCertificate{
                induced_conductor(xi), phi.conductor() + phi_omega.conductor()});
            out.summands.push_back(one_dim(phi));
            out.summands.push_back(one_dim(phi_omega));
        }
    }

    if (n % 2 == 0) {
        // One one-dimensional piece remains; its norm lift is the middle power
        // and the determinant of the whole symmetric power pins which of the
        // two norm preimages occurs.
        LocalCharacter chi0 = pi.central_character().pow(static_cast<Int>(n) * (n + 1) / 2);
        for (const auto& d : dets) chi0 = chi0.mul(d.inverse());
        LocalCharacter xi_mid = eta.pow(n / 2).mul(sigma.pow(n / 2));
        DeterminantCertificate cert{chi0, chi0.mul(omega),
                                    norm_compose(chi0, k).same_as(xi_mid)};
        if (!cert.norm_consistent)
            throw std::logic_error("determinant pinning lost norm consistency");
        out.det_check = std::move(cert);
        out.summands.push_back(one_dim(chi0));
    }
}

}  // namespace

SymPowerData sym_power(const Gl2Parameter& pi, int n) {
    if (n < 1) throw std::invalid_argument("symmetric power exponent must be at least 1");
    SymPowerData out;
    out.n = n;
    out.base_conductor = pi.conductor();
    out.certified_bound = static_cast<Int>(n + 2) * out.base_conductor;
    switch (pi.kind()) {
        case ParamKind::PrincipalSeries:
            sym_principal_series(pi, n, out);
            break;
        case ParamKind::Steinberg:
            sym_steinberg(pi, n, out);
            break;
        case ParamKind::Induced:
            sym_induced(pi, n, out);
            break;
    }
    out.conductor = 0;
    for (const auto& s : out.summands) out.conductor += s.conductor;
    if (out.total_dim() != n + 1)
        throw std::logic_error("symmetric power dimensions do not add up");
    for (const auto& c : out.split_checks)
        if (!c.holds()) throw std::logic_error("split induction conductor mismatch");
    return out;
}

SymPowerData sym_power_certified(const Gl2Parameter& pi, int n) {
    SymPowerData out = sym_power(pi, n);
    if (!out.within_bounds())
        throw invariant_violation("symmetric power conductor " + std::to_string(out.conductor) +
                                  " escapes [1, " + std::to_string(out.certified_bound) +
                                  "] for n = " + std::to_string(n));
    return out;
}

}  // namespace symcensus
