#include "symcensus/dirichlet.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace symcensus {

Factorization factorize(Int n) {
    if (n < 1) throw std::domain_error("factorize: argument must be positive");
    Factorization out;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) ++e, n /= p;
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

Int euler_phi(Int n) {
    Int out = n;
    for (const auto& [p, e] : factorize(n)) out = out / p * (p - 1);
    return out;
}

Int moebius(Int n) {
    Int out = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1) return 0;
        out = -out;
    }
    return out;
}

Int sigma0(Int n) {
    Int out = 1;
    for (const auto& [p, e] : factorize(n)) out *= e + 1;
    return out;
}

bool is_squarefree(Int n) { return moebius(n) != 0; }

std::vector<Int> divisors(Int n) {
    std::vector<Int> out{1};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t base = out.size();
        Int q = 1;
        for (int i = 1; i <= e; ++i) {
            q *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * q);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Int psi_index(Int n) {
    Int out = n;
    for (const auto& [p, e] : factorize(n)) out = out / p * (p + 1);
    return out;
}

Int powmod(Int a, Int e, Int m) {
    if (m <= 0) throw std::domain_error("powmod: modulus must be positive");
    if (e < 0) throw std::domain_error("powmod: negative exponent");
    a %= m;
    if (a < 0) a += m;
    Int out = 1 % m;
    while (e > 0) {
        if (e & 1) out = checked_mul(out, a) % m;
        a = checked_mul(a, a) % m;
        e >>= 1;
    }
    return out;
}

Int mod_inverse(Int a, Int m) {
    if (m <= 0) throw std::domain_error("mod_inverse: modulus must be positive");
    Int r0 = m, r1 = ((a % m) + m) % m, s0 = 0, s1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw std::domain_error("mod_inverse: argument is not invertible");
    return ((s0 % m) + m) % m;
}

bool is_prime(Int n) {
    if (n < 2) return false;
    for (Int p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

Int legendre_symbol(Int a, Int p) {
    if (p < 3 || p % 2 == 0) throw std::domain_error("legendre_symbol: p must be an odd prime");
    Int r = powmod(a, (p - 1) / 2, p);
    if (r == p - 1) return -1;
    if (r > 1) throw std::domain_error("legendre_symbol: modulus is not prime");
    return r;
}

Int kronecker_symbol(Int a, Int n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (a % 2 == 0 && n % 2 == 0) return 0;
    Int k = 1;
    int v = 0;
    while (n % 2 == 0) n /= 2, ++v;
    if (v % 2 == 1) {
        Int r = ((a % 8) + 8) % 8;  // (a|2) via a mod 8
        if (r == 3 || r == 5) k = -1;
    }
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    while (true) {
        a = ((a % n) + n) % n;
        if (a == 0) return n == 1 ? k : 0;
        v = 0;
        while (a % 2 == 0) a /= 2, ++v;
        if (v % 2 == 1 && (n % 8 == 3 || n % 8 == 5)) k = -k;
        if (a % 4 == 3 && n % 4 == 3) k = -k;  // reciprocity flip
        std::swap(a, n);
    }
}

Int smallest_quadratic_nonresidue(Int p) {
    for (Int a = 2; a < p; ++a)
        if (legendre_symbol(a, p) == -1) return a;
    throw std::domain_error("no quadratic nonresidue below p");
}

GroupPtr unit_group(Int n) {
    if (n < 1) throw std::domain_error("unit_group: modulus must be positive");
    static std::map<Int, GroupPtr> cache;
    static std::mutex cache_mutex;
    {
        std::lock_guard lock(cache_mutex);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    std::vector<ElemKey> elems;
    if (n == 1) {
        elems.push_back(0);
    } else {
        for (Int a = 1; a < n; ++a)
            if (std::gcd(a, n) == 1) elems.push_back(static_cast<ElemKey>(a));
    }
    auto mul = [n](ElemKey a, ElemKey b) {
        return n == 1 ? ElemKey{0} : static_cast<ElemKey>((a * b) % static_cast<ElemKey>(n));
    };
    GroupPtr g = group_from_multiplication(elems, mul);
    std::lock_guard lock(cache_mutex);
    return cache.emplace(n, std::move(g)).first->second;
}

DirichletCharacter::DirichletCharacter(Int modulus, GroupCharacter chi)
    : modulus_(modulus), chi_(std::move(chi)) {
    if (chi_.group() != unit_group(modulus))
        throw std::invalid_argument("character does not live on (Z/N)^*");
}

DirichletCharacter DirichletCharacter::trivial(Int modulus) {
    return DirichletCharacter(modulus, GroupCharacter::trivial(unit_group(modulus)));
}

std::optional<QmodZ> DirichletCharacter::eval(Int a) const {
    if (modulus_ == 1) return QmodZ::zero();
    a %= modulus_;
    if (a < 0) a += modulus_;
    if (std::gcd(a, modulus_) != 1) return std::nullopt;
    return chi_.eval(static_cast<ElemKey>(a));
}

bool DirichletCharacter::is_even() const {
    auto v = eval(-1);
    return v && v->is_zero();
}

Int DirichletCharacter::conductor() const {
    for (Int f : divisors(modulus_)) {
        bool trivial_on_kernel = true;
        for (Int a = 1 + f; a < modulus_ && trivial_on_kernel; a += f)
            if (std::gcd(a, modulus_) == 1 && !chi_.eval(static_cast<ElemKey>(a)).is_zero())
                trivial_on_kernel = false;
        if (trivial_on_kernel) return f;
    }
    return modulus_;  // unreachable: f = N always passes
}

DirichletCharacter DirichletCharacter::mul(const DirichletCharacter& other) const {
    if (modulus_ != other.modulus_)
        throw std::invalid_argument("characters have different moduli");
    return DirichletCharacter(modulus_, chi_.mul(other.chi_));
}

DirichletCharacter DirichletCharacter::pow(Int k) const {
    return DirichletCharacter(modulus_, chi_.pow(k));
}

std::vector<DirichletCharacter> enumerate_dirichlet_characters(Int modulus) {
    std::vector<DirichletCharacter> out;
    for (auto& chi : enumerate_characters(unit_group(modulus)))
        out.emplace_back(modulus, std::move(chi));
    return out;
}

Int count_even_characters(Int modulus) {
    Int count = 0;
    for (const auto& chi : enumerate_dirichlet_characters(modulus))
        if (chi.is_even()) ++count;
    return count;
}

}  // namespace symcensus
