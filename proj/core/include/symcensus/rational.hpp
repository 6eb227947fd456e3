#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace symcensus {

using Int = std::int64_t;
using Rat = boost::rational<Int>;

inline Int checked_mul(Int a, Int b) {
    Int out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer product overflow");
    return out;
}

inline Int pow_int(Int base, Int exp) {
    if (exp < 0) throw std::domain_error("pow_int: negative exponent");
    Int r = 1;
    while (exp-- > 0) r = checked_mul(r, base);
    return r;
}

/** Residue class a + Z represented by the reduced fraction in [0, 1).
 *
 * This is the value group for all characters in the library: characters are
 * written additively, so the trivial value is 0 and inversion is negation.
 */
class QmodZ {
  public:
    QmodZ() : num_(0), den_(1) {}

    QmodZ(Int num, Int den) {
        if (den == 0) throw std::domain_error("QmodZ: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        num %= den;
        if (num < 0) num += den;
        const Int g = std::gcd(num, den);
        num_ = num / g;
        den_ = den / g;
    }

    static QmodZ zero() { return QmodZ(); }
    static QmodZ half() { return QmodZ(1, 2); }

    Int num() const { return num_; }
    Int den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    // Additive order: the least n >= 1 with n*x == 0.
    Int order() const { return den_; }

    QmodZ operator+(const QmodZ& o) const {
        const Int d = std::lcm(den_, o.den_);
        return QmodZ(checked_mul(num_, d / den_) + checked_mul(o.num_, d / o.den_), d);
    }
    QmodZ operator-() const { return QmodZ(-num_, den_); }
    QmodZ operator-(const QmodZ& o) const { return *this + (-o); }
    QmodZ operator*(Int k) const { return QmodZ(checked_mul(num_, ((k % den_) + den_) % den_), den_); }

    bool operator==(const QmodZ& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const QmodZ& o) const { return !(*this == o); }
    bool operator<(const QmodZ& o) const {
        return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
    }

    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  private:
    Int num_;
    Int den_;
};

inline QmodZ operator*(Int k, const QmodZ& x) { return x * k; }

inline QmodZ parse_qmodz(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return QmodZ(std::stoll(s), 1);
    return QmodZ(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

}  // namespace symcensus

template <>
struct std::hash<symcensus::QmodZ> {
    std::size_t operator()(const symcensus::QmodZ& q) const noexcept {
        return std::hash<symcensus::Int>()(q.num()) * 1000003u ^ std::hash<symcensus::Int>()(q.den());
    }
};
