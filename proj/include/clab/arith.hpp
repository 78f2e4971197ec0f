#pragma once

// Exact integer and rational primitives shared by every other module.

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace clab {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

using BigInt = mpz_class;

/// Odd prime power modulus q = p^m with phi(q) cached.
class PrimePower {
public:
    /// Throws std::invalid_argument unless p is an odd prime, m >= 1 and p^m fits 63 bits.
    static PrimePower make(u64 p, unsigned m);

    u64 p() const noexcept { return p_; }
    unsigned m() const noexcept { return m_; }
    u64 q() const noexcept { return q_; }
    u64 phi() const noexcept { return phi_; }

    friend bool operator==(const PrimePower&, const PrimePower&) = default;

private:
    PrimePower(u64 p, unsigned m, u64 q, u64 phi) : p_(p), m_(m), q_(q), phi_(phi) {}
    u64 p_;
    unsigned m_;
    u64 q_;
    u64 phi_;
};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
class BigRational {
public:
    BigRational() = default;
    BigRational(i64 n) : v_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)
    BigRational(const BigInt& n) : v_(n) {}            // NOLINT(google-explicit-constructor)
    BigRational(const BigInt& num, const BigInt& den);
    explicit BigRational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    /// Parses "a", "a/b" or a finite decimal such as "-0.125". Throws std::invalid_argument.
    static BigRational parse(const std::string& text);

    BigInt numerator() const { return v_.get_num(); }
    BigInt denominator() const { return v_.get_den(); }
    const mpq_class& raw() const noexcept { return v_; }

    double to_double() const { return v_.get_d(); }
    int sign() const { return sgn(v_); }

    /// "num/den", denominator always present ("8/1").
    std::string fraction() const;
    /// Canonical short form: "num/den", or "num" when the denominator is 1.
    std::string str() const;

    enum class Rounding { Nearest, Floor, Ceil };
    /// Fixed-point decimal with exactly `places` digits after the point.
    std::string decimal(unsigned places, Rounding mode = Rounding::Nearest) const;

    BigRational& operator+=(const BigRational& o) { v_ += o.v_; return *this; }
    BigRational& operator-=(const BigRational& o) { v_ -= o.v_; return *this; }
    BigRational& operator*=(const BigRational& o) { v_ *= o.v_; return *this; }
    BigRational& operator/=(const BigRational& o);

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
    friend BigRational operator-(const BigRational& a) { return BigRational(mpq_class(-a.v_)); }

    friend bool operator==(const BigRational& a, const BigRational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class v_;
};

inline constexpr unsigned kInfiniteValuation = std::numeric_limits<unsigned>::max();

/// Least non-negative residue of a mod n.
constexpr u64 reduce(i64 a, u64 n) noexcept {
    const i64 r = a % static_cast<i64>(n);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(n) : r);
}

constexpr u64 mulmod(u64 a, u64 b, u64 n) noexcept {
    return static_cast<u64>(static_cast<u128>(a) * b % n);
}

u64 powmod(u64 base, u64 exp, u64 n) noexcept;

/// Deterministic for all 64-bit inputs.
bool is_prime(u64 n) noexcept;
inline bool is_odd_prime(u64 n) noexcept { return n > 2 && is_prime(n); }

/// Distinct prime divisors in increasing order.
std::vector<u64> prime_factors(u64 n);

/// Legendre symbol (a/p) by Euler's criterion. Throws std::invalid_argument for even or composite p.
int legendre(i64 a, u64 p);

/// a^{-1} mod n, or nullopt when gcd(a, n) > 1.
std::optional<u64> mod_inverse(i64 a, u64 n);

/// Smallest g >= 2 of multiplicative order phi(q) modulo q.
u64 primitive_root(const PrimePower& pp);

/// Multiplicative order of g modulo q (g must be a unit).
u64 multiplicative_order(u64 g, const PrimePower& pp);

/// Largest v with p^v | n; kInfiniteValuation for n == 0.
unsigned padic_valuation(i64 n, u64 p) noexcept;

}  // namespace clab
