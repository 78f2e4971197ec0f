#include "clab/arith.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace clab {

PrimePower PrimePower::make(u64 p, unsigned m) {
    if (!is_odd_prime(p)) {
        throw std::invalid_argument("modulus base p=" + std::to_string(p) + " is not an odd prime");
    }
    if (m < 1) throw std::invalid_argument("exponent m must be >= 1");
    u64 q = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (q > (std::numeric_limits<u64>::max() >> 1) / p) {
            throw std::invalid_argument("p^m does not fit in 63 bits");
        }
        q *= p;
    }
    return PrimePower(p, m, q, q / p * (p - 1));
}

BigRational::BigRational(const BigInt& num, const BigInt& den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    v_.canonicalize();
}

BigRational& BigRational::operator/=(const BigRational& o) {
    if (o.v_ == 0) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

BigRational BigRational::parse(const std::string& text) {
    auto fail = [&] { throw std::invalid_argument("not a rational number: '" + text + "'"); };
    if (text.empty()) fail();
    const auto slash = text.find('/');
    const auto dot = text.find('.');
    auto digits_ok = [](const std::string& s, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i >= s.size()) return false;
        return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                           [](unsigned char c) { return std::isdigit(c) != 0; });
    };
    auto to_int = [](std::string s) {
        if (!s.empty() && s[0] == '+') s.erase(0, 1);
        return BigInt(s, 10);
    };
    if (slash != std::string::npos) {
        const auto a = text.substr(0, slash);
        const auto b = text.substr(slash + 1);
        if (!digits_ok(a, true) || !digits_ok(b, false)) fail();
        const BigInt den = to_int(b);
        if (den == 0) fail();
        return BigRational(to_int(a), den);
    }
    if (dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        const std::string frac = text.substr(dot + 1);
        bool neg = false;
        if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
            neg = whole[0] == '-';
            whole.erase(0, 1);
        }
        if (whole.empty()) whole = "0";
        if (!digits_ok(whole, false) || (!frac.empty() && !digits_ok(frac, false))) fail();
        BigInt scale = 1;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        BigInt num = BigInt(whole, 10) * scale + (frac.empty() ? BigInt(0) : BigInt(frac, 10));
        if (neg) num = -num;
        return BigRational(num, scale);
    }
    if (!digits_ok(text, true)) fail();
    return BigRational(to_int(text));
}

std::string BigRational::fraction() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string BigRational::str() const { return v_.get_str(); }

std::string BigRational::decimal(unsigned places, Rounding mode) const {
    BigInt scale = 1;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    const BigInt num = v_.get_num() * scale;
    const BigInt& den = v_.get_den();
    BigInt scaled;
    switch (mode) {
        case Rounding::Floor: mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t()); break;
        case Rounding::Ceil: mpz_cdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t()); break;
        case Rounding::Nearest: {
            // floor((2*num + den) / (2*den)): ties round up
            const BigInt twice = 2 * num + den;
            const BigInt d2 = 2 * den;
            mpz_fdiv_q(scaled.get_mpz_t(), twice.get_mpz_t(), d2.get_mpz_t());
            break;
        }
    }
    const bool neg = scaled < 0;
    std::string digits = BigInt(abs(scaled)).get_str();
    if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
    std::string out = neg ? "-" : "";
    out += digits.substr(0, digits.size() - places);
    if (places > 0) out += "." + digits.substr(digits.size() - places);
    return out;
}

u64 powmod(u64 base, u64 exp, u64 n) noexcept {
    if (n == 1) return 0;
    u64 result = 1;
    base %= n;
    while (exp > 0) {
        if (exp & 1U) result = mulmod(result, base, n);
        base = mulmod(base, base, n);
        exp >>= 1U;
    }
    return result;
}

bool is_prime(u64 n) noexcept {
    if (n < 2) return false;
    for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0) return n == small;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    // These witnesses are deterministic for every n < 2^64.
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

int legendre(i64 a, u64 p) {
    if (!is_odd_prime(p)) {
        throw std::invalid_argument("legendre: p=" + std::to_string(p) + " is not an odd prime");
    }
    const u64 r = reduce(a, p);
    if (r == 0) return 0;
    return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::optional<u64> mod_inverse(i64 a, u64 n) {
    if (n < 2) return std::nullopt;
    i64 old_r = static_cast<i64>(reduce(a, n));
    i64 r = static_cast<i64>(n);
    i64 old_s = 1;
    i64 s = 0;
    while (r != 0) {
        const i64 quot = old_r / r;
        old_r -= quot * r;
        std::swap(old_r, r);
        old_s -= quot * s;
        std::swap(old_s, s);
    }
    if (old_r != 1) return std::nullopt;
    return reduce(old_s, n);
}

u64 multiplicative_order(u64 g, const PrimePower& pp) {
    const u64 q = pp.q();
    u64 order = pp.phi();
    std::vector<u64> primes = prime_factors(pp.p() - 1);
    if (pp.m() > 1) primes.push_back(pp.p());
    for (u64 ell : primes) {
        while (order % ell == 0 && powmod(g, order / ell, q) == 1) order /= ell;
    }
    return order;
}

u64 primitive_root(const PrimePower& pp) {
    const u64 q = pp.q();
    for (u64 g = 2; g < q; ++g) {
        if (g % pp.p() == 0) continue;
        if (multiplicative_order(g, pp) == pp.phi()) return g;
    }
    // q = 3: 2 is found above; unreachable for odd prime powers.
    throw std::logic_error("no primitive root found");
}

unsigned padic_valuation(i64 n, u64 p) noexcept {
    if (n == 0) return kInfiniteValuation;
    u64 mag = n < 0 ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
    unsigned v = 0;
    while (mag % p == 0) {
        mag /= p;
        ++v;
    }
    return v;
}

}  // namespace clab
