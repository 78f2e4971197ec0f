#pragma once

// Exhaustive identity suites over ranges of primes: each compares a direct
// summation against a closed form.

#include <cstdint>
#include <optional>
#include <string>

#include "clab/arith.hpp"
#include "clab/kernels.hpp"

namespace clab {

struct IdentityFailure {
    std::string suite;
    u64 p = 0;
    i64 a = 0;
    i64 b = 0;
    i64 c = 0;
    double error = 0.0;
    double tolerance = 0.0;

    std::string describe() const;
};

struct IdentityStats {
    u64 primes = 0;
    u64 cases = 0;
    double worst_scaled_error = 0.0;  // max error / natural magnitude
};

/// |G_direct(a,b;p) - G_closed(a,b;p)| <= 1e-9 sqrt(p) for a in [1,p-1], b in [0,p-1].
std::optional<IdentityFailure> check_gauss_sums(u64 p_max, IdentityStats* stats = nullptr);

/// tau_p by summation vs sqrt(p) / i sqrt(p), and tau_p^2 = (-1/p) p, both to 1e-9 of the magnitude.
std::optional<IdentityFailure> check_tau(u64 p_max, IdentityStats* stats = nullptr);

/// Twisted Legendre double sum vs (-(alpha2 h1^2 + h2^2)/p) tau_p^2 to 1e-9 p, all alpha2, h1, h2.
std::optional<IdentityFailure> check_twisted_double_sum(u64 p_max, IdentityStats* stats = nullptr,
                                                        const simd::KernelSet& kernels = simd::active_kernels());

}  // namespace clab
