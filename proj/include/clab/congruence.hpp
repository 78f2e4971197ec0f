#pragma once

// Counting small solutions of x1^2 + alpha2 x2^2 + alpha3 x3^2 == 0 (mod q)
// in the box |x_i| <= N with gcd(x3, q) = 1, and the main term that
// predicts those counts.

#include <cstdint>
#include <vector>

#include "clab/arith.hpp"
#include "clab/kernels.hpp"

namespace clab {

struct ExperimentConfig {
    /// Throws std::invalid_argument when gcd(alpha2, q) > 1 or N < 0.
    static ExperimentConfig make(const PrimePower& pp, i64 alpha2, double N, double epsilon = 0.0);

    PrimePower pp;
    i64 alpha2;
    double N;
    double epsilon;

    /// floor(N): the integer box half-width.
    i64 box() const noexcept;
    u64 alpha2_mod_q() const noexcept { return reduce(alpha2, pp.q()); }
    /// q^(11/24 + epsilon) <= 2N <= q^(7/12).
    bool in_admissible_window() const noexcept;
};

struct SolutionHistogram {
    /// counts[alpha3] = S(alpha3) for alpha3 in [0, q).
    std::vector<u64> counts;

    u64 total() const noexcept;
};

enum class HistogramRoute {
    Auto,         // whichever of the two below is cheaper for the config
    Sweep,        // one pass over all (x1, x2, x3): O(N^3)
    Convolution,  // form-value histogram, then one gather pass per distinct x3^2: O(N^2 + q N)
};

struct SweepOptions {
    unsigned threads = 0;  // 0: hardware concurrency
    HistogramRoute route = HistogramRoute::Auto;
    const simd::KernelSet* kernels = nullptr;  // nullptr: simd::active_kernels()
};

unsigned resolve_threads(unsigned requested) noexcept;

/// #{(x1,x2,x3) : |x_i| <= floor(N), gcd(x3,q) = 1, x1^2 + alpha2 x2^2 + alpha3 x3^2 == 0 (mod q)}
/// by direct triple enumeration. Any alpha3 is accepted.
u64 count_solutions(const ExperimentConfig& cfg, i64 alpha3);

/// S(alpha3) for every residue alpha3 mod q in a single sweep.
SolutionHistogram solution_histogram(const ExperimentConfig& cfg, const SweepOptions& options = {});

/// c[v] = #{(x1, x2) in the box : x1^2 + alpha2 x2^2 == v (mod q)}.
std::vector<std::uint32_t> form_value_histogram(const ExperimentConfig& cfg);

/// #{|x3| <= floor(N) : gcd(x3, p) = 1}.
u64 coprime_count(const ExperimentConfig& cfg) noexcept;

struct MainTermReport {
    u64 K = 0;
    u64 L = 0;
    BigRational M;  // K L / phi(q)
    double K_hat = 0.0;
    double L_hat = 0.0;
    BigRational C_q;
    double predicted = 0.0;  // C_q N^3 / q
};

MainTermReport main_term(const ExperimentConfig& cfg);

/// 8 (1 - 1/p) (1 - (-alpha2/p)/p).
BigRational main_term_constant(const PrimePower& pp, i64 alpha2);

struct ExceptionalReport {
    std::vector<u64> indices;  // coprime alpha3 with |S/predicted - 1| > delta
    u64 coprime_total = 0;     // phi(q)
    double fraction = 0.0;
    double min_rel_error = 0.0;
    double max_rel_error = 0.0;
    double mean_rel_error = 0.0;
    double predicted = 0.0;
};

ExceptionalReport exceptional_set(const ExperimentConfig& cfg, double delta, const SweepOptions& options = {});
ExceptionalReport exceptional_set(const ExperimentConfig& cfg, double delta, const SolutionHistogram& histogram);

enum class ThresholdMode { Unconditional, FixedPrime, Lindelof };

/// Unconditional: 11/24. FixedPrime: 11/25. Lindelof: 1/3.
BigRational threshold_exponent(ThresholdMode mode);

struct NWindow {
    double N_min = 0.0;
    double N_max = 0.0;
};

/// (q^(e + epsilon) / 2, q^(7/12) / 2). Throws std::domain_error when the window is empty.
NWindow n_threshold(const PrimePower& pp, double epsilon, ThresholdMode mode);

/// Smallest m >= 0 with p^m >= N^gamma, decided in exact integer arithmetic.
unsigned padic_modulus_exponent(u64 p, const BigRational& gamma, u64 N);

/// #{(x1,x2,x3) : |x_i| <= N, gcd(x3,p) = 1, |x1^2 + alpha2 x2^2 + alpha3 x3^2|_p <= N^-gamma},
/// reduced to a congruence count modulo p^m. Throws std::invalid_argument when p | alpha2 alpha3.
u64 padic_small_value_count(u64 p, const BigRational& gamma, u64 N, i64 alpha2, i64 alpha3);

}  // namespace clab
