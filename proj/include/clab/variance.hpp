#pragma once

// The variance of S(alpha3) about the main term over coprime alpha3, by three
// independent routes, and the quadruple-count identity behind its bound.

#include <string>
#include <vector>

#include "clab/arith.hpp"
#include "clab/characters.hpp"
#include "clab/congruence.hpp"
#include "clab/exppair.hpp"
#include "clab/kernels.hpp"

namespace clab {

/// Relative tolerance for agreement between the exact and floating routes.
inline constexpr double kVarianceTolerance = 1e-6;

struct VarianceReport {
    BigRational V_def;
    BigRational V1;
    double V2 = 0.0;
    double V_charsum = 0.0;
    double rel_diff_split = 0.0;    // |V_def - (V1 + V2)| / max(1, V_def)
    double rel_diff_charsum = 0.0;  // |V_def - V_charsum| / max(1, V_def)

    bool passed(double tolerance = kVarianceTolerance) const noexcept {
        return rel_diff_split <= tolerance && rel_diff_charsum <= tolerance;
    }
    /// Names of the routes that disagree with V_def ("split", "charsum"); empty when all agree.
    std::vector<std::string> diverged_routes(double tolerance = kVarianceTolerance) const;
};

/// sum over coprime alpha3 of (S(alpha3) - K L / phi(q))^2, exactly.
BigRational variance_direct(const ExperimentConfig& cfg, const SweepOptions& options = {});
BigRational variance_direct(const ExperimentConfig& cfg, const SolutionHistogram& histogram,
                            const MainTermReport& main);

/// Quadratic-character part: (1/phi) (sum_{box} ((x1^2 + alpha2 x2^2)/p))^2 L^2.
BigRational variance_v1(const ExperimentConfig& cfg);

/// (1/phi) sum_{chi^2 != chi0} |sum chi(x1^2 + alpha2 x2^2)|^2 |sum_{|x3| <= N} conj(chi)^2(x3)|^2.
double variance_v2(const ExperimentConfig& cfg, const simd::KernelSet& kernels = simd::active_kernels());

/// (1/phi) sum_{chi != chi0} |sum chi(x1^2 + alpha2 x2^2) * sum conj(chi)^2(x3)|^2.
double variance_charsum(const ExperimentConfig& cfg, const simd::KernelSet& kernels = simd::active_kernels());

VarianceReport variance_decomposition_check(const ExperimentConfig& cfg, const SweepOptions& options = {});

struct QuadrupleCount {
    BigInt lhs;  // phi(q) * sum_{v coprime} c_v^2
    BigInt rhs;  // phi(q) * #{x, y in box^2 : Q(x) == Q(y) (mod q), both coprime to q}
};

QuadrupleCount quadruple_count_identity(const ExperimentConfig& cfg);

/// sum over all chi of |sum chi(x1^2 + alpha2 x2^2)|^2 by direct complex evaluation.
double quadruple_lhs_by_characters(const ExperimentConfig& cfg,
                                   const simd::KernelSet& kernels = simd::active_kernels());

struct BoundRow {
    std::string name;
    BigRational n_exponent;
    BigRational q_exponent;
    double reference = 0.0;  // N^a q^b
    double ratio = 0.0;      // empirical_max / reference
};

struct BoundRatioReport {
    u64 q = 0;
    u64 N = 0;
    double empirical_max = 0.0;   // max over chi != chi0 of |sum_{|x| <= N} chi(x)|
    u64 argmax_index = 0;
    double one_sided_max = 0.0;   // max over chi != chi0 of |sum_{0 < n <= N} chi(n)|
    double trivial_bound = 0.0;   // 2 min(N, q)
    bool trivial_bound_holds = false;
    std::vector<BoundRow> rows;   // Burgess r = 2, 3; exponent pair; Lindelof
};

BoundRatioReport bound_ratio_report(const PrimePower& pp, u64 N, const ExponentPair& pair,
                                    const simd::KernelSet& kernels = simd::active_kernels());

}  // namespace clab
