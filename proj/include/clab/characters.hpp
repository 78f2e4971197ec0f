#pragma once

// Dirichlet characters modulo an odd prime power, character sums, and
// quadratic Gauss sums evaluated both by direct summation and in closed form.

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "clab/arith.hpp"
#include "clab/kernels.hpp"

namespace clab {

using Complex = std::complex<double>;

/// e(num/den) = exp(2*pi*i*num/den), with num reduced exactly before the float step.
Complex unit_root(i64 num, u64 den);

/// (Z/qZ)* with a fixed primitive root g and a discrete-log table over all residues.
///
/// chi_j(g^t) = e(j*t/phi(q)); chi_j(n) = 0 when p | n.
class CharacterGroup {
public:
    explicit CharacterGroup(const PrimePower& pp);

    static std::shared_ptr<const CharacterGroup> create(const PrimePower& pp) {
        return std::make_shared<const CharacterGroup>(pp);
    }

    const PrimePower& modulus() const noexcept { return pp_; }
    u64 generator() const noexcept { return generator_; }
    u64 order() const noexcept { return pp_.phi(); }
    u64 quadratic_index() const noexcept { return pp_.phi() / 2; }

    /// t with g^t == n (mod q), or -1 when gcd(n, q) > 1.
    i64 log(i64 n) const noexcept {
        return log_[static_cast<std::size_t>(reduce(n, pp_.q()))];
    }

    /// Value of chi_index at n.
    Complex eval(u64 index, i64 n) const noexcept;

    const simd::RootTable& roots() const noexcept { return roots_; }

private:
    PrimePower pp_;
    u64 generator_;
    std::vector<std::int32_t> log_;
    simd::RootTable roots_;
};

class DirichletCharacter {
public:
    DirichletCharacter(std::shared_ptr<const CharacterGroup> group, u64 index);

    const PrimePower& modulus() const noexcept { return group_->modulus(); }
    u64 index() const noexcept { return index_; }
    u64 generator() const noexcept { return group_->generator(); }
    const CharacterGroup& group() const noexcept { return *group_; }

    bool is_principal() const noexcept { return index_ == 0; }
    bool is_quadratic() const noexcept { return index_ == group_->quadratic_index(); }
    /// chi(-1) = (-1)^index since log(-1) = phi/2.
    int parity() const noexcept { return (index_ % 2 == 0) ? 1 : -1; }

    DirichletCharacter conj() const;

    Complex operator()(i64 n) const noexcept { return group_->eval(index_, n); }

private:
    std::shared_ptr<const CharacterGroup> group_;
    u64 index_;
};

Complex char_eval(const DirichletCharacter& chi, i64 n);

/// All phi(q) characters in index order; index 0 is principal.
std::vector<DirichletCharacter> enumerate_characters(const PrimePower& pp);

/// sum_{0 < n <= N} chi(n), evaluated term by term.
Complex char_sum(const DirichletCharacter& chi, u64 N);

/// sum_{|x| <= N} chi(x) = (1 + chi(-1)) * sum_{0 < x <= N} chi(x).
Complex signed_char_sum(const DirichletCharacter& chi, u64 N);

struct CharSumMax {
    double max_abs = 0.0;
    u64 argmax_index = 0;
};

/// max over non-principal chi mod q of |sum_{|x| <= N} chi(x)|, with the smallest maximizing index.
CharSumMax max_nonprincipal_char_sum(const PrimePower& pp, u64 N,
                                     const simd::KernelSet& kernels = simd::active_kernels());

/// Same maximum for the one-sided sums sum_{0 < n <= N} chi(n).
CharSumMax max_nonprincipal_char_sum_one_sided(const PrimePower& pp, u64 N,
                                               const simd::KernelSet& kernels = simd::active_kernels());

/// sum_{n=1}^p (n/p) e(n/p) by direct summation.
Complex tau_p(u64 p);

/// sqrt(p) for p = 1 mod 4, i*sqrt(p) for p = 3 mod 4.
Complex tau_p_closed(u64 p);

/// G(a,b;p) = sum_{n=1}^p e((a n^2 + b n)/p). Throws std::invalid_argument when p | a.
Complex gauss_sum_direct(i64 a, i64 b, u64 p);

/// e(-(4a)^{-1} b^2 / p) * (a/p) * tau_p. Throws std::invalid_argument when p | a.
Complex gauss_sum_closed(i64 a, i64 b, u64 p);

/// sum_{a1,a2 mod p} ((a1^2 + alpha2 a2^2)/p) e((h1 a1 + h2 a2)/p), plain double loop.
Complex legendre_twisted_double_sum(i64 alpha2, i64 h1, i64 h2, u64 p);

/// (-(alpha2 h1^2 + h2^2)/p) * tau_p^2.
Complex legendre_twisted_double_sum_closed(i64 alpha2, i64 h1, i64 h2, u64 p);

/// The twisted double sum for every (h1, h2) mod p, row-major in h1, evaluated as two passes
/// of one-dimensional sums (same terms as the double loop, O(p^3) instead of O(p^4)).
std::vector<Complex> legendre_twisted_double_sum_table(i64 alpha2, u64 p,
                                                       const simd::KernelSet& kernels = simd::active_kernels());

struct CompletedFormSum {
    i64 sum = 0;
    double ratio_to_bound = 0.0;  // sum / (N + p), reported only
};

/// sum_{|x1|,|x2| <= floor(N)} ((x1^2 + alpha2 x2^2)/p).
CompletedFormSum completed_legendre_form_sum(i64 alpha2, double N, u64 p);

}  // namespace clab
