#include "clab/characters.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace clab {

namespace {

void require_odd_prime(u64 p, const char* what) {
    if (!is_odd_prime(p)) {
        throw std::invalid_argument(std::string(what) + ": p=" + std::to_string(p) + " is not an odd prime");
    }
}

void require_unit(i64 a, u64 p, const char* what) {
    if (reduce(a, p) == 0) {
        throw std::invalid_argument(std::string(what) + ": " + std::to_string(a) + " is divisible by p=" +
                                    std::to_string(p));
    }
}

std::vector<int> legendre_table(u64 p) {
    std::vector<int> out(p);
    for (u64 r = 0; r < p; ++r) out[r] = legendre(static_cast<i64>(r), p);
    return out;
}

// Residue multiplicities of 1..N modulo q, restricted to units: (discrete logs, counts).
void unit_multiplicities(const CharacterGroup& group, u64 N, std::vector<std::uint32_t>& logs,
                         std::vector<double>& weights) {
    const u64 q = group.modulus().q();
    const u64 full = N / q;
    const u64 rest = N % q;
    logs.clear();
    weights.clear();
    for (u64 r = 1; r < q; ++r) {
        const i64 t = group.log(static_cast<i64>(r));
        if (t < 0) continue;
        const u64 count = full + (r <= rest ? 1 : 0);
        if (count == 0) continue;
        logs.push_back(static_cast<std::uint32_t>(t));
        weights.push_back(static_cast<double>(count));
    }
}

}  // namespace

Complex unit_root(i64 num, u64 den) {
    const u64 r = reduce(num, den);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

CharacterGroup::CharacterGroup(const PrimePower& pp)
    : pp_(pp), generator_(primitive_root(pp)), log_(pp.q(), -1), roots_(pp.phi()) {
    if (pp.q() > (u64{1} << 31)) throw std::invalid_argument("character tables limited to q < 2^31");
    u64 power = 1;
    for (u64 t = 0; t < pp.phi(); ++t) {
        log_[power] = static_cast<std::int32_t>(t);
        power = mulmod(power, generator_, pp.q());
    }
}

Complex CharacterGroup::eval(u64 index, i64 n) const noexcept {
    const i64 t = log(n);
    if (t < 0) return {0.0, 0.0};
    const auto k = static_cast<std::size_t>(mulmod(index % order(), static_cast<u64>(t), order()));
    return {roots_.re[k], roots_.im[k]};
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const CharacterGroup> group, u64 index)
    : group_(std::move(group)), index_(index) {
    if (!group_) throw std::invalid_argument("character needs a group");
    if (index_ >= group_->order()) throw std::invalid_argument("character index out of range");
}

DirichletCharacter DirichletCharacter::conj() const {
    return {group_, index_ == 0 ? 0 : group_->order() - index_};
}

Complex char_eval(const DirichletCharacter& chi, i64 n) { return chi(n); }

std::vector<DirichletCharacter> enumerate_characters(const PrimePower& pp) {
    auto group = CharacterGroup::create(pp);
    std::vector<DirichletCharacter> out;
    out.reserve(pp.phi());
    for (u64 j = 0; j < pp.phi(); ++j) out.emplace_back(group, j);
    return out;
}

Complex char_sum(const DirichletCharacter& chi, u64 N) {
    Complex total{0.0, 0.0};
    for (u64 n = 1; n <= N; ++n) total += chi(static_cast<i64>(n));
    return total;
}

Complex signed_char_sum(const DirichletCharacter& chi, u64 N) {
    return (1.0 + static_cast<double>(chi.parity())) * char_sum(chi, N);
}

namespace {

CharSumMax max_char_sum(const PrimePower& pp, u64 N, bool signed_range, const simd::KernelSet& kernels) {
    const CharacterGroup group(pp);
    std::vector<std::uint32_t> logs;
    std::vector<double> weights;
    unit_multiplicities(group, N, logs, weights);
    CharSumMax best;
    bool first = true;
    for (u64 j = 1; j < group.order(); ++j) {
        double factor = 1.0;
        if (signed_range) factor = (j % 2 == 0) ? 2.0 : 0.0;
        const double value = factor == 0.0 ? 0.0 : factor * std::abs(kernels.root_sum(logs, weights, j, group.roots()));
        if (first || value > best.max_abs) {
            best = {value, j};
            first = false;
        }
    }
    return best;
}

}  // namespace

CharSumMax max_nonprincipal_char_sum(const PrimePower& pp, u64 N, const simd::KernelSet& kernels) {
    return max_char_sum(pp, N, true, kernels);
}

CharSumMax max_nonprincipal_char_sum_one_sided(const PrimePower& pp, u64 N, const simd::KernelSet& kernels) {
    return max_char_sum(pp, N, false, kernels);
}

Complex tau_p(u64 p) {
    require_odd_prime(p, "tau_p");
    Complex total{0.0, 0.0};
    for (u64 n = 1; n <= p; ++n) {
        total += static_cast<double>(legendre(static_cast<i64>(n), p)) * unit_root(static_cast<i64>(n), p);
    }
    return total;
}

Complex tau_p_closed(u64 p) {
    require_odd_prime(p, "tau_p_closed");
    const double root = std::sqrt(static_cast<double>(p));
    return p % 4 == 1 ? Complex{root, 0.0} : Complex{0.0, root};
}

Complex gauss_sum_direct(i64 a, i64 b, u64 p) {
    require_odd_prime(p, "gauss_sum_direct");
    require_unit(a, p, "gauss_sum_direct");
    const u64 ar = reduce(a, p);
    const u64 br = reduce(b, p);
    Complex total{0.0, 0.0};
    for (u64 n = 1; n <= p; ++n) {
        const u64 phase = (mulmod(ar, mulmod(n, n, p), p) + mulmod(br, n, p)) % p;
        total += unit_root(static_cast<i64>(phase), p);
    }
    return total;
}

Complex gauss_sum_closed(i64 a, i64 b, u64 p) {
    require_odd_prime(p, "gauss_sum_closed");
    require_unit(a, p, "gauss_sum_closed");
    const u64 inv4a = *mod_inverse(static_cast<i64>(mulmod(4, reduce(a, p), p)), p);
    const u64 br = reduce(b, p);
    const u64 phase = mulmod(inv4a, mulmod(br, br, p), p);
    return unit_root(-static_cast<i64>(phase), p) * static_cast<double>(legendre(a, p)) * tau_p_closed(p);
}

Complex legendre_twisted_double_sum(i64 alpha2, i64 h1, i64 h2, u64 p) {
    require_odd_prime(p, "legendre_twisted_double_sum");
    require_unit(alpha2, p, "legendre_twisted_double_sum");
    const auto chi = legendre_table(p);
    const u64 al = reduce(alpha2, p);
    const u64 r1 = reduce(h1, p);
    const u64 r2 = reduce(h2, p);
    Complex total{0.0, 0.0};
    for (u64 a1 = 0; a1 < p; ++a1) {
        for (u64 a2 = 0; a2 < p; ++a2) {
            const int s = chi[(mulmod(a1, a1, p) + mulmod(al, mulmod(a2, a2, p), p)) % p];
            if (s == 0) continue;
            const u64 phase = (mulmod(r1, a1, p) + mulmod(r2, a2, p)) % p;
            total += static_cast<double>(s) * unit_root(static_cast<i64>(phase), p);
        }
    }
    return total;
}

Complex legendre_twisted_double_sum_closed(i64 alpha2, i64 h1, i64 h2, u64 p) {
    require_odd_prime(p, "legendre_twisted_double_sum_closed");
    require_unit(alpha2, p, "legendre_twisted_double_sum_closed");
    const u64 al = reduce(alpha2, p);
    const u64 r1 = reduce(h1, p);
    const u64 r2 = reduce(h2, p);
    const u64 value = (mulmod(al, mulmod(r1, r1, p), p) + mulmod(r2, r2, p)) % p;
    const Complex tau = tau_p_closed(p);
    return static_cast<double>(legendre(-static_cast<i64>(value), p)) * tau * tau;
}

std::vector<Complex> legendre_twisted_double_sum_table(i64 alpha2, u64 p, const simd::KernelSet& kernels) {
    require_odd_prime(p, "legendre_twisted_double_sum_table");
    require_unit(alpha2, p, "legendre_twisted_double_sum_table");
    const auto chi = legendre_table(p);
    const u64 al = reduce(alpha2, p);
    const simd::RootTable roots(p);
    std::vector<std::uint32_t> exps(p);
    for (u64 a = 0; a < p; ++a) exps[a] = static_cast<std::uint32_t>(a);

    // row[h1][a2] = sum_{a1} chi(a1^2 + alpha2 a2^2) e(h1 a1 / p)
    std::vector<Complex> row(p * p);
    std::vector<double> column(p);
    for (u64 a2 = 0; a2 < p; ++a2) {
        const u64 shift = mulmod(al, mulmod(a2, a2, p), p);
        for (u64 a1 = 0; a1 < p; ++a1) column[a1] = chi[(mulmod(a1, a1, p) + shift) % p];
        for (u64 h1 = 0; h1 < p; ++h1) row[h1 * p + a2] = kernels.root_sum(exps, column, h1, roots);
    }
    std::vector<Complex> out(p * p);
    std::vector<double> re(p);
    std::vector<double> im(p);
    for (u64 h1 = 0; h1 < p; ++h1) {
        for (u64 a2 = 0; a2 < p; ++a2) {
            re[a2] = row[h1 * p + a2].real();
            im[a2] = row[h1 * p + a2].imag();
        }
        for (u64 h2 = 0; h2 < p; ++h2) {
            const Complex from_re = kernels.root_sum(exps, re, h2, roots);
            const Complex from_im = kernels.root_sum(exps, im, h2, roots);
            out[h1 * p + h2] = from_re + Complex{0.0, 1.0} * from_im;
        }
    }
    return out;
}

CompletedFormSum completed_legendre_form_sum(i64 alpha2, double N, u64 p) {
    require_odd_prime(p, "completed_legendre_form_sum");
    require_unit(alpha2, p, "completed_legendre_form_sum");
    if (!(N >= 0.0)) throw std::invalid_argument("completed_legendre_form_sum: N must be >= 0");
    const auto box = static_cast<i64>(std::floor(N));
    const auto chi = legendre_table(p);
    const u64 al = reduce(alpha2, p);
    std::vector<u64> second(static_cast<std::size_t>(2 * box + 1));
    for (i64 x2 = -box; x2 <= box; ++x2) {
        const u64 r = reduce(x2, p);
        second[static_cast<std::size_t>(x2 + box)] = mulmod(al, mulmod(r, r, p), p);
    }
    i64 total = 0;
    for (i64 x1 = -box; x1 <= box; ++x1) {
        const u64 r = reduce(x1, p);
        const u64 first = mulmod(r, r, p);
        for (u64 s : second) total += chi[(first + s) % p];
    }
    return {total, static_cast<double>(total) / (N + static_cast<double>(p))};
}

}  // namespace clab
