#include "clab/congruence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include "parallel.hpp"

namespace clab {

namespace {

i64 floor_div(i64 a, i64 b) noexcept {
    i64 d = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
    return d;
}

// #{x in [-box, box] : x == r (mod p)}
u64 count_in_class(i64 box, u64 r, u64 p) noexcept {
    const auto pp = static_cast<i64>(p);
    const auto rr = static_cast<i64>(r);
    return static_cast<u64>(floor_div(box - rr, pp) - floor_div(-box - 1 - rr, pp));
}

// x^2 mod q for x in [-box, box], indexed by x + box.
std::vector<std::uint32_t> squares(i64 box, u64 q, u64 scale) {
    std::vector<std::uint32_t> out(static_cast<std::size_t>(2 * box + 1));
    for (i64 x = -box; x <= box; ++x) {
        const u64 r = reduce(x, q);
        out[static_cast<std::size_t>(x + box)] = static_cast<std::uint32_t>(mulmod(scale, mulmod(r, r, q), q));
    }
    return out;
}

void require_histogram_modulus(const ExperimentConfig& cfg) {
    if (cfg.pp.q() >= (u64{1} << 31)) throw std::invalid_argument("histograms need q < 2^31");
}

void merge_into(std::vector<u64>& dst, const std::vector<std::vector<u64>>& parts) {
    for (const auto& part : parts) {
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += part[i];
    }
}

std::vector<i64> coprime_x3(const ExperimentConfig& cfg) {
    std::vector<i64> out;
    const i64 box = cfg.box();
    const auto p = static_cast<i64>(cfg.pp.p());
    for (i64 x = -box; x <= box; ++x) {
        if (x % p != 0) out.push_back(x);
    }
    return out;
}

SolutionHistogram sweep_histogram(const ExperimentConfig& cfg, unsigned threads, const simd::KernelSet& kernels) {
    const u64 q = cfg.pp.q();
    const i64 box = cfg.box();
    const auto x3s = coprime_x3(cfg);
    const auto first = squares(box, q, 1);
    const auto second = squares(box, q, cfg.alpha2_mod_q());

    std::vector<std::vector<u64>> parts(resolve_threads(threads));
    detail::run_partitioned(x3s.size(), static_cast<unsigned>(parts.size()), [&](unsigned t, std::size_t lo, std::size_t hi) {
        std::vector<u64> local(q, 0);
        std::vector<std::uint32_t> targets(second.size());
        for (std::size_t i = lo; i < hi; ++i) {
            const u64 r = reduce(x3s[i], q);
            const u64 inv = *mod_inverse(static_cast<i64>(mulmod(r, r, q)), q);
            const auto mult = static_cast<std::uint32_t>((q - inv) % q);
            for (std::uint32_t shift : first) {
                kernels.form_targets(targets, second, shift, mult, static_cast<std::uint32_t>(q));
                for (std::uint32_t a : targets) ++local[a];
            }
        }
        parts[t] = std::move(local);
    });
    SolutionHistogram out{std::vector<u64>(q, 0)};
    for (auto& part : parts) {
        if (part.empty()) part.assign(q, 0);
    }
    merge_into(out.counts, parts);
    return out;
}

// (-x3^2 mod q) -> number of admissible x3 with that value; ordered for reproducible merges.
std::map<u64, u64> square_classes(const ExperimentConfig& cfg) {
    const u64 q = cfg.pp.q();
    std::map<u64, u64> classes;
    for (i64 x : coprime_x3(cfg)) {
        const u64 r = reduce(x, q);
        ++classes[(q - mulmod(r, r, q)) % q];
    }
    return classes;
}

SolutionHistogram convolution_histogram(const ExperimentConfig& cfg, unsigned threads,
                                        const simd::KernelSet& kernels) {
    const u64 q = cfg.pp.q();
    const auto table = form_value_histogram(cfg);
    const auto classes = square_classes(cfg);
    const std::vector<std::pair<u64, u64>> steps(classes.begin(), classes.end());

    std::vector<std::vector<u64>> parts(resolve_threads(threads));
    detail::run_partitioned(steps.size(), static_cast<unsigned>(parts.size()), [&](unsigned t, std::size_t lo, std::size_t hi) {
        std::vector<u64> local(q, 0);
        for (std::size_t i = lo; i < hi; ++i) kernels.accumulate_gather(local, table, steps[i].first, steps[i].second);
        parts[t] = std::move(local);
    });
    SolutionHistogram out{std::vector<u64>(q, 0)};
    for (auto& part : parts) {
        if (part.empty()) part.assign(q, 0);
    }
    merge_into(out.counts, parts);
    return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::make(const PrimePower& pp, i64 alpha2, double N, double epsilon) {
    if (reduce(alpha2, pp.p()) == 0) {
        throw std::invalid_argument("alpha2=" + std::to_string(alpha2) + " is not coprime to q=" +
                                    std::to_string(pp.q()));
    }
    if (!(N >= 0.0) || !std::isfinite(N)) throw std::invalid_argument("N must be a finite real >= 0");
    if (N >= 1e9) throw std::invalid_argument("N too large for desk-scale enumeration");
    return ExperimentConfig{pp, alpha2, N, epsilon};
}

i64 ExperimentConfig::box() const noexcept { return static_cast<i64>(std::floor(N)); }

bool ExperimentConfig::in_admissible_window() const noexcept {
    const auto q = static_cast<double>(pp.q());
    const double twice = 2.0 * N;
    return std::pow(q, 11.0 / 24.0 + epsilon) <= twice && twice <= std::pow(q, 7.0 / 12.0);
}

u64 SolutionHistogram::total() const noexcept {
    u64 sum = 0;
    for (u64 c : counts) sum += c;
    return sum;
}

unsigned resolve_threads(unsigned requested) noexcept {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

u64 count_solutions(const ExperimentConfig& cfg, i64 alpha3) {
    const u64 q = cfg.pp.q();
    const i64 box = cfg.box();
    const auto first = squares(box, q, 1);
    const auto second = squares(box, q, cfg.alpha2_mod_q());
    const u64 a3 = reduce(alpha3, q);
    u64 count = 0;
    for (i64 x3 : coprime_x3(cfg)) {
        const u64 r = reduce(x3, q);
        const u64 third = mulmod(a3, mulmod(r, r, q), q);
        for (std::uint32_t s1 : first) {
            const u64 partial = (s1 + third) % q;
            const u64 need = (q - partial) % q;
            for (std::uint32_t s2 : second) count += (s2 == need) ? 1 : 0;
        }
    }
    return count;
}

std::vector<std::uint32_t> form_value_histogram(const ExperimentConfig& cfg) {
    require_histogram_modulus(cfg);
    const u64 q = cfg.pp.q();
    const i64 box = cfg.box();
    const u64 side = static_cast<u64>(2 * box + 1);
    if (side * side >= (u64{1} << 32)) throw std::invalid_argument("box too large for 32-bit form counts");
    const auto first = squares(box, q, 1);
    const auto second = squares(box, q, cfg.alpha2_mod_q());
    std::vector<std::uint32_t> c(q, 0);
    for (std::uint32_t s1 : first) {
        for (std::uint32_t s2 : second) {
            u64 v = u64{s1} + s2;
            if (v >= q) v -= q;
            ++c[v];
        }
    }
    return c;
}

u64 coprime_count(const ExperimentConfig& cfg) noexcept {
    const i64 box = cfg.box();
    const auto p = static_cast<i64>(cfg.pp.p());
    u64 count = 0;
    for (i64 x = -box; x <= box; ++x) count += (x % p != 0) ? 1 : 0;
    return count;
}

SolutionHistogram solution_histogram(const ExperimentConfig& cfg, const SweepOptions& options) {
    require_histogram_modulus(cfg);
    const simd::KernelSet& kernels = options.kernels != nullptr ? *options.kernels : simd::active_kernels();
    HistogramRoute route = options.route;
    if (cfg.box() == 0) return SolutionHistogram{std::vector<u64>(cfg.pp.q(), 0)};
    if (route == HistogramRoute::Auto) {
        const auto side = static_cast<double>(2 * cfg.box() + 1);
        const double sweep_cost = side * side * static_cast<double>(coprime_count(cfg));
        const double classes = static_cast<double>(std::min<u64>(coprime_count(cfg), cfg.pp.q()));
        const double conv_cost = side * side + classes / 2.0 * static_cast<double>(cfg.pp.q());
        route = (conv_cost < sweep_cost && side * side < 4.0e9) ? HistogramRoute::Convolution : HistogramRoute::Sweep;
    }
    if (route == HistogramRoute::Convolution) return convolution_histogram(cfg, options.threads, kernels);
    return sweep_histogram(cfg, options.threads, kernels);
}

BigRational main_term_constant(const PrimePower& pp, i64 alpha2) {
    const auto p = static_cast<i64>(pp.p());
    const i64 chi = legendre(-alpha2, pp.p());
    return BigRational(BigInt(8 * (p - 1) * (p - chi)), BigInt(p * p));
}

MainTermReport main_term(const ExperimentConfig& cfg) {
    const u64 p = cfg.pp.p();
    const i64 box = cfg.box();
    const u64 side = static_cast<u64>(2 * box + 1);

    // K: subtract pairs with p | x1^2 + alpha2 x2^2, counted by residue class mod p.
    const u64 a2 = reduce(cfg.alpha2, p);
    std::vector<u64> cnt(p);
    for (u64 r = 0; r < p; ++r) cnt[r] = count_in_class(box, r, p);
    u64 bad = cnt[0] * cnt[0];
    if (legendre(-cfg.alpha2, p) == 1) {
        // s^2 == -alpha2^{-1} (mod p); for r1 != 0 the bad r2 are +-r1*s.
        const u64 target = (p - *mod_inverse(static_cast<i64>(a2), p)) % p;
        u64 s = 1;
        while (mulmod(s, s, p) != target) ++s;
        for (u64 r1 = 1; r1 < p; ++r1) {
            const u64 root = mulmod(r1, s, p);
            bad += cnt[r1] * (cnt[root] + cnt[p - root]);
        }
    }

    MainTermReport out;
    out.K = side * side - bad;
    out.L = coprime_count(cfg);
    out.M = BigRational(BigInt(static_cast<unsigned long>(out.K)) * static_cast<unsigned long>(out.L),
                        BigInt(static_cast<unsigned long>(cfg.pp.phi())));
    const double inv_p = 1.0 / static_cast<double>(p);
    const auto chi = static_cast<double>(legendre(-cfg.alpha2, p));
    out.K_hat = 4.0 * cfg.N * cfg.N * (1.0 - inv_p) * (1.0 - chi * inv_p);
    out.L_hat = 2.0 * (1.0 - inv_p) * cfg.N;
    out.C_q = main_term_constant(cfg.pp, cfg.alpha2);
    out.predicted = out.C_q.to_double() * cfg.N * cfg.N * cfg.N / static_cast<double>(cfg.pp.q());
    return out;
}

ExceptionalReport exceptional_set(const ExperimentConfig& cfg, double delta, const SweepOptions& options) {
    return exceptional_set(cfg, delta, solution_histogram(cfg, options));
}

ExceptionalReport exceptional_set(const ExperimentConfig& cfg, double delta, const SolutionHistogram& histogram) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    const u64 q = cfg.pp.q();
    const u64 p = cfg.pp.p();
    if (histogram.counts.size() != q) throw std::invalid_argument("histogram does not match modulus");
    ExceptionalReport out;
    out.predicted = main_term_constant(cfg.pp, cfg.alpha2).to_double() * cfg.N * cfg.N * cfg.N /
                    static_cast<double>(q);
    out.coprime_total = cfg.pp.phi();
    double sum = 0.0;
    bool first = true;
    for (u64 a = 1; a < q; ++a) {
        if (a % p == 0) continue;
        const double rel =
            out.predicted > 0.0 ? std::abs(static_cast<double>(histogram.counts[a]) / out.predicted - 1.0) : 0.0;
        sum += rel;
        if (first || rel < out.min_rel_error) out.min_rel_error = rel;
        if (first || rel > out.max_rel_error) out.max_rel_error = rel;
        first = false;
        if (rel > delta) out.indices.push_back(a);
    }
    out.mean_rel_error = sum / static_cast<double>(out.coprime_total);
    out.fraction = static_cast<double>(out.indices.size()) / static_cast<double>(out.coprime_total);
    return out;
}

BigRational threshold_exponent(ThresholdMode mode) {
    switch (mode) {
        case ThresholdMode::Unconditional: return {BigInt(11), BigInt(24)};
        case ThresholdMode::FixedPrime: return {BigInt(11), BigInt(25)};
        case ThresholdMode::Lindelof: return {BigInt(1), BigInt(3)};
    }
    throw std::invalid_argument("unknown threshold mode");
}

NWindow n_threshold(const PrimePower& pp, double epsilon, ThresholdMode mode) {
    if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
    const auto q = static_cast<double>(pp.q());
    const NWindow w{std::pow(q, threshold_exponent(mode).to_double() + epsilon) / 2.0,
                    std::pow(q, 7.0 / 12.0) / 2.0};
    if (w.N_min > w.N_max) {
        throw std::domain_error("empty N window for q=" + std::to_string(pp.q()) +
                                " at epsilon=" + std::to_string(epsilon));
    }
    return w;
}

unsigned padic_modulus_exponent(u64 p, const BigRational& gamma, u64 N) {
    if (gamma.sign() <= 0) throw std::invalid_argument("gamma must be positive");
    // p^m >= N^(a/b)  <=>  p^(m b) >= N^a
    const BigInt a = gamma.numerator();
    const BigInt b = gamma.denominator();
    if (!a.fits_ulong_p() || !b.fits_ulong_p()) throw std::invalid_argument("gamma has too many digits");
    BigInt target;
    mpz_ui_pow_ui(target.get_mpz_t(), N, a.get_ui());
    BigInt step;
    mpz_ui_pow_ui(step.get_mpz_t(), p, b.get_ui());
    BigInt acc = 1;
    unsigned m = 0;
    while (acc < target) {
        acc *= step;
        ++m;
    }
    return m;
}

u64 padic_small_value_count(u64 p, const BigRational& gamma, u64 N, i64 alpha2, i64 alpha3) {
    if (!is_odd_prime(p)) throw std::invalid_argument("p=" + std::to_string(p) + " is not an odd prime");
    if (reduce(alpha2, p) == 0 || reduce(alpha3, p) == 0) {
        throw std::invalid_argument("alpha2 * alpha3 must be coprime to p");
    }
    const unsigned m = padic_modulus_exponent(p, gamma, N);
    if (m == 0) {
        // N^gamma <= 1: every triple qualifies.
        const auto side = 2 * N + 1;
        const u64 coprime = 2 * (N - N / p);
        return side * side * coprime;
    }
    const auto cfg = ExperimentConfig::make(PrimePower::make(p, m), alpha2, static_cast<double>(N));
    return count_solutions(cfg, alpha3);
}

}  // namespace clab
