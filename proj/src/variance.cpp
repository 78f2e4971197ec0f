#include "clab/variance.hpp"

#include <cmath>
#include <stdexcept>

namespace clab {

namespace {

// Character-side substrate shared by the floating variance routes and the quadruple left side.
struct CharacterSums {
    std::vector<Complex> form;   // A_j = sum_v c_v chi_j(v)
    std::vector<Complex> third;  // B_j = sum_{|x3| <= N} conj(chi_j)^2(x3)
};

CharacterSums character_sums(const ExperimentConfig& cfg, const simd::KernelSet& kernels) {
    const CharacterGroup group(cfg.pp);
    const u64 phi = group.order();
    const auto c = form_value_histogram(cfg);

    std::vector<std::uint32_t> form_logs;
    std::vector<double> form_weights;
    for (u64 v = 0; v < c.size(); ++v) {
        const i64 t = group.log(static_cast<i64>(v));
        if (t < 0 || c[v] == 0) continue;
        form_logs.push_back(static_cast<std::uint32_t>(t));
        form_weights.push_back(static_cast<double>(c[v]));
    }

    std::vector<std::uint32_t> x3_logs;
    std::vector<double> x3_weights;
    const i64 box = cfg.box();
    for (i64 x = -box; x <= box; ++x) {
        const i64 t = group.log(x);
        if (t < 0) continue;
        x3_logs.push_back(static_cast<std::uint32_t>(t));
        x3_weights.push_back(1.0);
    }

    CharacterSums out{std::vector<Complex>(phi), std::vector<Complex>(phi)};
    for (u64 j = 0; j < phi; ++j) {
        out.form[j] = kernels.root_sum(form_logs, form_weights, j, group.roots());
        const u64 twice = (2 * j) % phi;
        out.third[j] = kernels.root_sum(x3_logs, x3_weights, (phi - twice) % phi, group.roots());
    }
    return out;
}

double relative_gap(const BigRational& exact, double other) {
    const double ref = exact.to_double();
    return std::abs(ref - other) / std::max(1.0, ref);
}

}  // namespace

std::vector<std::string> VarianceReport::diverged_routes(double tolerance) const {
    std::vector<std::string> out;
    if (!(rel_diff_split <= tolerance)) out.emplace_back("split");
    if (!(rel_diff_charsum <= tolerance)) out.emplace_back("charsum");
    return out;
}

BigRational variance_direct(const ExperimentConfig& cfg, const SweepOptions& options) {
    return variance_direct(cfg, solution_histogram(cfg, options), main_term(cfg));
}

BigRational variance_direct(const ExperimentConfig& cfg, const SolutionHistogram& histogram,
                            const MainTermReport& main) {
    const u64 q = cfg.pp.q();
    const u64 p = cfg.pp.p();
    if (histogram.counts.size() != q) throw std::invalid_argument("histogram does not match modulus");
    // (S - KL/phi)^2 = (S phi - KL)^2 / phi^2
    const BigInt phi = static_cast<unsigned long>(cfg.pp.phi());
    const BigInt kl = BigInt(static_cast<unsigned long>(main.K)) * static_cast<unsigned long>(main.L);
    BigInt numerator = 0;
    BigInt diff;
    for (u64 a = 1; a < q; ++a) {
        if (a % p == 0) continue;
        diff = BigInt(static_cast<unsigned long>(histogram.counts[a])) * phi - kl;
        numerator += diff * diff;
    }
    return {numerator, phi * phi};
}

BigRational variance_v1(const ExperimentConfig& cfg) {
    const auto c = form_value_histogram(cfg);
    const u64 p = cfg.pp.p();
    std::vector<int> chi(p);
    for (u64 r = 0; r < p; ++r) chi[r] = legendre(static_cast<i64>(r), p);
    BigInt P = 0;
    for (u64 v = 0; v < c.size(); ++v) {
        const int s = chi[v % p];
        if (s != 0) P += BigInt(s) * static_cast<unsigned long>(c[v]);
    }
    const BigInt L = static_cast<unsigned long>(coprime_count(cfg));
    return {P * P * L * L, BigInt(static_cast<unsigned long>(cfg.pp.phi()))};
}

double variance_v2(const ExperimentConfig& cfg, const simd::KernelSet& kernels) {
    const auto sums = character_sums(cfg, kernels);
    const u64 phi = cfg.pp.phi();
    double total = 0.0;
    for (u64 j = 1; j < phi; ++j) {
        if (j == phi / 2) continue;
        total += std::norm(sums.form[j]) * std::norm(sums.third[j]);
    }
    return total / static_cast<double>(phi);
}

double variance_charsum(const ExperimentConfig& cfg, const simd::KernelSet& kernels) {
    const auto sums = character_sums(cfg, kernels);
    const u64 phi = cfg.pp.phi();
    double total = 0.0;
    for (u64 j = 1; j < phi; ++j) total += std::norm(sums.form[j] * sums.third[j]);
    return total / static_cast<double>(phi);
}

VarianceReport variance_decomposition_check(const ExperimentConfig& cfg, const SweepOptions& options) {
    const simd::KernelSet& kernels = options.kernels != nullptr ? *options.kernels : simd::active_kernels();
    VarianceReport r;
    r.V_def = variance_direct(cfg, options);
    r.V1 = variance_v1(cfg);
    r.V2 = variance_v2(cfg, kernels);
    r.V_charsum = variance_charsum(cfg, kernels);
    r.rel_diff_split = relative_gap(r.V_def, r.V1.to_double() + r.V2);
    r.rel_diff_charsum = relative_gap(r.V_def, r.V_charsum);
    return r;
}

QuadrupleCount quadruple_count_identity(const ExperimentConfig& cfg) {
    const u64 q = cfg.pp.q();
    const u64 p = cfg.pp.p();
    const BigInt phi = static_cast<unsigned long>(cfg.pp.phi());

    const auto c = form_value_histogram(cfg);
    BigInt squares = 0;
    for (u64 v = 0; v < q; ++v) {
        if (v % p == 0) continue;
        squares += BigInt(static_cast<unsigned long>(c[v])) * static_cast<unsigned long>(c[v]);
    }

    // Brute force over all pairs of box points, independent of c_v.
    const i64 box = cfg.box();
    const u64 a2 = cfg.alpha2_mod_q();
    std::vector<u64> values;
    values.reserve(static_cast<std::size_t>((2 * box + 1) * (2 * box + 1)));
    for (i64 x1 = -box; x1 <= box; ++x1) {
        for (i64 x2 = -box; x2 <= box; ++x2) {
            const u64 r1 = reduce(x1, q);
            const u64 r2 = reduce(x2, q);
            values.push_back((mulmod(r1, r1, q) + mulmod(a2, mulmod(r2, r2, q), q)) % q);
        }
    }
    u64 quadruples = 0;
    for (u64 x : values) {
        if (x % p == 0) continue;
        for (u64 y : values) quadruples += (x == y) ? 1 : 0;
    }
    return {phi * squares, phi * BigInt(static_cast<unsigned long>(quadruples))};
}

double quadruple_lhs_by_characters(const ExperimentConfig& cfg, const simd::KernelSet& kernels) {
    const auto sums = character_sums(cfg, kernels);
    double total = 0.0;
    for (const auto& a : sums.form) total += std::norm(a);
    return total;
}

BoundRatioReport bound_ratio_report(const PrimePower& pp, u64 N, const ExponentPair& pair,
                                    const simd::KernelSet& kernels) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    BoundRatioReport out;
    out.q = pp.q();
    out.N = N;
    const auto signed_max = max_nonprincipal_char_sum(pp, N, kernels);
    out.empirical_max = signed_max.max_abs;
    out.argmax_index = signed_max.argmax_index;
    out.one_sided_max = max_nonprincipal_char_sum_one_sided(pp, N, kernels).max_abs;
    out.trivial_bound = 2.0 * static_cast<double>(std::min<u64>(N, pp.q()));
    out.trivial_bound_holds = out.empirical_max <= out.trivial_bound + 1e-9 * out.trivial_bound;

    const auto n = static_cast<double>(N);
    const auto q = static_cast<double>(pp.q());
    auto add = [&](std::string name, BigRational a, BigRational b) {
        const double ref = std::pow(n, a.to_double()) * std::pow(q, b.to_double());
        out.rows.push_back({std::move(name), std::move(a), std::move(b), ref, out.empirical_max / ref});
    };
    // Burgess: N^(1 - 1/r) q^((r+1)/(4 r^2)) for r = 2, 3.
    for (int r : {2, 3}) {
        add("burgess_r" + std::to_string(r), BigRational(BigInt(r - 1), BigInt(r)),
            BigRational(BigInt(r + 1), BigInt(4 * r * r)));
    }
    add("exponent_pair", pair.l - pair.k, pair.k);
    add("lindelof", BigRational(BigInt(1), BigInt(2)), BigRational(0));
    return out;
}

}  // namespace clab
