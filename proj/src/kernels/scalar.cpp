#include <cmath>
#include <numbers>

#include "clab/kernels.hpp"

namespace clab::simd {

RootTable::RootTable(std::uint64_t n) : order(n), re(n), im(n) {
    for (std::uint64_t t = 0; t < n; ++t) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n);
        re[t] = std::cos(angle);
        im[t] = std::sin(angle);
    }
}

namespace detail {

void accumulate_gather_scalar(std::span<std::uint64_t> out, std::span<const std::uint32_t> table,
                              std::uint64_t step, std::uint64_t weight) {
    const std::uint64_t n = out.size();
    if (n == 0) return;
    step %= n;
    std::uint64_t idx = 0;
    for (std::uint64_t a = 0; a < n; ++a) {
        out[a] += weight * table[idx];
        idx += step;
        if (idx >= n) idx -= n;
    }
}

void form_targets_scalar(std::span<std::uint32_t> out, std::span<const std::uint32_t> row,
                         std::uint32_t shift, std::uint32_t mult, std::uint32_t n) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        std::uint64_t s = std::uint64_t{shift} + row[i];
        if (s >= n) s -= n;
        out[i] = static_cast<std::uint32_t>(s * mult % n);
    }
}

std::complex<double> root_sum_scalar(std::span<const std::uint32_t> exps, std::span<const double> weights,
                                     std::uint64_t mult, const RootTable& roots) {
    const std::uint64_t order = roots.order;
    mult %= order;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        const auto t = static_cast<std::size_t>(static_cast<unsigned __int128>(mult) * exps[i] % order);
        re += weights[i] * roots.re[t];
        im += weights[i] * roots.im[t];
    }
    return {re, im};
}

}  // namespace detail

}  // namespace clab::simd
