#include "clab/identities.hpp"

#include <cmath>
#include <sstream>

#include "clab/characters.hpp"

namespace clab {

std::string IdentityFailure::describe() const {
    std::ostringstream os;
    os << suite << " failed at p=" << p << " a=" << a << " b=" << b;
    if (suite == "twisted") os << " h2=" << c;
    os << " error=" << error << " tolerance=" << tolerance;
    return os.str();
}

std::optional<IdentityFailure> check_gauss_sums(u64 p_max, IdentityStats* stats) {
    IdentityStats local;
    for (u64 p = 3; p <= p_max; p += 2) {
        if (!is_prime(p)) continue;
        ++local.primes;
        const double scale = std::sqrt(static_cast<double>(p));
        const double tol = 1e-9 * scale;
        for (i64 a = 1; a < static_cast<i64>(p); ++a) {
            for (i64 b = 0; b < static_cast<i64>(p); ++b) {
                const double err = std::abs(gauss_sum_direct(a, b, p) - gauss_sum_closed(a, b, p));
                ++local.cases;
                local.worst_scaled_error = std::max(local.worst_scaled_error, err / scale);
                if (!(err <= tol)) {
                    if (stats) *stats = local;
                    return IdentityFailure{"gauss", p, a, b, 0, err, tol};
                }
            }
        }
    }
    if (stats) *stats = local;
    return std::nullopt;
}

std::optional<IdentityFailure> check_tau(u64 p_max, IdentityStats* stats) {
    IdentityStats local;
    for (u64 p = 3; p <= p_max; p += 2) {
        if (!is_prime(p)) continue;
        ++local.primes;
        const auto pd = static_cast<double>(p);
        const Complex direct = tau_p(p);
        const double err = std::abs(direct - tau_p_closed(p));
        local.cases += 2;
        local.worst_scaled_error = std::max(local.worst_scaled_error, err / std::sqrt(pd));
        if (!(err <= 1e-9 * std::sqrt(pd))) {
            if (stats) *stats = local;
            return IdentityFailure{"tau", p, 0, 0, 0, err, 1e-9 * std::sqrt(pd)};
        }
        const Complex expected{static_cast<double>(legendre(-1, p)) * pd, 0.0};
        const double sq_err = std::abs(direct * direct - expected);
        local.worst_scaled_error = std::max(local.worst_scaled_error, sq_err / pd);
        if (!(sq_err <= 1e-9 * pd)) {
            if (stats) *stats = local;
            return IdentityFailure{"tau_squared", p, 0, 0, 0, sq_err, 1e-9 * pd};
        }
    }
    if (stats) *stats = local;
    return std::nullopt;
}

std::optional<IdentityFailure> check_twisted_double_sum(u64 p_max, IdentityStats* stats,
                                                        const simd::KernelSet& kernels) {
    IdentityStats local;
    for (u64 p = 3; p <= p_max; p += 2) {
        if (!is_prime(p)) continue;
        ++local.primes;
        const auto pd = static_cast<double>(p);
        const double tol = 1e-9 * pd;
        for (i64 alpha2 = 1; alpha2 < static_cast<i64>(p); ++alpha2) {
            const auto table = legendre_twisted_double_sum_table(alpha2, p, kernels);
            for (i64 h1 = 0; h1 < static_cast<i64>(p); ++h1) {
                for (i64 h2 = 0; h2 < static_cast<i64>(p); ++h2) {
                    const Complex closed = legendre_twisted_double_sum_closed(alpha2, h1, h2, p);
                    const double err = std::abs(table[static_cast<std::size_t>(h1) * p + static_cast<std::size_t>(h2)] - closed);
                    ++local.cases;
                    local.worst_scaled_error = std::max(local.worst_scaled_error, err / pd);
                    if (!(err <= tol)) {
                        if (stats) *stats = local;
                        return IdentityFailure{"twisted", p, alpha2, h1, h2, err, tol};
                    }
                }
            }
        }
    }
    if (stats) *stats = local;
    return std::nullopt;
}

}  // namespace clab
