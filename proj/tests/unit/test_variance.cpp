#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

#include "clab/variance.hpp"

using namespace clab;

namespace {

ExperimentConfig cfg(u64 p, unsigned m, i64 alpha2, double N) {
    return ExperimentConfig::make(PrimePower::make(p, m), alpha2, N);
}

// V_def from the literal triple loop: sum over coprime alpha3 of (S - K L / phi)^2.
BigRational brute_variance(u64 p, unsigned m, i64 alpha2, i64 N) {
    const auto q = static_cast<i64>(std::pow(p, m));
    const auto pi = static_cast<i64>(p);
    const auto phi = static_cast<i64>(q - q / pi);
    const BigRational M(BigInt(static_cast<long>(oracle::coprime_pairs(pi, alpha2, N) * oracle::coprime_x3(pi, N))),
                        BigInt(static_cast<long>(phi)));
    BigRational v(0);
    for (i64 a3 = 1; a3 < q; ++a3) {
        if (a3 % pi == 0) continue;
        const BigRational d = BigRational(static_cast<i64>(oracle::count(q, pi, alpha2, a3, N))) - M;
        v += d * d;
    }
    return v;
}

// phi * #{(x, y) in box^2 x box^2 : Q(x) == Q(y) mod q, p does not divide Q(x)}.
BigInt brute_quadruple(u64 p, unsigned m, i64 alpha2, i64 N) {
    const auto q = static_cast<i64>(std::pow(p, m));
    const auto pi = static_cast<i64>(p);
    std::vector<i64> values;
    for (i64 x1 = -N; x1 <= N; ++x1)
        for (i64 x2 = -N; x2 <= N; ++x2) values.push_back(oracle::mod(x1 * x1 + alpha2 * x2 * x2, q));
    long count = 0;
    for (const i64 a : values)
        for (const i64 b : values) count += (a == b && a % pi != 0);
    return BigInt(count) * BigInt(static_cast<long>(q - q / pi));
}

}  // namespace

TEST_CASE("variance_direct examples and brute-force oracle") {
    CHECK(variance_direct(cfg(3, 1, 1, 0.5)) == BigRational(0));
    CHECK(variance_direct(cfg(3, 1, 1, 1)) == BigRational(0));
    CHECK(variance_direct(cfg(3, 2, 1, 2)) == brute_variance(3, 2, 1, 2));
    CHECK(variance_direct(cfg(3, 2, 1, 2)) == BigRational(256));
    for (const auto& [p, m, a2, N] : {std::tuple<u64, unsigned, i64, i64>{5, 1, 2, 3}, {7, 1, 3, 4}, {5, 2, 1, 5}, {3, 3, 2, 4}}) {
        CHECK(variance_direct(cfg(p, m, a2, static_cast<double>(N))) == brute_variance(p, m, a2, N));
    }
}

TEST_CASE("variance_v1 examples") {
    CHECK(variance_v1(cfg(5, 1, 1, 0)) == BigRational(0));
    CHECK(variance_v1(cfg(3, 1, 1, 1)) == BigRational(0));
    const auto c = cfg(5, 2, 1, 3);
    const auto P = completed_legendre_form_sum(1, 3, 5).sum;
    const auto L = static_cast<i64>(main_term(c).L);
    CHECK(variance_v1(c) == BigRational(BigInt(static_cast<long>(P * P * L * L)), BigInt(20)));
}

TEST_CASE("variance_v2 is empty for q = 3 and non-negative") {
    CHECK(variance_v2(cfg(3, 1, 1, 5)) == 0.0);
    CHECK(variance_v2(cfg(7, 2, 3, 5)) >= 0.0);
}

TEST_CASE("three-route decomposition on the documented cases") {
    for (const auto& [p, m, a2, N] : {std::tuple<u64, unsigned, i64, double>{3, 2, 1, 2}, {7, 2, 3, 5}, {3, 3, 2, 4}, {11, 2, 1, 5}}) {
        const auto r = variance_decomposition_check(cfg(p, m, a2, N));
        CHECK_MESSAGE(r.passed(), "q=", p, "^", m, " split=", r.rel_diff_split, " charsum=", r.rel_diff_charsum);
        CHECK(r.diverged_routes().empty());
        CHECK(r.V_def == variance_direct(cfg(p, m, a2, N)));
    }
}

TEST_CASE("diverged_routes names the failing routes") {
    VarianceReport r;
    r.rel_diff_split = 1.0;
    CHECK(r.diverged_routes() == std::vector<std::string>{"split"});
    r.rel_diff_charsum = 1.0;
    CHECK(r.diverged_routes() == std::vector<std::string>{"split", "charsum"});
    CHECK_FALSE(r.passed());
}

TEST_CASE("kernel sets agree on the floating routes") {
    const auto c = cfg(5, 3, 2, 8);
    const double v2 = variance_v2(c, simd::scalar_kernels());
    const double cs = variance_charsum(c, simd::scalar_kernels());
    for (const auto* k : simd::available_kernels()) {
        CHECK(variance_v2(c, *k) == doctest::Approx(v2).epsilon(1e-12));
        CHECK(variance_charsum(c, *k) == doctest::Approx(cs).epsilon(1e-12));
    }
}

TEST_CASE("V_def invariant under alpha2 -> alpha2 + q") {
    CHECK(variance_direct(cfg(5, 2, 3, 6)) == variance_direct(cfg(5, 2, 28, 6)));
}

TEST_CASE("quadruple-count identity") {
    const auto z = quadruple_count_identity(cfg(7, 1, 1, 0.3));
    CHECK(z.lhs == 0);
    CHECK(z.rhs == 0);
    for (const auto& [p, m, a2, N] : {std::tuple<u64, unsigned, i64, i64>{3, 2, 1, 2}, {7, 2, 5, 6}, {7, 1, 5, 6}, {5, 3, 2, 7}}) {
        const auto c = cfg(p, m, a2, static_cast<double>(N));
        const auto r = quadruple_count_identity(c);
        CHECK(r.lhs == r.rhs);
        CHECK(r.lhs == brute_quadruple(p, m, a2, N));
        const double chars = quadruple_lhs_by_characters(c);
        CHECK(chars == doctest::Approx(r.lhs.get_d()).epsilon(1e-6));
    }
}

TEST_CASE("bound ratio report") {
    const ExponentPair pair{BigRational(BigInt(1), BigInt(9)), BigRational(BigInt(13), BigInt(18)), {}};
    const auto r9 = bound_ratio_report(PrimePower::make(3, 2), 9, pair);
    CHECK(r9.empirical_max < 1e-9);
    CHECK(r9.trivial_bound_holds);
    for (const auto& row : r9.rows) CHECK(std::isfinite(row.ratio));

    const auto r = bound_ratio_report(PrimePower::make(3, 7), 100, pair);
    REQUIRE(r.rows.size() == 4);
    CHECK(r.rows[0].name == "burgess_r2");
    CHECK(r.rows[1].name == "burgess_r3");
    CHECK(r.rows[2].name == "exponent_pair");
    CHECK(r.rows[3].name == "lindelof");
    CHECK(r.rows[2].n_exponent == BigRational(BigInt(11), BigInt(18)));
    CHECK(r.rows[2].q_exponent == BigRational(BigInt(1), BigInt(9)));
    CHECK(r.rows[2].reference == doctest::Approx(std::pow(100.0, 11.0 / 18.0) * std::pow(2187.0, 1.0 / 9.0)));
    CHECK(r.rows[3].reference == doctest::Approx(10.0));
    for (const auto& row : r.rows) CHECK(row.ratio == doctest::Approx(r.empirical_max / row.reference));
    CHECK(r.trivial_bound_holds);
    CHECK(r.empirical_max <= 201.0);
    const auto brute = max_nonprincipal_char_sum(PrimePower::make(3, 7), 100, simd::scalar_kernels());
    CHECK(r.empirical_max == doctest::Approx(brute.max_abs));

    const auto full = bound_ratio_report(PrimePower::make(5, 2), 25, pair);
    CHECK(full.empirical_max < 1e-9);
    CHECK(full.trivial_bound_holds);
}
