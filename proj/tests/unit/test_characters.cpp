#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"

#include "clab/characters.hpp"

using namespace clab;

namespace {

bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("char_eval examples") {
    const auto chars = enumerate_characters(PrimePower::make(3, 2));
    CHECK(chars.size() == 6);
    CHECK(enumerate_characters(PrimePower::make(5, 1)).size() == 4);
    CHECK(near(char_eval(chars[0], 4), 1.0, 1e-15));
    for (const auto& chi : chars) CHECK(std::abs(char_eval(chi, 6)) == 0.0);
    CHECK(chars[0].is_principal());
    CHECK(chars[3].is_quadratic());
}

TEST_CASE("character values match power enumeration and the Legendre symbol") {
    for (u64 p : {3, 5, 7, 11}) {
        for (unsigned m = 1; m <= 3; ++m) {
            const auto pp = PrimePower::make(p, m);
            if (pp.q() > 1400) continue;
            const auto q = static_cast<i64>(pp.q());
            const auto group = CharacterGroup::create(pp);
            const oracle::CharTable table(q, static_cast<i64>(group->generator()));
            REQUIRE(table.phi == static_cast<i64>(pp.phi()));
            for (u64 j = 0; j < pp.phi(); j += (pp.phi() > 50 ? 7 : 1)) {
                const DirichletCharacter chi(group, j);
                for (i64 n = -q; n < 2 * q; ++n) {
                    const Complex v = chi(n);
                    CHECK(near(v, table.value(static_cast<i64>(j), n), 1e-12));
                    const double mag = std::abs(v);
                    CHECK((std::abs(mag - 1.0) < 1e-12 || mag == 0.0));
                }
            }
            const DirichletCharacter quad(group, group->quadratic_index());
            for (i64 n = 0; n < q; ++n) CHECK(near(quad(n), oracle::legendre(n, static_cast<i64>(p)), 1e-12));
        }
    }
}

TEST_CASE("orthogonality over characters for q <= 343") {
    for (const auto& [p, m] : {std::pair<u64, unsigned>{3, 2}, {5, 2}, {7, 1}, {7, 3}, {3, 5}}) {
        const auto pp = PrimePower::make(p, m);
        const auto chars = enumerate_characters(pp);
        const auto q = static_cast<i64>(pp.q());
        for (i64 u = 1; u < q; u += 3) {
            if (u % static_cast<i64>(p) == 0) continue;
            for (i64 v = 1; v < q; v += 5) {
                if (v % static_cast<i64>(p) == 0) continue;
                Complex s = 0;
                for (const auto& chi : chars) s += chi(u) * std::conj(chi(v));
                const double expect = (u == v) ? static_cast<double>(pp.phi()) : 0.0;
                CHECK(near(s, expect, 1e-8));
            }
        }
    }
}

TEST_CASE("complete multiplicativity, exhaustive for q <= 121") {
    for (const auto& [p, m] : {std::pair<u64, unsigned>{3, 2}, {5, 2}, {7, 2}, {11, 2}, {3, 4}}) {
        const auto pp = PrimePower::make(p, m);
        const auto group = CharacterGroup::create(pp);
        const auto q = static_cast<i64>(pp.q());
        for (u64 j = 1; j < pp.phi(); j += 4) {
            const DirichletCharacter chi(group, j);
            for (i64 a = 0; a < q; ++a)
                for (i64 b = 0; b < q; ++b) CHECK(near(chi(a * b), chi(a) * chi(b), 1e-12));
        }
    }
}

TEST_CASE("parity and conjugation") {
    const auto group = CharacterGroup::create(PrimePower::make(5, 2));
    for (u64 j = 0; j < group->order(); ++j) {
        const DirichletCharacter chi(group, j);
        CHECK(near(chi(-1), static_cast<double>(chi.parity()), 1e-12));
        const auto c = chi.conj();
        for (i64 n = 0; n < 25; ++n) CHECK(near(c(n), std::conj(chi(n)), 1e-12));
    }
}

TEST_CASE("char_sum examples") {
    const auto pp = PrimePower::make(3, 2);
    const auto chars = enumerate_characters(pp);
    CHECK(near(char_sum(chars[0], 9), 6.0, 1e-12));
    for (std::size_t j = 1; j < chars.size(); ++j) CHECK(near(char_sum(chars[j], 9), 0.0, 1e-12));
    CHECK(near(char_sum(chars[3], 4), 1.0, 1e-12));
    for (const auto& chi : chars) {
        for (u64 N = 0; N < 20; ++N) {
            Complex s = 0;
            for (i64 x = -static_cast<i64>(N); x <= static_cast<i64>(N); ++x) s += chi(x);
            CHECK(near(signed_char_sum(chi, N), s, 1e-12));
        }
    }
}

TEST_CASE("max_nonprincipal_char_sum against direct summation over characters") {
    const auto brute = [](const PrimePower& pp, u64 N, bool signed_range) {
        const auto chars = enumerate_characters(pp);
        CharSumMax best;
        for (std::size_t j = 1; j < chars.size(); ++j) {
            const double v = std::abs(signed_range ? signed_char_sum(chars[j], N) : char_sum(chars[j], N));
            if (v > best.max_abs + 1e-9) best = {v, j};
        }
        return best;
    };
    CHECK(max_nonprincipal_char_sum(PrimePower::make(3, 2), 9).max_abs < 1e-9);
    CHECK(max_nonprincipal_char_sum(PrimePower::make(5, 2), 25).max_abs < 1e-9);
    for (const auto& kernels : simd::available_kernels()) {
        for (const auto& [p, m, N] : {std::tuple<u64, unsigned, u64>{7, 2, 10}, {3, 2, 4}, {5, 3, 17}, {11, 1, 3}}) {
            const auto pp = PrimePower::make(p, m);
            const auto got = max_nonprincipal_char_sum(pp, N, *kernels);
            const auto want = brute(pp, N, true);
            CHECK(std::abs(got.max_abs - want.max_abs) < 1e-9);
            const auto got1 = max_nonprincipal_char_sum_one_sided(pp, N, *kernels);
            CHECK(std::abs(got1.max_abs - brute(pp, N, false).max_abs) < 1e-9);
        }
    }
}

TEST_CASE("tau_p values") {
    CHECK(near(tau_p(5), std::sqrt(5.0), 1e-12));
    CHECK(near(tau_p(7), Complex(0, std::sqrt(7.0)), 1e-12));
    CHECK(near(tau_p(3), Complex(0, std::sqrt(3.0)), 1e-12));
    for (u64 p = 3; p < 200; p += 2) {
        if (!oracle::is_prime(p)) continue;
        const auto t = tau_p(p);
        CHECK(near(t, tau_p_closed(p), 1e-9 * std::sqrt(p)));
        CHECK(near(t * t, static_cast<double>(p % 4 == 1 ? 1 : -1) * static_cast<double>(p), 1e-9 * p));
    }
}

TEST_CASE("Gauss sums: examples and literal-summation oracle") {
    CHECK(near(gauss_sum_direct(1, 0, 5), std::sqrt(5.0), 1e-12));
    CHECK(near(gauss_sum_direct(1, 0, 7), Complex(0, std::sqrt(7.0)), 1e-12));
    const Complex expect = oracle::e(-2.0 / 7.0) * Complex(0, std::sqrt(7.0));
    CHECK(near(gauss_sum_direct(2, 3, 7), expect, 1e-12));
    CHECK(near(gauss_sum_closed(2, 3, 7), expect, 1e-12));
    CHECK(near(gauss_sum_closed(1, 0, 5), std::sqrt(5.0), 1e-12));
    CHECK(near(gauss_sum_closed(3, 0, 5), -std::sqrt(5.0), 1e-12));
    CHECK_THROWS_AS(gauss_sum_direct(7, 1, 7), std::invalid_argument);
    CHECK_THROWS_AS(gauss_sum_closed(0, 1, 7), std::invalid_argument);
    for (u64 p : {3, 5, 11, 13, 43}) {
        const auto pi = static_cast<i64>(p);
        for (i64 a = 1; a < pi; ++a)
            for (i64 b = -1; b <= pi; ++b) {
                const auto o = oracle::gauss(a, b, pi);
                CHECK(near(gauss_sum_direct(a, b, p), o, 1e-9 * std::sqrt(p)));
                CHECK(near(gauss_sum_closed(a, b, p), o, 1e-9 * std::sqrt(p)));
            }
    }
}

TEST_CASE("twisted Legendre double sum") {
    for (u64 p = 3; p <= 31; p += 2) {
        if (oracle::is_prime(p)) CHECK(near(legendre_twisted_double_sum(1, 0, 0, p), 0.0, 1e-9 * p));
    }
    CHECK(near(legendre_twisted_double_sum(1, 1, 0, 3), 3.0, 1e-12));
    CHECK(near(legendre_twisted_double_sum_closed(1, 1, 0, 3), 3.0, 1e-12));
    const Complex t7 = tau_p_closed(7);
    CHECK(near(legendre_twisted_double_sum(2, 1, 1, 7), static_cast<double>(oracle::legendre(-3, 7)) * t7 * t7, 1e-9));

    // Literal four-fold oracle for the row-separable table, every kernel set.
    for (const auto* kernels : simd::available_kernels()) {
        for (u64 p : {3, 5, 7, 13}) {
            const auto pi = static_cast<i64>(p);
            for (i64 alpha2 = 1; alpha2 < pi; ++alpha2) {
                const auto table = legendre_twisted_double_sum_table(alpha2, p, *kernels);
                REQUIRE(table.size() == p * p);
                for (i64 h1 = 0; h1 < pi; ++h1)
                    for (i64 h2 = 0; h2 < pi; ++h2) {
                        Complex s = 0;
                        for (i64 a1 = 0; a1 < pi; ++a1)
                            for (i64 a2 = 0; a2 < pi; ++a2)
                                s += static_cast<double>(oracle::legendre(a1 * a1 + alpha2 * a2 * a2, pi)) *
                                     oracle::e(static_cast<double>(oracle::mod(h1 * a1 + h2 * a2, pi)) / static_cast<double>(p));
                        CHECK(near(table[static_cast<std::size_t>(h1 * pi + h2)], s, 1e-9 * p));
                        CHECK(near(legendre_twisted_double_sum(alpha2, h1, h2, p), s, 1e-9 * p));
                    }
            }
        }
    }
}

TEST_CASE("completed Legendre form sum") {
    CHECK(completed_legendre_form_sum(1, 0, 3).sum == 0);
    CHECK(completed_legendre_form_sum(1, 1, 3).sum == 0);
    const auto r = completed_legendre_form_sum(1, 10, 7);
    i64 other = 0;  // x2-outer loop order
    for (i64 x2 = -10; x2 <= 10; ++x2)
        for (i64 x1 = -10; x1 <= 10; ++x1) other += oracle::legendre(x1 * x1 + x2 * x2, 7);
    CHECK(r.sum == other);
    CHECK(r.ratio_to_bound == doctest::Approx(static_cast<double>(other) / 17.0));
    CHECK(completed_legendre_form_sum(3, 10.9, 7).sum == completed_legendre_form_sum(3, 10, 7).sum);
}

TEST_CASE("unit_root reduces exactly") {
    CHECK(near(unit_root(1, 4), Complex(0, 1), 1e-15));
    CHECK(near(unit_root(-1, 4), Complex(0, -1), 1e-15));
    CHECK(near(unit_root(1000000000007LL, 1000000000007ULL), 1.0, 1e-15));
}
