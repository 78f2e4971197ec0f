#include <cmath>
#include <cstdlib>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "clab/kernels.hpp"

using namespace clab::simd;

namespace {

// Sizes straddle the 4- and 8-lane boundaries so every tail path runs.
constexpr std::uint64_t kSizes[] = {1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 97, 1000, 4099, 65521};

std::vector<std::uint64_t> gather_naive(const std::vector<std::uint32_t>& table, std::uint64_t step,
                                        std::uint64_t weight, std::vector<std::uint64_t> out) {
    const std::uint64_t n = table.size();
    for (std::uint64_t a = 0; a < n; ++a) {
        out[a] += weight * table[static_cast<std::size_t>(static_cast<unsigned __int128>(a) * step % n)];
    }
    return out;
}

}  // namespace

TEST_CASE("scalar kernels match the naive definitions") {
    std::mt19937_64 rng(1);
    const auto& k = scalar_kernels();
    CHECK(k.isa == Isa::Scalar);
    for (const std::uint64_t n : kSizes) {
        std::vector<std::uint32_t> table(n);
        for (auto& t : table) t = static_cast<std::uint32_t>(rng() % 1000);
        std::vector<std::uint64_t> out(n, 3);
        const std::uint64_t step = rng() % (3 * n + 1);
        const auto expect = gather_naive(table, step, 5, out);
        k.accumulate_gather(out, table, step, 5);
        CHECK(out == expect);

        std::vector<std::uint32_t> row(n), targets(n);
        for (auto& r : row) r = static_cast<std::uint32_t>(rng() % n);
        const auto shift = static_cast<std::uint32_t>(rng() % n);
        const auto mult = static_cast<std::uint32_t>(rng() % n);
        k.form_targets(targets, row, shift, mult, static_cast<std::uint32_t>(n));
        for (std::size_t i = 0; i < n; ++i) CHECK(targets[i] == (shift + row[i]) % n * mult % n);
    }
}

TEST_CASE("root_sum scalar matches direct exponentials") {
    std::mt19937_64 rng(2);
    for (const std::uint64_t order : {1ULL, 2ULL, 6ULL, 12ULL, 100ULL, 1458ULL}) {
        const RootTable roots(order);
        for (std::uint64_t t = 0; t < order; ++t) {
            const auto z = oracle::e(static_cast<double>(t) / static_cast<double>(order));
            CHECK(std::abs(roots.re[t] - z.real()) < 1e-14);
            CHECK(std::abs(roots.im[t] - z.imag()) < 1e-14);
        }
        std::vector<std::uint32_t> exps(37);
        std::vector<double> w(37);
        for (auto& x : exps) x = static_cast<std::uint32_t>(rng() % order);
        for (auto& x : w) x = static_cast<double>(rng() % 50);
        const std::uint64_t mult = rng() % 10000;
        std::complex<double> expect = 0;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            expect += w[i] * oracle::e(static_cast<double>(mult * exps[i] % order) / static_cast<double>(order));
        }
        CHECK(std::abs(scalar_kernels().root_sum(exps, w, mult, roots) - expect) < 1e-11);
    }
}

TEST_CASE("every available kernel set is equivalent to the scalar reference") {
    const auto sets = available_kernels();
    REQUIRE(!sets.empty());
    CHECK(sets.front()->isa == Isa::Scalar);
    MESSAGE("kernel sets available: " << sets.size() << ", active: " << isa_name(active_kernels().isa));
    std::mt19937_64 rng(3);
    for (const KernelSet* k : sets) {
        for (const std::uint64_t n : kSizes) {
            std::vector<std::uint32_t> table(n);
            for (auto& t : table) t = static_cast<std::uint32_t>(rng());
            const std::uint64_t step = rng() % n;
            const std::uint64_t weight = rng() % 100000;
            std::vector<std::uint64_t> a(n, 11), b(n, 11);
            scalar_kernels().accumulate_gather(a, table, step, weight);
            k->accumulate_gather(b, table, step, weight);
            CHECK_MESSAGE(a == b, isa_name(k->isa), " gather n=", n);

            std::vector<std::uint32_t> row(n), ta(n), tb(n);
            for (auto& r : row) r = static_cast<std::uint32_t>(rng() % n);
            const auto shift = static_cast<std::uint32_t>(rng() % n);
            const auto mult = static_cast<std::uint32_t>(rng() % n);
            scalar_kernels().form_targets(ta, row, shift, mult, static_cast<std::uint32_t>(n));
            k->form_targets(tb, row, shift, mult, static_cast<std::uint32_t>(n));
            CHECK_MESSAGE(ta == tb, isa_name(k->isa), " targets n=", n);

            const RootTable roots(n);
            std::vector<double> w(n);
            for (auto& x : w) x = static_cast<double>(rng() % 1000);
            const auto za = scalar_kernels().root_sum(row, w, mult, roots);
            const auto zb = k->root_sum(row, w, mult, roots);
            CHECK(std::abs(za - zb) <= 1e-12 * (1.0 + std::abs(za)) * static_cast<double>(n));
        }
        // Moduli beyond the vector limit take the scalar fallback inside the kernel.
        const std::uint32_t big = (1u << 31) - 1;
        std::vector<std::uint32_t> row(9), ta(9), tb(9);
        for (auto& r : row) r = static_cast<std::uint32_t>(rng() % big);
        scalar_kernels().form_targets(ta, row, big - 5, big - 7, big);
        k->form_targets(tb, row, big - 5, big - 7, big);
        CHECK(ta == tb);
    }
}

TEST_CASE("CONGRUENCE_LAB_ISA=scalar forces the reference kernels") {
    // active_kernels() caches its choice, so only the non-forced path is observable in-process.
    const char* forced = std::getenv("CONGRUENCE_LAB_ISA");
    if (forced != nullptr && std::string(forced) == "scalar") {
        CHECK(active_kernels().isa == Isa::Scalar);
    } else if (avx2_kernels() != nullptr) {
        CHECK(active_kernels().isa == Isa::Avx2);
    } else {
        CHECK(active_kernels().isa == Isa::Scalar);
    }
}
