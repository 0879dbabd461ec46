#include <doctest.h>

#include <bit>
#include <cmath>
#include <set>

#include "csfsim/rng.hpp"

using namespace csfsim;

TEST_CASE("identical stream state gives identical draws") {
    Rng a(12345);
    Rng b(12345);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    Rng c(12345);
    Rng d(12345);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_runs(4.07, 4.0, c) == sample_runs(4.07, 4.0, d));
    }
}

TEST_CASE("sample_runs matches the negative-binomial mean and variance") {
    const double mu = 4.07;
    const double r = 4.0;
    const int n = 1'000'000;
    Rng rng(987654321);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_runs(mu, r, rng);
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    const double expected_var = mu + mu * mu / r;  // 8.21
    CHECK(std::abs(mean - mu) / mu < 0.01);
    CHECK(std::abs(var - expected_var) / expected_var < 0.03);
}

TEST_CASE("sample_runs rejects invalid parameters") {
    Rng rng(1);
    CHECK_THROWS(sample_runs(0.0, 4.0, rng));
    CHECK_THROWS(sample_runs(4.0, 0.0, rng));
}

TEST_CASE("gamma sampler handles shapes below one") {
    Rng rng(7);
    const double shape = 0.5;
    const double scale = 2.0;
    const int n = 200'000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.next_gamma(shape, scale);
        CHECK(x >= 0.0);
        sum += x;
    }
    CHECK(sum / n == doctest::Approx(shape * scale).epsilon(0.02));
}

TEST_CASE("stream seeds are pure and stable") {
    CHECK(derive_stream_seed(42, 0) == derive_stream_seed(42, 0));
    CHECK(derive_stream_seed(42, 1) != derive_stream_seed(42, 0));
    CHECK(derive_stream_seed(43, 0) != derive_stream_seed(42, 0));
}

TEST_CASE("stream seeds are pairwise distinct over 10k iterations") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t j = 0; j < 10'000; ++j) {
        seen.insert(derive_stream_seed(0xDEADBEEFCAFEBABEull, j));
    }
    CHECK(seen.size() == 10'000);
}

TEST_CASE("flipping one iteration bit flips many output bits") {
    const std::uint64_t master = 1234567;
    long total_flips = 0;
    int trials = 0;
    for (std::uint64_t j = 0; j < 10'000; ++j) {
        const std::uint64_t base = derive_stream_seed(master, j);
        const int bit = static_cast<int>(j % 16);
        const std::uint64_t flipped = derive_stream_seed(master, j ^ (1ull << bit));
        total_flips += std::popcount(base ^ flipped);
        ++trials;
    }
    const double avg = static_cast<double>(total_flips) / trials;
    CHECK(avg >= 16.0);
}
