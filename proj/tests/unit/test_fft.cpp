#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "fdmkit/fft.hpp"
#include "oracles.hpp"

using fdmkit::cplx;
using fdmkit::FftPlan;

namespace {

std::vector<cplx> random_complex(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> x(n);
    for (auto& v : x) v = {u(rng), u(rng)};
    return x;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

class FftSizes : public ::testing::TestWithParam<std::size_t> {};

TEST_P(FftSizes, ForwardMatchesNaive) {
    const std::size_t n = GetParam();
    const auto x = random_complex(n, n);
    const FftPlan plan(n);
    const auto got = plan.forward(x);
    const auto want = oracle::naive_transform(x, -1);
    EXPECT_LT(max_abs_diff(got, want), 1e-11 * static_cast<double>(n));
}

TEST_P(FftSizes, InverseMatchesNaive) {
    const std::size_t n = GetParam();
    const auto x = random_complex(n, 1000 + n);
    const FftPlan plan(n);
    EXPECT_LT(max_abs_diff(plan.inverse(x), oracle::naive_transform(x, +1)), 1e-11 * static_cast<double>(n));
}

TEST_P(FftSizes, RoundTripScalesByLength) {
    const std::size_t n = GetParam();
    const auto x = random_complex(n, 7 * n);
    const FftPlan plan(n);
    auto y = plan.inverse(plan.forward(x));
    for (auto& v : y) v /= static_cast<double>(n);
    EXPECT_LT(max_abs_diff(y, x), 1e-12 * static_cast<double>(n));
}

INSTANTIATE_TEST_SUITE_P(Lengths, FftSizes,
                         ::testing::Values(1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 16, 30, 32, 61, 64, 67, 97, 100, 128, 210,
                                           257, 400, 401, 509, 1000, 1024, 1031));

TEST(FftFactors, ProductIsLength) {
    for (std::size_t n : {1u, 2u, 12u, 360u, 401u, 1024u, 9973u}) {
        const auto f = fdmkit::fft_factors(n);
        const std::size_t prod = std::accumulate(f.begin(), f.end(), std::size_t{1}, std::multiplies<>());
        EXPECT_EQ(prod, n);
    }
}

TEST(FftFactors, FoursComeFirst) {
    const auto f = fdmkit::fft_factors(96);
    ASSERT_GE(f.size(), 2u);
    EXPECT_EQ(f[0], 4u);
    EXPECT_EQ(f[1], 4u);
}

TEST(FftPlan, ImpulseGivesFlatSpectrum) {
    std::vector<cplx> x(401, cplx{0.0, 0.0});
    x[0] = 1.0;
    const auto X = FftPlan(401).forward(x);
    for (const auto& v : X) EXPECT_NEAR(std::abs(v - cplx{1.0, 0.0}), 0.0, 1e-12);
}

TEST(FftPlan, SizeMismatchThrows) {
    const FftPlan plan(8);
    std::vector<cplx> in(7), out(8);
    EXPECT_THROW(plan.forward(in, out), std::exception);
}

TEST(FftPlan, ZeroLengthRejected) { EXPECT_THROW(FftPlan(0), std::exception); }

}  // namespace
