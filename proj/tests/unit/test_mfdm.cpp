#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fdmkit/mfdm.hpp"
#include "oracles.hpp"

using namespace fdmkit;

namespace {

// Masked resynthesis computed independently from the brute-force DFT.
std::vector<double> mask_oracle(const std::vector<double>& x, double fs, double lo_hz, double hi_hz) {
    const auto X = oracle::dft(x);
    const std::size_t n = x.size();
    std::vector<double> y(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t kk = std::min(k, n - k);
        const double f = static_cast<double>(kk) * fs / static_cast<double>(n);
        if (!(f >= lo_hz && f < hi_hz)) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = 2.0 * std::numbers::pi * static_cast<double>((k * i) % n) / static_cast<double>(n);
            y[i] += (X[k] * std::complex<double>(std::cos(a), std::sin(a))).real();
        }
    }
    return y;
}

TEST(Schedule, DyadicValues) {
    const auto s = cutoff_schedule(100.0, 1.5, 4);
    ASSERT_EQ(s.levels(), 4u);
    EXPECT_EQ(s.cutoffs_hz, (std::vector<double>{25.0, 12.5, 6.25, 3.125}));
    EXPECT_EQ(s.m, 1.5);
}

TEST(Schedule, RatioHolds) {
    for (double m : {0.75, 1.5, 5.0, 50.0}) {
        const auto s = cutoff_schedule(200.0, m, 6);
        for (std::size_t i = 1; i < s.levels(); ++i)
            EXPECT_NEAR(s.cutoffs_hz[i - 1] / s.cutoffs_hz[i], (2 * m + 1) / (2 * m - 1), 1e-12);
    }
}

TEST(Schedule, RejectsBadInput) {
    EXPECT_THROW(cutoff_schedule(100.0, 0.5, 3), InputError);
    EXPECT_THROW(cutoff_schedule(100.0, 0.2, 3), InputError);
    EXPECT_THROW(cutoff_schedule(100.0, 1.5, 0), InputError);
    EXPECT_THROW(explicit_schedule(100.0, {10.0, 20.0}), InputError);
    EXPECT_THROW(explicit_schedule(100.0, {50.0}), InputError);
    EXPECT_THROW(explicit_schedule(100.0, {}), InputError);
    EXPECT_NO_THROW(explicit_schedule(100.0, {30.0, 7.0}));
}

TEST(Schedule, DefaultDyadicLevels) {
    EXPECT_EQ(default_dyadic_levels(1024), 9u);
    EXPECT_EQ(default_dyadic_levels(1000), 8u);
    EXPECT_EQ(default_dyadic_levels(4), 1u);
}

TEST(Multichannel, RejectsMismatch) {
    EXPECT_THROW(MultichannelSignal({}), InputError);
    EXPECT_THROW(MultichannelSignal({Signal({1, 2, 3}, 1.0), Signal({1, 2}, 1.0)}), InputError);
    EXPECT_THROW(MultichannelSignal({Signal({1, 2}, 1.0), Signal({1, 2}, 2.0)}), InputError);
}

TEST(Filters, MatchMaskOracle) {
    const auto x = oracle::gaussian(101, 4);
    const Signal s(x, 50.0);
    const Signal hp = zero_phase_highpass(s, 9.0);
    const Signal lp = zero_phase_lowpass(s, 9.0);
    const auto hw = mask_oracle(x, 50.0, 9.0, 1e9);
    const auto lw = mask_oracle(x, 50.0, -1.0, 9.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        EXPECT_NEAR(hp[i], hw[i], 1e-12);
        EXPECT_NEAR(lp[i], lw[i], 1e-12);
        EXPECT_NEAR(hp[i] + lp[i], x[i], 1e-12);
    }
}

TEST(Filters, HighpassBinSet) {
    const auto bins = highpass_bins(100, 100.0, 25.0);
    EXPECT_EQ(bins.front(), 25u);
    EXPECT_EQ(bins.back(), 50u);
}

TEST(Mfdm, TelescopesForBothCascades) {
    const auto x1 = oracle::gaussian(256, 1), x2 = oracle::gaussian(256, 2);
    const MultichannelSignal data({Signal(x1, 64.0), Signal(x2, 64.0)});
    const auto sched = cutoff_schedule(64.0, 1.5, 5);
    for (auto c : {FilterCascade::HighPassFirst, FilterCascade::ResidueFirst}) {
        const auto r = mfdm_decompose(data, sched, c);
        ASSERT_EQ(r.bands.size(), 5u);
        for (std::size_t p = 0; p < 2; ++p) {
            EXPECT_LT(r.reconstruction_error[p], 1e-12);
            const auto& x = p == 0 ? x1 : x2;
            // band 2 is [c2, c1)
            const auto want = mask_oracle(x, 64.0, sched.cutoffs_hz[1], sched.cutoffs_hz[0]);
            for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(r.bands[1][p][i], want[i], 1e-11);
        }
    }
}

TEST(Mfdm, CascadesAgree) {
    const MultichannelSignal data({Signal(oracle::gaussian(128, 3), 10.0)});
    const auto sched = explicit_schedule(10.0, {3.0, 1.0, 0.4});
    const auto a = mfdm_decompose(data, sched, FilterCascade::HighPassFirst);
    const auto b = mfdm_decompose(data, sched, FilterCascade::ResidueFirst);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t t = 0; t < 128; ++t) EXPECT_NEAR(a.bands[i][0][t], b.bands[i][0][t], 1e-12);
}

TEST(Mfdm, CutoffBelowResolutionRejected) {
    const MultichannelSignal data({Signal(oracle::gaussian(64, 3), 64.0)});
    EXPECT_THROW(mfdm_decompose(data, explicit_schedule(64.0, {10.0, 0.5})), InputError);
    EXPECT_THROW(mfdm_decompose(data, explicit_schedule(32.0, {10.0})), InputError);
}

TEST(Mfdm, BandBinsPartitionPositiveBins) {
    const MultichannelSignal data({Signal(oracle::gaussian(100, 3), 100.0)});
    const auto r = mfdm_decompose(data, cutoff_schedule(100.0, 1.5, 4));
    EXPECT_EQ(r.band_bins[0][0].front(), 25u);
    EXPECT_EQ(r.band_bins[0][0].back(), 50u);
    EXPECT_EQ(r.band_bins[0][1].front(), 13u);
    EXPECT_EQ(r.band_bins[0][1].back(), 24u);
}

}  // namespace
