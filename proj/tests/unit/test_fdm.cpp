#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fdmkit/fdm.hpp"
#include "oracles.hpp"

using namespace fdmkit;

namespace {

constexpr double kPi = std::numbers::pi;

Signal tone(std::size_t n, double fs, std::size_t k, double amp = 1.0, double phase = 0.3) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = amp * std::cos(2.0 * kPi * static_cast<double>(k * i) / static_cast<double>(n) + phase);
    return Signal(std::move(x), fs);
}

std::vector<BinRange> ranges(const DecompositionResult& r) {
    std::vector<BinRange> out;
    for (const auto& f : r.fibfs) out.push_back(f.bins);
    return out;
}

TEST(Unwrap, LinearPhaseRecovered) {
    std::vector<cplx> z(50);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::polar(2.0, 0.9 * static_cast<double>(i) + 0.1);
    const auto phi = unwrap_phase(z);
    for (std::size_t i = 0; i < z.size(); ++i) EXPECT_NEAR(phi[i], 0.9 * static_cast<double>(i) + 0.1, 1e-12);
}

TEST(Unwrap, FirstSampleInPrincipalRange) {
    const std::vector<cplx> z{cplx{-1.0, 0.0}, cplx{-1.0, -1e-3}};
    const auto phi = unwrap_phase(z);
    EXPECT_DOUBLE_EQ(phi[0], kPi);
    EXPECT_GT(phi[1], kPi);
}

TEST(Unwrap, ZeroSampleReportsIndex) {
    const std::vector<cplx> z{1.0, cplx{0.0, 1.0}, 0.0, 1.0};
    try {
        unwrap_phase(z);
        FAIL() << "expected UndefinedPhaseError";
    } catch (const UndefinedPhaseError& e) {
        EXPECT_EQ(e.index(), 2u);
    }
}

TEST(Unwrap, AgreesWithDifferenceOracle) {
    const auto x = oracle::gaussian(200, 3);
    const auto X = oracle::dft(x);
    const auto z = oracle::band(X, 2, 40);
    const auto mine = unwrap_phase(z);
    const auto ref = oracle::unwrap(z);
    for (std::size_t i = 0; i < z.size(); ++i) EXPECT_NEAR(mine[i], ref[i], 1e-9);
}

TEST(InstFreq, CentralAndOneSided) {
    const std::vector<double> phi{0.0, 1.0, 3.0, 6.0};
    const auto f = inst_freq(phi, 2.0 * kPi);
    EXPECT_DOUBLE_EQ(f[0], 1.0);
    EXPECT_DOUBLE_EQ(f[1], 1.5);
    EXPECT_DOUBLE_EQ(f[2], 2.5);
    EXPECT_DOUBLE_EQ(f[3], 3.0);
    EXPECT_THROW(inst_freq(std::vector<double>{0.0, 1.0}, 1.0), InputError);
}

TEST(Admissible, SlopeSign) {
    std::vector<cplx> up(20), down(20);
    for (std::size_t i = 0; i < 20; ++i) {
        up[i] = std::polar(1.0, 0.2 * static_cast<double>(i));
        down[i] = std::polar(1.0, -0.2 * static_cast<double>(i));
    }
    EXPECT_TRUE(phase_admissible(up, 0.0));
    EXPECT_FALSE(phase_admissible(down, 0.0));
    EXPECT_TRUE(phase_admissible(down, 0.2 + 1e-12));
    up[5] = 0.0;
    EXPECT_FALSE(phase_admissible(up, 1.0));
}

TEST(Admissible, ConstantPhaseIsWeaklyMonotone) {
    const std::vector<cplx> z(10, cplx{1.0, 1.0});
    EXPECT_TRUE(phase_admissible(z, 0.0));
}

TEST(Config, Validation) {
    FdmConfig c;
    c.monotonicity_tolerance = -1e-3;
    EXPECT_THROW(c.validate(), InputError);
    c = {};
    c.max_fibfs = 0;
    EXPECT_THROW(c.validate(), InputError);
    c = {};
    c.monotonicity_tolerance = NAN;
    EXPECT_THROW(c.validate(), InputError);
}

TEST(Decompose, TooShortRejected) { EXPECT_THROW(decompose(Signal({1, 2, 3}, 1.0)), InputError); }

TEST(Decompose, ZeroSignalHasNoFibfs) {
    const auto r = decompose(Signal(std::vector<double>(32, 0.0), 1.0));
    EXPECT_TRUE(r.fibfs.empty());
    EXPECT_EQ(r.dc, 0.0);
    EXPECT_EQ(r.reconstruction_error, 0.0);
}

TEST(Decompose, ConstantSignalIsAllDc) {
    const auto r = decompose(Signal(std::vector<double>(17, 2.5), 1.0));
    EXPECT_TRUE(r.fibfs.empty());
    EXPECT_NEAR(r.dc, 2.5, 1e-15);
    EXPECT_FALSE(r.nyquist.has_value());
}

TEST(Decompose, PureToneIsOneBand) {
    for (auto scan : {ScanOrder::LowToHigh, ScanOrder::HighToLow})
        for (auto search : {SearchMode::MaximalExhaustive, SearchMode::FirstViolation}) {
            const auto r = decompose(tone(256, 64.0, 19, 1.7), {scan, search});
            ASSERT_EQ(r.fibfs.size(), 1u);
            EXPECT_EQ(r.fibfs[0].bins, (BinRange{19, 19}));
            for (std::size_t i = 1; i + 1 < 256; ++i) {
                EXPECT_NEAR(r.fibfs[0].amplitude[i], 1.7, 1e-9);
                EXPECT_NEAR(r.fibfs[0].inst_freq_hz[i], 19.0 * 64.0 / 256.0, 1e-9 * 4.75);
            }
        }
}

TEST(Decompose, EmptyBinsAreReported) {
    const auto r = decompose(tone(64, 1.0, 5));
    EXPECT_EQ(r.empty_bins.size(), 30u);  // 31 positive bins, one occupied
}

TEST(Decompose, ReconstructsAndTilesNoise) {
    for (std::size_t n : {64u, 65u, 400u, 401u}) {
        const auto x = oracle::gaussian(n, n);
        for (auto scan : {ScanOrder::LowToHigh, ScanOrder::HighToLow}) {
            const auto r = decompose(Signal(x, 100.0), {scan});
            EXPECT_LT(oracle::rel_l2(r.reconstruct(), x), 1e-9);
            EXPECT_TRUE(r.empty_bins.empty());
            auto rs = ranges(r);
            std::sort(rs.begin(), rs.end(), [](auto a, auto b) { return a.lo < b.lo; });
            std::size_t next = 1;
            for (const auto& b : rs) {
                EXPECT_EQ(b.lo, next);
                next = b.hi + 1;
            }
            EXPECT_EQ(next, last_positive_bin(n) + 1);
        }
    }
}

TEST(Decompose, MaximalMatchesIndependentOracle) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto x = oracle::gaussian(32, 500 + seed);
        const auto r = decompose(Signal(x, 1.0));
        std::vector<oracle::Band> got;
        for (const auto& b : ranges(r)) got.push_back({b.lo, b.hi});
        EXPECT_EQ(got, oracle::maximal_bands_lth(x, 0.0)) << "seed " << seed;
    }
}

TEST(Decompose, BandsAreMonotoneAndMatchDirectSynthesis) {
    const auto x = oracle::gaussian(128, 42);
    const auto X = oracle::dft(x);
    const auto r = decompose(Signal(x, 1.0));
    for (const auto& f : r.fibfs) {
        EXPECT_TRUE(f.monotone);
        const auto z = oracle::band(X, f.bins.lo, f.bins.hi);
        for (std::size_t i = 0; i < x.size(); ++i) {
            EXPECT_NEAR(f.fibf[i], z[i].real(), 1e-12);
            EXPECT_NEAR(f.amplitude[i], std::abs(z[i]), 1e-12);
        }
        EXPECT_TRUE(oracle::admissible(z, 1e-12));
    }
}

TEST(Decompose, FirstViolationNeverWiderThanMaximalForFirstBand) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Signal s(oracle::gaussian(64, seed), 1.0);
        const auto a = decompose(s, {ScanOrder::LowToHigh, SearchMode::MaximalExhaustive});
        const auto b = decompose(s, {ScanOrder::LowToHigh, SearchMode::FirstViolation});
        EXPECT_LE(b.fibfs[0].bins.hi, a.fibfs[0].bins.hi);
        EXPECT_LT(oracle::rel_l2(b.reconstruct(), {s.samples().begin(), s.samples().end()}), 1e-9);
    }
}

TEST(Decompose, HighToLowStartsAtTop) {
    const auto r = decompose(Signal(oracle::gaussian(64, 9), 1.0), {ScanOrder::HighToLow});
    EXPECT_EQ(r.fibfs.front().bins.hi, 31u);
    EXPECT_EQ(r.scan, ScanOrder::HighToLow);
}

TEST(Decompose, MaxFibfsMergesRemainder) {
    const Signal s(oracle::gaussian(128, 77), 1.0);
    FdmConfig c;
    c.max_fibfs = 2;
    const auto r = decompose(s, c);
    ASSERT_LE(r.fibfs.size(), 2u);
    EXPECT_EQ(r.fibfs.back().bins.hi, 63u);
    EXPECT_EQ(r.forced_final_band, !r.fibfs.back().monotone);
    EXPECT_LT(r.reconstruction_error, 1e-9);
}

TEST(Decompose, ToleranceNeverIncreasesBandCount) {
    const Signal s(oracle::gaussian(128, 5), 1.0);
    FdmConfig loose;
    loose.monotonicity_tolerance = 0.5;
    EXPECT_LE(decompose(s, loose).fibfs.size(), decompose(s).fibfs.size());
}

TEST(Decompose, NyquistTermAlternates) {
    std::vector<double> x(8);
    for (std::size_t i = 0; i < 8; ++i) x[i] = (i % 2 ? -0.5 : 0.5) + 1.0;
    const auto r = decompose(Signal(x, 1.0));
    ASSERT_TRUE(r.nyquist.has_value());
    EXPECT_NEAR(*r.nyquist, 0.5, 1e-15);
    EXPECT_NEAR(r.dc, 1.0, 1e-15);
    EXPECT_TRUE(r.fibfs.empty());
}

TEST(Decompose, OrthogonalZeroMeanBands) {
    const auto r = decompose(Signal(oracle::gaussian(128, 8), 1.0));
    for (std::size_t i = 0; i < r.fibfs.size(); ++i) {
        double mean = 0.0;
        for (double v : r.fibfs[i].fibf) mean += v;
        EXPECT_NEAR(mean / 128.0, 0.0, 1e-12);
        for (std::size_t j = i + 1; j < r.fibfs.size(); ++j) {
            double dot = 0.0, ni = 0.0, nj = 0.0;
            for (std::size_t n = 0; n < 128; ++n) {
                dot += r.fibfs[i].fibf[n] * r.fibfs[j].fibf[n];
                ni += r.fibfs[i].fibf[n] * r.fibfs[i].fibf[n];
                nj += r.fibfs[j].fibf[n] * r.fibfs[j].fibf[n];
            }
            EXPECT_LT(std::abs(dot) / std::sqrt(ni * nj), 1e-9);
        }
    }
}

}  // namespace
