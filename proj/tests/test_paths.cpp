#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "polysig/paths.hpp"
#include "polysig/polyapprox.hpp"

using namespace polysig;

TEST(MakePath, MinimalOneDimensionalPath) {
    const auto p = make_path({0.0, 1.0}, {{0.0}, {1.0}});
    EXPECT_EQ(p.points(), 2u);
    EXPECT_EQ(p.segments(), 1u);
    EXPECT_EQ(p.dim(), 1u);
    EXPECT_DOUBLE_EQ(p.step(0), 1.0);
}

TEST(MakePath, RejectsRepeatedTimes) {
    EXPECT_THROW(make_path({0.0, 0.0}, {{0.0}, {1.0}}), InputError);
    EXPECT_THROW(make_path({0.0, 1.0, 0.5}, {{0.0}, {1.0}, {2.0}}), InputError);
}

TEST(MakePath, RejectsNonFiniteValues) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    EXPECT_THROW(make_path({{0.0}, {nan}}), InputError);
    EXPECT_THROW(make_path({{0.0}, {inf}}), InputError);
    EXPECT_THROW(make_path({0.0, inf}, {{0.0}, {1.0}}), InputError);
}

TEST(MakePath, RejectsShapeErrors) {
    EXPECT_THROW(make_path({{0.0}}), InputError);
    EXPECT_THROW(make_path({{0.0, 1.0}, {1.0}}), InputError);
    EXPECT_THROW(make_path({0.0, 0.5, 1.0}, {{0.0}, {1.0}}), InputError);
    EXPECT_THROW(PiecewiseLinearPath({0.0, 1.0}, {0.0, 1.0}, 0), InputError);
    EXPECT_THROW(PiecewiseLinearPath({0.0, 1.0}, {0.0, 1.0, 2.0}, 1), InputError);
}

TEST(MakePath, MissingTimesAreUniformOnUnitInterval) {
    const auto p = make_path({{0.0}, {1.0}, {3.0}, {2.0}, {5.0}});
    ASSERT_EQ(p.points(), 5u);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(p.time(i), 0.25 * static_cast<double>(i));
    EXPECT_EQ(p.time(4), 1.0);
}

TEST(MakePath, IncrementsAreRowDifferences) {
    const auto p = make_path({{0.0, 1.0}, {2.0, 1.5}, {1.0, -1.0}});
    const std::vector<double> expect{2.0, 0.5, -1.0, -2.5};
    EXPECT_EQ(p.increments(), expect);
}

TEST(RectCoeff, UnitIncrements) {
    const auto x = make_path({0.0, 1.0}, {{0.0, 0.0}, {1.0, 0.0}});
    const auto r = rect_coeff(x, x, 0, 0);
    EXPECT_EQ(r.c, 1.0);
    EXPECT_EQ(r.ds, 1.0);
    EXPECT_EQ(r.dt, 1.0);
}

TEST(RectCoeff, OrthogonalIncrements) {
    const auto x = make_path({0.0, 1.0}, {{0.0, 0.0}, {1.0, 0.0}});
    const auto y = make_path({0.0, 1.0}, {{0.0, 0.0}, {0.0, 1.0}});
    EXPECT_EQ(rect_coeff(x, y, 0, 0).c, 0.0);
}

TEST(RectCoeff, DividesByRectangleArea) {
    const auto x = make_path({0.0, 2.0}, {{0.0, 0.0}, {2.0, 0.0}});
    const auto y = make_path({0.0, 1.0}, {{0.0, 0.0}, {1.0, 0.0}});
    const auto r = rect_coeff(x, y, 0, 0);
    EXPECT_EQ(r.c, 1.0);
    EXPECT_EQ(r.ds, 2.0);
    EXPECT_EQ(r.dt, 1.0);
}

TEST(RectCoeff, RejectsOutOfRangeAndDimensionMismatch) {
    const auto x = make_path({{0.0, 0.0}, {1.0, 0.0}});
    const auto y = make_path({{0.0}, {1.0}});
    EXPECT_THROW(rect_coeff(x, x, 1, 0), InputError);
    EXPECT_THROW(rect_coeff(x, x, 0, 1), InputError);
    EXPECT_THROW(rect_coeff(x, y, 0, 0), InputError);
}

TEST(RectCoeff, BilinearInIncrements) {
    const auto x = make_path({{0.0, 0.0}, {0.3, -0.7}, {1.1, 0.2}});
    const auto y = make_path({{0.0, 0.0}, {-0.4, 0.9}});
    const double alpha = 2.5;
    auto v = x.values();
    for (double& e : v) e *= alpha;
    const PiecewiseLinearPath xs(x.times(), v, 2);
    for (std::size_t i = 0; i < 2; ++i)
        EXPECT_NEAR(rect_coeff(xs, y, i, 0).c, alpha * rect_coeff(x, y, i, 0).c,
                    1e-15 * std::abs(alpha * rect_coeff(x, y, i, 0).c));
}

TEST(RefinePath, FactorOneIsIdentity) {
    const auto p = make_path({{0.0, 1.0}, {2.0, 1.5}, {1.0, -1.0}});
    EXPECT_EQ(refine_path(p, 1), p);
}

TEST(RefinePath, MidpointInsertion) {
    const auto p = make_path({0.0, 1.0}, {{0.0}, {2.0}});
    const auto r = refine_path(p, 2);
    EXPECT_EQ(r.times(), (std::vector<double>{0.0, 0.5, 1.0}));
    EXPECT_EQ(r.values(), (std::vector<double>{0.0, 1.0, 2.0}));
}

TEST(RefinePath, ZeroFactorThrows) {
    const auto p = make_path({{0.0}, {1.0}});
    EXPECT_THROW(refine_path(p, 0), InputError);
}

TEST(RefinePath, KeepsOriginalSamplesAndTraceExactly) {
    const auto p = make_path({0.0, 0.3, 1.0}, {{0.0, 1.0}, {2.0, 1.5}, {1.0, -1.0}});
    const auto r = refine_path(p, 3);
    ASSERT_EQ(r.points(), 7u);
    for (std::size_t i = 0; i < p.points(); ++i) {
        EXPECT_EQ(r.time(3 * i), p.time(i));
        for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(r.value(3 * i)[k], p.value(i)[k]);
    }
    // Inserted points lie on the original segments.
    for (std::size_t m = 0; m + 1 < r.points(); ++m) {
        const std::size_t seg = m / 3;
        const double w = (r.time(m) - p.time(seg)) / p.step(seg);
        for (std::size_t k = 0; k < 2; ++k) {
            const double expect = p.value(seg)[k] + w * (p.value(seg + 1)[k] - p.value(seg)[k]);
            EXPECT_NEAR(r.value(m)[k], expect, 1e-15);
        }
    }
}

TEST(RefinePath, ComposesAcrossFactorsToRounding) {
    const auto p = make_path({0.0, 0.3, 1.0}, {{0.0, 1.0}, {2.0, 1.5}, {1.0, -1.0}});
    const auto direct = refine_path(p, 6);
    const auto nested = refine_path(refine_path(p, 2), 3);
    ASSERT_EQ(direct.points(), nested.points());
    for (std::size_t i = 0; i < direct.points(); ++i) {
        EXPECT_NEAR(direct.time(i), nested.time(i), 4 * std::numeric_limits<double>::epsilon());
        for (std::size_t k = 0; k < 2; ++k)
            EXPECT_NEAR(direct.value(i)[k], nested.value(i)[k], 8 * std::numeric_limits<double>::epsilon());
    }
}

TEST(RefinePath, KernelUnchangedByRefinement) {
    const auto x = sample_brownian(3, 6, 2);
    const auto y = sample_brownian(4, 5, 2);
    const double base = polyapprox::kernel(x, y, 12);
    for (std::size_t f : {2u, 3u, 5u}) {
        const double refined = polyapprox::kernel(refine_path(x, f), refine_path(y, f), 12);
        EXPECT_NEAR(refined, base, 1e-12 * std::abs(base)) << "factor " << f;
    }
}

TEST(SampleBrownian, StartsAtOriginWithRequestedShape) {
    const auto p = sample_brownian(17, 10, 2);
    EXPECT_EQ(p.points(), 10u);
    EXPECT_EQ(p.dim(), 2u);
    EXPECT_EQ(p.value(0)[0], 0.0);
    EXPECT_EQ(p.value(0)[1], 0.0);
    EXPECT_EQ(p.time(0), 0.0);
    EXPECT_EQ(p.time(9), 1.0);
}

TEST(SampleBrownian, DeterministicPerSeed) {
    EXPECT_EQ(sample_brownian(5, 20, 3), sample_brownian(5, 20, 3));
    EXPECT_NE(sample_brownian(5, 20, 3), sample_brownian(6, 20, 3));
}

TEST(SampleBrownian, RejectsTooFewPoints) {
    EXPECT_THROW(sample_brownian(1, 1, 2), InputError);
    EXPECT_THROW(sample_brownian(1, 5, 0), InputError);
}

TEST(SampleBrownian, IncrementVarianceIsOneOverSegments) {
    const std::size_t points = 10;
    double sum = 0.0, sq = 0.0;
    std::size_t n = 0;
    for (std::uint64_t s = 0; s < 10000; ++s) {
        for (double v : sample_brownian(s, points, 2).increments()) {
            sum += v;
            sq += v * v;
            ++n;
        }
    }
    const double mean = sum / static_cast<double>(n);
    const double var = sq / static_cast<double>(n) - mean * mean;
    EXPECT_NEAR(var, 1.0 / 9.0, 0.1 / 9.0);
}

TEST(SampleSinCos, RangeAndShape) {
    const auto [x, y] = sample_sincos_pair(9, 50);
    EXPECT_EQ(x.points(), 50u);
    EXPECT_EQ(y.points(), 50u);
    EXPECT_EQ(x.dim(), 2u);
    for (double v : x.values()) EXPECT_LE(std::abs(v), 1.0);
    for (double v : y.values()) EXPECT_LE(std::abs(v), 1.0);
    EXPECT_THROW(sample_sincos_pair(9, 1), InputError);
}

TEST(SampleSinCos, CosineMeanMatchesGaussianExpectation) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::uint64_t s = 0; s < 10000; ++s) {
        const auto [x, y] = sample_sincos_pair(s, 2);
        for (double v : y.values()) sum += v;
        n += y.values().size();
    }
    const double expect = std::exp(-0.5);
    EXPECT_NEAR(sum / static_cast<double>(n), expect, 0.02 * expect);
}
