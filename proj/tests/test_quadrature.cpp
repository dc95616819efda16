#include "hhverify/fnmodel.hpp"
#include "hhverify/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace hhverify;

TEST(Integrate, Examples) {
    EXPECT_NEAR(integrate([](double) { return 1.0; }, 0.0, 1.0).value, 1.0, 1e-15);
    EXPECT_NEAR(integrate([](double t) { return std::exp(t); }, 0.0, 1.0).value, std::exp(1.0) - 1.0, 1e-13);
    const QuadResult r = integrate_split([](double t) { return std::pow(std::fabs(1 - 2 * t), 3.0); }, 0.0, 0.5,
                                         1.0, QuadTolerance{});
    EXPECT_NEAR(r.value, 0.25, 1e-12);
    EXPECT_TRUE(r.converged);
}

TEST(Integrate, KinkSplitGivesHalfExactly) {
    const QuadResult r =
        integrate_split([](double t) { return std::fabs(1.0 - 2.0 * t); }, 0.0, 0.5, 1.0, QuadTolerance{1e-14, 1e-14});
    EXPECT_NEAR(r.value, 0.5, 1e-14);
}

TEST(Integrate, AbsPowerIdentity) {
    for (double p : {1.0, 1.5, 2.0, 3.0, 7.0}) {
        auto g = [p](double t) { return std::pow(std::fabs(1.0 - 2.0 * t), p); };
        EXPECT_NEAR(integrate_split(g, 0.0, 0.5, 1.0, QuadTolerance{}).value, 1.0 / (p + 1.0), 1e-10) << p;
    }
}

TEST(Integrate, ErrorEstimateWithinTolerance) {
    const QuadResult r = integrate([](double t) { return std::sqrt(t); }, 0.0, 1.0, 1e-10);
    EXPECT_TRUE(r.converged);
    EXPECT_GE(r.error_estimate, 0.0);
    EXPECT_LE(r.error_estimate, 1e-10);
    EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-10);
    EXPECT_GT(r.subdivisions, 1u);
}

TEST(Integrate, Deterministic) {
    auto g = [](double t) { return std::log(1.0 + t) * std::exp(-t * t); };
    const QuadResult a = integrate(g, 0.0, 3.0), b = integrate(g, 0.0, 3.0);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.error_estimate, b.error_estimate);
    EXPECT_EQ(a.subdivisions, b.subdivisions);
}

TEST(Integrate, TighterToleranceNeverWorse) {
    struct Case {
        std::function<double(double)> g;
        double lo, hi, ref;
    };
    const Case cases[] = {
        {[](double t) { return std::exp(t); }, 0.0, 1.0, std::exp(1.0) - 1.0},
        {[](double t) { return 1.0 / (1.0 + t * t); }, 0.0, 4.0, std::atan(4.0)},
        {[](double t) { return std::cos(3.0 * t); }, 0.0, 2.0, std::sin(6.0) / 3.0},
    };
    for (const Case& c : cases) {
        double prev = std::numeric_limits<double>::infinity();
        for (double tol = 1e-4; tol >= 1e-12; tol *= 0.5) {
            const double err = std::fabs(integrate(c.g, c.lo, c.hi, tol).value - c.ref);
            EXPECT_LE(err, std::max(prev, 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(c.ref)));
            prev = err;
        }
    }
}

TEST(Integrate, NonFiniteSampleNamesPoint) {
    try {
        integrate([](double t) { return 1.0 / (t - 0.5); }, 0.0, 1.0);
        FAIL() << "expected NonFiniteSample";
    } catch (const NonFiniteSample& e) {
        EXPECT_DOUBLE_EQ(e.x(), 0.5);
    }
}

TEST(Integrate, SubdivisionCapReportsBestEstimate) {
    try {
        integrate([](double t) { return std::sin(1.0 / t); }, 1e-6, 1.0, QuadTolerance{1e-15, 1e-15}, 20);
        FAIL() << "expected MaxSubdivisionsExceeded";
    } catch (const MaxSubdivisionsExceeded& e) {
        EXPECT_FALSE(e.best().converged);
        EXPECT_TRUE(std::isfinite(e.best().value));
    }
}

TEST(Integrate, RejectsBadArguments) {
    EXPECT_THROW(integrate([](double t) { return t; }, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(integrate([](double t) { return t; }, 0.0, 1.0, 0.0), std::invalid_argument);
}

TEST(MeanIntegral, Examples) {
    EXPECT_NEAR(mean_integral(make_affine_model(1.0, 0.0, {0.5, 1.5}), 0.5, 1.5), 1.0, 1e-14);
    const FunctionModel sq("square", {0.0, 1.0}, [](double x) { return x * x; }, [](double x) { return 2 * x; });
    EXPECT_NEAR(mean_integral(sq, 0.0, 1.0), 1.0 / 3.0, 1e-14);
    EXPECT_NEAR(mean_integral(make_power_model(0.5), 0.25, 0.75), 1.3987173, 5e-7); // hand value, 7 digits
    // hand value: (4/3)(b^1.5 - a^1.5)/(b - a)
    const double exact = (4.0 / 3.0) * (std::pow(0.75, 1.5) - std::pow(0.25, 1.5)) / 0.5;
    EXPECT_NEAR(mean_integral(make_power_model(0.5), 0.25, 0.75, 1e-13), exact, 1e-13);
}
