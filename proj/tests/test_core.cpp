#include <doctest.h>

#include <cmath>
#include <numbers>

#include "vortexlab/core_profile.hpp"
#include "vortexlab/errors.hpp"

using namespace vtx;

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

TEST_CASE("solved profile is monotone with the right boundary data") {
    const CoreProfile p = solve_profile(0.05, 2048);
    CHECK(p.values.front() == 0.0);
    CHECK(p.values.back() == 1.0);
    for (std::size_t i = 1; i < p.values.size(); ++i) {
        CHECK(p.values[i] >= p.values[i - 1]);
        CHECK(p.values[i] <= 1.0 + 1e-12);
    }
    CHECK(p.newton_residual <= 1e-10);
}

TEST_CASE("profile is linear at the origin") {
    const CoreProfile p = solve_profile(0.05, 2048);
    const double r1 = p.radii[1], r2 = p.radii[2];
    const double c1 = p.values[1] / r1, c2 = p.values[2] / r2;
    CHECK(c1 > 0.0);
    CHECK(std::fabs(c1 - c2) <= 0.05 * c1);
    // slope of the scaled core: f ~ (a/eps) r with the universal a ~ 0.583
    CHECK(c1 * 0.05 == doctest::Approx(0.583).epsilon(0.01));
}

TEST_CASE("core energies form a Cauchy sequence toward gamma") {
    std::vector<double> g;
    for (const double eps : {0.1, 0.05, 0.025, 0.0125}) {
        const CoreProfile p = solve_profile(eps, 4096);
        g.push_back(p.energy - kPi * std::log(1.0 / eps));
    }
    const double gap1 = std::fabs(g[1] - g[0]);
    const double gap2 = std::fabs(g[2] - g[1]);
    const double gap3 = std::fabs(g[3] - g[2]);
    CHECK(gap2 <= gap1 / 2.0);
    CHECK(gap3 <= gap2 / 2.0);
}

TEST_CASE("grid independence of the core energy") {
    const double i2 = solve_profile(0.05, 2048).energy;
    const double i4 = solve_profile(0.05, 4096).energy;
    CHECK(std::fabs(i4 - i2) <= 1e-6);
}

TEST_CASE("energy matches an independent polar-grid quadrature") {
    // rebuild the 2-D energy of v = f(r) exp(i theta) from the profile by
    // uniform-radius finite differences, nothing shared with the solver
    const CoreProfile p = solve_profile(0.1, 4096);
    const int n = 20000;
    const double h = 1.0 / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = (i + 0.5) * h;
        const double f = p.amplitude(r / p.eps);
        const double fp =
            (p.amplitude((r + 0.5 * h) / p.eps) -
             p.amplitude((r - 0.5 * h) / p.eps)) / h;
        const double one_m = 1.0 - f * f;
        acc += h * r *
               (0.5 * (fp * fp + f * f / (r * r)) +
                one_m * one_m / (4.0 * p.eps * p.eps));
    }
    acc *= 2.0 * kPi;
    CHECK(acc == doctest::Approx(p.energy).epsilon(1e-5));
}

TEST_CASE("gamma extrapolation is ladder-consistent and positive") {
    const CoreConstant a = estimate_gamma({0.1, 0.05, 0.025});
    const CoreConstant b = estimate_gamma({0.05, 0.025, 0.0125});
    CHECK(a.extrapolated);
    CHECK(std::fabs(a.gamma - b.gamma) <= 1e-3);
    CHECK(a.gamma > 0.0);
    // frozen first-run value
    CHECK(a.gamma == doctest::Approx(1.1966).epsilon(2e-3));
}

TEST_CASE("solver input validation") {
    CHECK_THROWS_AS(solve_profile(5e-4, 2048), ConfigError);
    CHECK_THROWS_AS(solve_profile(0.7, 2048), ConfigError);
    CHECK_THROWS_AS(solve_profile(0.05, 100), ConfigError);
    CHECK_THROWS_AS(estimate_gamma({0.1, 0.2, 0.3}), ConfigError);
    CHECK_THROWS_AS(estimate_gamma({0.1, 0.05}), ConfigError);
}

TEST_CASE("tanh stand-in has more energy than the minimizer") {
    const CoreProfile solved = solve_profile(0.05, 2048);
    const CoreProfile cheap = CoreProfile::tanh_profile(0.05);
    CHECK(cheap.energy > solved.energy);
    CHECK(cheap.amplitude(0.0) == 0.0);
    CHECK(cheap.amplitude(50.0) == doctest::Approx(1.0).epsilon(1e-9));
}
