#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "obk/numlab.hpp"

#include <cmath>

using namespace obk;

namespace {
bool has_violation(const ViolationReport& r, std::string_view condition) {
    for (const Violation& v : r.violations)
        if (v.condition == condition) return true;
    return false;
}
} // namespace

TEST_CASE("default profile passes its checks") {
    for (double epsilon : {0.1, 1.0, 5.0})
        for (int samples : {64, 4096}) {
            CAPTURE(epsilon);
            CAPTURE(samples);
            const ProfileSpec p = default_profile(epsilon, samples);
            const ViolationReport r = check_profile(p, 1e-9);
            CHECK(r.pass());
            CHECK(profile_min_w(p) > 0.0);
        }
    CHECK_THROWS_AS(default_profile(0.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(default_profile(1.0, 4), std::invalid_argument);
}

TEST_CASE("profile boundary behavior") {
    const double eps = 1.0;
    const ProfileSpec p = default_profile(eps, 4096);
    CHECK(p.h2.front() == 0.0);
    CHECK(p.h2[1] == doctest::Approx(p.grid[1] * p.grid[1]).epsilon(1e-12));
    CHECK(p.h2.back() == eps);
    CHECK(p.h1.back() == doctest::Approx(std::exp(-eps)).epsilon(1e-12));
    // end segment: W = eps * e^{-r} up to finite-difference error
    const auto d1 = detail::fd_slopes(p.grid, p.h1);
    const auto d2 = detail::fd_slopes(p.grid, p.h2);
    const std::size_t i = p.grid.size() - 100;
    REQUIRE(p.grid[i] > 2.0 * eps / 3.0);
    const double w = d2[i] * p.h1[i] - d1[i] * p.h2[i];
    CHECK(w == doctest::Approx(eps * std::exp(-p.grid[i])).epsilon(1e-6));
}

TEST_CASE("constructed profile failures are flagged") {
    SUBCASE("raised interior h1 sample breaks monotonicity") {
        ProfileSpec p = default_profile(1.0, 256);
        p.h1[100] += 1e-2;
        const ViolationReport r = check_profile(p, 1e-9);
        CHECK_FALSE(r.pass());
        CHECK(has_violation(r, "h1-nonincreasing"));
    }
    SUBCASE("h2 = 0 kills the volume positivity") {
        ProfileSpec p = default_profile(1.0, 256);
        for (double& v : p.h2) v = 0.0;
        const ViolationReport r = check_profile(p, 1e-9);
        CHECK(has_violation(r, "positivity-W"));
    }
    SUBCASE("nonzero slope at the origin") {
        ProfileSpec p = default_profile(1.0, 256);
        for (std::size_t i = 0; i < p.grid.size(); ++i) p.h1[i] += 0.05 * (1.0 - p.grid[i]);
        const ViolationReport r = check_profile(p, 1e-9);
        CHECK(has_violation(r, "h1-slope-zero-at-origin"));
    }
    SUBCASE("wrong tail is flagged against e^{-r}") {
        ProfileSpec p = default_profile(1.0, 256);
        p.h1.back() += 1e-6;
        CHECK(has_violation(check_profile(p, 1e-9), "h1-exponential-near-end"));
    }
}

TEST_CASE("default collar passes and constructed collars fail") {
    const CollarPair cp = default_collar(0.0, 1.0, 0.3, 1.0, 4096);
    CHECK(check_collar(cp, 1e-9).pass());

    SUBCASE("simultaneous flats kill f' + g'") {
        CollarPair bad = cp;
        // force f and g constant on an overlapping interior window
        for (std::size_t i = bad.grid.size() / 2; i < bad.grid.size() / 2 + 50; ++i) {
            bad.f[i] = bad.f[bad.grid.size() / 2];
            bad.g[i] = bad.g[bad.grid.size() / 2];
        }
        const ViolationReport r = check_collar(bad, 1e-9);
        CHECK(has_violation(r, "collar-slope-positivity"));
    }
    SUBCASE("g must start at zero") {
        CollarPair bad = cp;
        bad.g[0] = 0.01;
        const ViolationReport r = check_collar(bad, 1e-9);
        CHECK(has_violation(r, "g-starts-at-zero"));
    }
    SUBCASE("f must start at c") {
        CollarPair bad = cp;
        bad.f[0] = bad.c + 0.1;
        CHECK(has_violation(check_collar(bad, 1e-9), "f-starts-at-c"));
    }
    CHECK_THROWS_AS(default_collar(0.5, 1.0, 0.2, 1.0, 64), std::invalid_argument);
}

TEST_CASE("density thresholds") {
    SUBCASE("positive model needs no threshold") {
        const DensityModel m = builtin_positive_density(4096);
        CHECK(density_threshold(m) == 0.0);
        CHECK(density_min(m, 1e-9) > 0.0);
    }
    SUBCASE("negative model thresholds at 3/2") {
        const DensityModel m = builtin_negative_density(4096);
        const double k0 = density_threshold(m);
        CHECK(std::abs(k0 - 1.5) <= 1e-6);
        CHECK(density_min(m, k0 + 1e-6) > 0.0);
        CHECK(density_min(m, k0 - 0.01) <= 0.0);
    }
    SUBCASE("threshold stays put across grid sizes") {
        CHECK(std::abs(density_threshold(builtin_negative_density(1024)) - 1.5) <= 1e-6);
        CHECK(std::abs(density_threshold(builtin_negative_density(8192)) - 1.5) <= 1e-6);
    }
    SUBCASE("scaling A halves the threshold") {
        DensityModel m = builtin_negative_density(1024);
        const double k0 = density_threshold(m);
        for (double& a : m.a) a *= 2.0;
        CHECK(density_threshold(m) == doctest::Approx(k0 / 2.0).epsilon(1e-12));
    }
    SUBCASE("nonpositive A is rejected") {
        DensityModel m = builtin_negative_density(64);
        m.a[10] = 0.0;
        CHECK_THROWS_AS(density_threshold(m), std::invalid_argument);
    }
}

TEST_CASE("density positivity across the threshold on both builtins") {
    for (bool positive : {true, false}) {
        const DensityModel m =
            positive ? builtin_positive_density(4096) : builtin_negative_density(4096);
        const double k0 = density_threshold(m);
        CHECK(density_min(m, k0 + 1e-9 + 1e-12) > 0.0);
        if (k0 > 0.0) CHECK(density_min(m, k0 - 0.01) <= 0.0);
    }
}

TEST_CASE("generalized Dehn twist point maps") {
    const GDTProfile prof = bump_profile(2);
    SUBCASE("zero profile is the identity bit for bit") {
        GDTProfile zero = prof;
        for (double& v : zero.nu) v = 0.0;
        const std::vector<double> x{0.3, 0.1, -0.2};
        std::vector<double> y{0.0, 0.0, 1.0};
        // make x orthogonal to y exactly
        std::vector<double> xo = x;
        xo[2] = 0.0;
        const auto [tx, ty] = gdt_apply(zero, xo, y);
        CHECK(tx == xo);
        CHECK(ty == y);
    }
    SUBCASE("points beyond the support radius are fixed") {
        std::vector<double> x{2.0, 0.0, 0.0};
        std::vector<double> y{0.0, 0.0, 1.0};
        const auto [tx, ty] = gdt_apply(prof, x, y);
        CHECK(tx == x);
        CHECK(ty == y);
    }
    SUBCASE("constraints and fiber norm are preserved") {
        std::mt19937_64 rng(9);
        std::normal_distribution<double> gauss;
        for (int iter = 0; iter < 1000; ++iter) {
            std::vector<double> y(3), x(3);
            double n = 0;
            for (double& c : y) c = gauss(rng);
            n = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
            for (double& c : y) c /= n;
            for (double& c : x) c = gauss(rng);
            const double xy = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
            for (int i = 0; i < 3; ++i) x[static_cast<std::size_t>(i)] -= xy * y[static_cast<std::size_t>(i)];
            const auto [tx, ty] = gdt_apply(prof, x, y);
            const double ny = std::sqrt(ty[0] * ty[0] + ty[1] * ty[1] + ty[2] * ty[2]);
            const double dot = tx[0] * ty[0] + tx[1] * ty[1] + tx[2] * ty[2];
            const double nx0 = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
            const double nx1 = std::sqrt(tx[0] * tx[0] + tx[1] * tx[1] + tx[2] * tx[2]);
            CHECK(std::abs(ny - 1.0) < 1e-9);
            CHECK(std::abs(dot) < 1e-9);
            CHECK(std::abs(nx1 - nx0) < 1e-9);
        }
    }
    SUBCASE("inverse profile composes to the identity") {
        const GDTProfile inv = inverse_profile(prof);
        std::mt19937_64 rng(10);
        std::normal_distribution<double> gauss;
        for (int iter = 0; iter < 200; ++iter) {
            std::vector<double> y(3), x(3);
            for (double& c : y) c = gauss(rng);
            const double n = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
            for (double& c : y) c /= n;
            for (double& c : x) c = gauss(rng);
            const double xy = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
            for (int i = 0; i < 3; ++i) x[static_cast<std::size_t>(i)] -= xy * y[static_cast<std::size_t>(i)];
            const auto [mx, my] = gdt_apply(inv, x, y);
            const auto [tx, ty] = gdt_apply(prof, mx, my);
            for (int i = 0; i < 3; ++i) {
                CHECK(std::abs(tx[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]) < 1e-8);
                CHECK(std::abs(ty[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(i)]) < 1e-8);
            }
        }
    }
    SUBCASE("input constraints are enforced") {
        CHECK_THROWS_AS(gdt_apply(prof, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.1}), std::invalid_argument);
        CHECK_THROWS_AS(gdt_apply(prof, {1.0, 0.0, 0.5}, {0.0, 0.0, 1.0}), std::invalid_argument);
        CHECK_THROWS_AS(gdt_apply(prof, {1.0, 0.0}, {0.0, 1.0}), std::invalid_argument);
    }
}

TEST_CASE("symplecticity checks") {
    SUBCASE("smooth bump passes at both dimensions") {
        for (int n : {1, 2}) {
            const GDTProfile prof = bump_profile(n);
            const SymplecticReport r = gdt_check_symplectic(prof, n, 100, 1e-5, 0);
            CAPTURE(n);
            CHECK(r.pass());
            CHECK(r.max_symplectic_error < 1e-5);
            CHECK(r.max_constraint_error < 1e-9);
        }
    }
    SUBCASE("zero profile is symplectic to rounding") {
        GDTProfile zero = bump_profile(2);
        for (double& v : zero.nu) v = 0.0;
        const SymplecticReport r = gdt_check_symplectic(zero, 2, 50, 1e-10, 1);
        CHECK(r.max_symplectic_error < 1e-10);
    }
    SUBCASE("a non-smooth square-wave profile fails") {
        GDTProfile jagged = bump_profile(2, 1.0, 1.0, 64);
        for (std::size_t i = 0; i < jagged.nu.size(); ++i) jagged.nu[i] = (i % 2 == 0) ? 1.0 : 0.0;
        jagged.nu.back() = 0.0;
        const SymplecticReport r = gdt_check_symplectic(jagged, 2, 100, 1e-5, 0);
        CHECK_FALSE(r.pass());
    }
    SUBCASE("determinism for a fixed seed") {
        const GDTProfile prof = bump_profile(2);
        const SymplecticReport a = gdt_check_symplectic(prof, 2, 50, 1e-5, 42);
        const SymplecticReport b = gdt_check_symplectic(prof, 2, 50, 1e-5, 42);
        CHECK(a.max_symplectic_error == b.max_symplectic_error);
        CHECK(a.max_constraint_error == b.max_constraint_error);
    }
}

TEST_CASE("csv loaders") {
    SUBCASE("profile round trip through text") {
        const std::string csv =
            "r,h1,h2\n"
            "0,1.5,0\n"
            "0.5,1.2,0.25\n"
            "1,0.9,1\n";
        const ProfileSpec p = load_profile_csv(csv);
        CHECK(p.epsilon == 1.0);
        CHECK(p.grid.size() == 3);
        CHECK(p.h1[1] == 1.2);
        CHECK(p.provenance == ProfileSpec::Provenance::File);
    }
    SUBCASE("collar infers its endpoints") {
        const std::string csv =
            "t,f,g\n"
            "0,0.3,0\n"
            "0.5,0.6,0.5\n"
            "1,1,1\n";
        const CollarPair cp = load_collar_csv(csv);
        CHECK(cp.c == 0.3);
        CHECK(cp.b == 1.0);
        CHECK(cp.epsilon == 1.0);
    }
    SUBCASE("density grid must be rectangular") {
        const std::string good =
            "theta,t,A,B\n"
            "0,0,1,1\n"
            "0,1,1,2\n"
            "0.5,0,2,0\n"
            "0.5,1,2,-1\n";
        const DensityModel m = load_density_csv(good);
        CHECK(m.theta_grid.size() == 2);
        CHECK(m.t_grid.size() == 2);
        CHECK(m.at_b(1, 1) == -1.0);
        CHECK(density_threshold(m) == 0.5);

        const std::string ragged =
            "theta,t,A,B\n"
            "0,0,1,1\n"
            "0,1,1,2\n"
            "0.5,0,2,0\n";
        CHECK_THROWS_AS(load_density_csv(ragged), std::invalid_argument);
    }
    SUBCASE("bad headers and numbers are rejected") {
        CHECK_THROWS_AS(load_profile_csv("x,y,z\n0,1,2\n"), std::invalid_argument);
        CHECK_THROWS_AS(load_profile_csv("r,h1,h2\n0,one,2\n"), std::invalid_argument);
        CHECK_THROWS_AS(load_profile_csv("r,h1,h2\n"), std::invalid_argument);
        CHECK_THROWS_AS(load_profile_csv("r,h1,h2\n0,1,2\n0,1,2\n"), std::invalid_argument);
    }
}
