#pragma once

// Desk-scale numerical verification lab: partial-open-book profile pairs
// (h1, h2), collar re-embedding pairs (f, g), the K-threshold of the
// two-term contact-volume surrogate K*A + B, and generalized Dehn twist
// checks on T*S^n.
//
// Numerics are deterministic: uniform grids, central differences with step
// equal to the grid spacing (one-sided at the ends), and seeded sampling.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace obk {

// ---------------------------------------------------------------------------
// Violation reports
// ---------------------------------------------------------------------------

struct Violation {
    std::string condition;
    int sample = -1;
    std::string detail;
};

struct ViolationReport {
    std::vector<Violation> violations;

    bool pass() const { return violations.empty(); }
};

inline std::string to_string(const ViolationReport& r) {
    if (r.pass()) return "pass\n";
    std::ostringstream os;
    for (const Violation& v : r.violations) {
        os << "violation " << v.condition;
        if (v.sample >= 0) os << " at sample " << v.sample;
        if (!v.detail.empty()) os << ": " << v.detail;
        os << "\n";
    }
    return os.str();
}

namespace detail {

inline std::vector<double> uniform_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    g.front() = lo;
    g.back() = hi;
    return g;
}

/// Finite-difference slopes: central in the interior, one-sided at the ends.
inline std::vector<double> fd_slopes(const std::vector<double>& grid, const std::vector<double>& f) {
    const std::size_t n = grid.size();
    std::vector<double> d(n);
    if (n < 2) return d;
    d[0] = (f[1] - f[0]) / (grid[1] - grid[0]);
    d[n - 1] = (f[n - 1] - f[n - 2]) / (grid[n - 1] - grid[n - 2]);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (grid[i + 1] - grid[i - 1]);
    return d;
}

/// Cubic Hermite on [0,1]; slopes are given in t-units.
inline double hermite(double p0, double m0, double p1, double m1, double t) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * p1 + (t3 - t2) * m1;
}

inline void require_grid(const std::vector<double>& g, double lo, double hi, const char* what) {
    if (g.size() < 2) throw std::invalid_argument(std::string(what) + ": need at least two samples");
    if (g.front() != lo || g.back() != hi)
        throw std::invalid_argument(std::string(what) + ": grid endpoints must be the interval ends");
    for (std::size_t i = 1; i < g.size(); ++i)
        if (!(g[i] > g[i - 1])) throw std::invalid_argument(std::string(what) + ": grid must be strictly increasing");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Profile pairs (h1, h2) on [0, epsilon]
//
// Checked conditions, with "near 0" = [0, epsilon/3] and "near epsilon" =
// [2 epsilon/3, epsilon]:
//   (1) h1 > 0 everywhere, non-increasing, h1'(0) = 0;
//   (2) h1(r) = e^{-r} near epsilon;
//   (3) h2(r) = r^2 near 0, non-decreasing, h2 = epsilon near epsilon;
//   (4) h2' h1 - h1' h2 > 0 at every sample with r > 0.  At r = 0 the
//       quantity vanishes identically by (1) and (3), so the origin sample
//       is exempt.
// ---------------------------------------------------------------------------

struct ProfileSpec {
    enum class Provenance { Builtin, File };

    double epsilon = 1.0;
    std::vector<double> grid; // strictly increasing, endpoints 0 and epsilon
    std::vector<double> h1;
    std::vector<double> h2;
    Provenance provenance = Provenance::Builtin;
};

/// h2 rises as r^2, levels off at epsilon; h1 is flat near 0, then falls
/// monotonically onto e^{-r}.  Blends are monotone cubic Hermite pieces.
inline ProfileSpec default_profile(double epsilon, int n_samples) {
    if (!(epsilon > 0)) throw std::invalid_argument("default_profile: epsilon must be positive");
    if (n_samples < 16) throw std::invalid_argument("default_profile: need at least 16 samples");

    ProfileSpec p;
    p.epsilon = epsilon;
    p.grid = detail::uniform_grid(0.0, epsilon, n_samples);
    p.h1.resize(p.grid.size());
    p.h2.resize(p.grid.size());

    const double r0 = epsilon / 6.0, r1 = epsilon / 3.0, r2 = 2.0 * epsilon / 3.0;
    const double h1_end = std::exp(-r2);
    const double h1_flat = h1_end * (1.0 + (r2 - r0));

    for (std::size_t i = 0; i < p.grid.size(); ++i) {
        const double r = p.grid[i];
        if (r <= r1) {
            p.h2[i] = r * r;
        } else if (r >= r2) {
            p.h2[i] = epsilon;
        } else {
            const double t = (r - r1) / (r2 - r1);
            p.h2[i] = detail::hermite(r1 * r1, 2.0 * r1 * (r2 - r1), epsilon, 0.0, t);
        }
        if (r >= r2) {
            p.h1[i] = std::exp(-r);
        } else if (r <= r0) {
            p.h1[i] = h1_flat;
        } else {
            const double t = (r - r0) / (r2 - r0);
            p.h1[i] = detail::hermite(h1_flat, 0.0, h1_end, -h1_end * (r2 - r0), t);
        }
    }
    return p;
}

inline ViolationReport check_profile(const ProfileSpec& p, double tol) {
    detail::require_grid(p.grid, 0.0, p.epsilon, "check_profile");
    if (p.h1.size() != p.grid.size() || p.h2.size() != p.grid.size())
        throw std::invalid_argument("check_profile: sample arrays must match the grid");

    ViolationReport report;
    const int n = static_cast<int>(p.grid.size());
    const double r1 = p.epsilon / 3.0, r2 = 2.0 * p.epsilon / 3.0;
    const auto d1 = detail::fd_slopes(p.grid, p.h1);
    const auto d2 = detail::fd_slopes(p.grid, p.h2);

    auto flag = [&report](const char* cond, int i, std::string detail) {
        report.violations.push_back(Violation{cond, i, std::move(detail)});
    };

    const double spacing = p.grid[1] - p.grid[0];
    if (std::abs(d1[0]) > tol + spacing * spacing)
        flag("h1-slope-zero-at-origin", 0, "h1'(0) = " + std::to_string(d1[0]));
    for (int i = 0; i < n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const double r = p.grid[k];
        if (!(p.h1[k] > 0)) flag("h1-positive", i, "h1 = " + std::to_string(p.h1[k]));
        if (i + 1 < n && (p.h1[k + 1] - p.h1[k]) / (p.grid[k + 1] - p.grid[k]) > tol)
            flag("h1-nonincreasing", i, "rising slope");
        if (r >= r2 && std::abs(p.h1[k] - std::exp(-r)) > tol)
            flag("h1-exponential-near-end", i, "|h1 - exp(-r)| = " + std::to_string(std::abs(p.h1[k] - std::exp(-r))));
        if (r <= r1 && std::abs(p.h2[k] - r * r) > tol)
            flag("h2-quadratic-near-zero", i, "|h2 - r^2| = " + std::to_string(std::abs(p.h2[k] - r * r)));
        if (i + 1 < n && (p.h2[k + 1] - p.h2[k]) / (p.grid[k + 1] - p.grid[k]) < -tol)
            flag("h2-nondecreasing", i, "falling slope");
        if (r >= r2 && std::abs(p.h2[k] - p.epsilon) > tol)
            flag("h2-constant-near-end", i, "|h2 - epsilon| = " + std::to_string(std::abs(p.h2[k] - p.epsilon)));
        if (r > 0) {
            const double w = d2[k] * p.h1[k] - d1[k] * p.h2[k];
            if (!(w > 0)) flag("positivity-W", i, "h2'h1 - h1'h2 = " + std::to_string(w));
        }
    }
    return report;
}

/// Minimum of h2'h1 - h1'h2 over the samples with r > 0.
inline double profile_min_w(const ProfileSpec& p) {
    const auto d1 = detail::fd_slopes(p.grid, p.h1);
    const auto d2 = detail::fd_slopes(p.grid, p.h2);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < p.grid.size(); ++i)
        best = std::min(best, d2[i] * p.h1[i] - d1[i] * p.h2[i]);
    return best;
}

// ---------------------------------------------------------------------------
// Collar pairs (f, g) on [0, epsilon]
//
// f is constant c on [0, epsilon/3] and climbs to b at epsilon; g is the
// identity on [0, epsilon/3] and the constant epsilon on [2 epsilon/3,
// epsilon]; the combined slope f' + g' must stay above tol everywhere.
// ---------------------------------------------------------------------------

struct CollarPair {
    double a = 0.0, b = 1.0, c = 0.3;
    double epsilon = 1.0;
    std::vector<double> grid;
    std::vector<double> f;
    std::vector<double> g;
};

inline CollarPair default_collar(double a, double b, double c, double epsilon, int n_samples) {
    if (!(a < c && c < b)) throw std::invalid_argument("default_collar: need a < c < b");
    if (!(epsilon > 0)) throw std::invalid_argument("default_collar: epsilon must be positive");
    if (n_samples < 16) throw std::invalid_argument("default_collar: need at least 16 samples");

    CollarPair cp;
    cp.a = a;
    cp.b = b;
    cp.c = c;
    cp.epsilon = epsilon;
    cp.grid = detail::uniform_grid(0.0, epsilon, n_samples);
    cp.f.resize(cp.grid.size());
    cp.g.resize(cp.grid.size());

    const double r1 = epsilon / 3.0, r2 = 2.0 * epsilon / 3.0;
    for (std::size_t i = 0; i < cp.grid.size(); ++i) {
        const double r = cp.grid[i];
        if (r <= r1) {
            cp.f[i] = c;
        } else {
            const double t = (r - r1) / (epsilon - r1);
            cp.f[i] = detail::hermite(c, 0.0, b, 1.5 * (b - c), t);
        }
        if (r <= r1) {
            cp.g[i] = r;
        } else if (r >= r2) {
            cp.g[i] = epsilon;
        } else {
            const double t = (r - r1) / (r2 - r1);
            cp.g[i] = detail::hermite(r1, r2 - r1, epsilon, 0.0, t);
        }
    }
    return cp;
}

inline ViolationReport check_collar(const CollarPair& cp, double tol) {
    detail::require_grid(cp.grid, 0.0, cp.epsilon, "check_collar");
    if (cp.f.size() != cp.grid.size() || cp.g.size() != cp.grid.size())
        throw std::invalid_argument("check_collar: sample arrays must match the grid");

    ViolationReport report;
    const int n = static_cast<int>(cp.grid.size());
    const double r1 = cp.epsilon / 3.0, r2 = 2.0 * cp.epsilon / 3.0;
    auto flag = [&report](const char* cond, int i, std::string detail) {
        report.violations.push_back(Violation{cond, i, std::move(detail)});
    };

    if (std::abs(cp.f[0] - cp.c) > tol) flag("f-starts-at-c", 0, "f(0) = " + std::to_string(cp.f[0]));
    if (std::abs(cp.g[0]) > tol) flag("g-starts-at-zero", 0, "g(0) = " + std::to_string(cp.g[0]));
    if (std::abs(cp.f[static_cast<std::size_t>(n - 1)] - cp.b) > tol)
        flag("f-reaches-b", n - 1, "f(epsilon) = " + std::to_string(cp.f[static_cast<std::size_t>(n - 1)]));

    const auto df = detail::fd_slopes(cp.grid, cp.f);
    const auto dg = detail::fd_slopes(cp.grid, cp.g);
    for (int i = 0; i < n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const double r = cp.grid[k];
        if (r <= r1 && std::abs(cp.f[k] - cp.c) > tol) flag("f-constant-near-zero", i, "");
        if (i + 1 < n && (cp.f[k + 1] - cp.f[k]) / (cp.grid[k + 1] - cp.grid[k]) < -tol)
            flag("f-nondecreasing", i, "falling slope");
        if (r <= r1 && std::abs(cp.g[k] - r) > tol) flag("g-identity-near-zero", i, "");
        if (i + 1 < n && (cp.g[k + 1] - cp.g[k]) / (cp.grid[k + 1] - cp.grid[k]) < -tol)
            flag("g-nondecreasing", i, "falling slope");
        if (r >= r2 && std::abs(cp.g[k] - cp.epsilon) > tol) flag("g-constant-near-end", i, "");
        if (df[k] + dg[k] <= tol)
            flag("collar-slope-positivity", i, "f' + g' = " + std::to_string(df[k] + dg[k]));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Density models K*A + B over a (theta, t) grid
// ---------------------------------------------------------------------------

struct DensityModel {
    std::vector<double> theta_grid;
    std::vector<double> t_grid;
    std::vector<double> a; // theta-major, size theta * t, positive
    std::vector<double> b; // theta-major
    std::string tag = "file";

    double at_a(std::size_t i, std::size_t j) const { return a[i * t_grid.size() + j]; }
    double at_b(std::size_t i, std::size_t j) const { return b[i * t_grid.size() + j]; }
};

namespace detail {

inline DensityModel builtin_density(int theta_samples, int t_samples, bool positive) {
    if (theta_samples < 2 || t_samples < 1)
        throw std::invalid_argument("builtin density: need theta_samples >= 2, t_samples >= 1");
    DensityModel m;
    m.tag = positive ? "builtin-positive" : "builtin-negative";
    m.theta_grid.resize(static_cast<std::size_t>(theta_samples));
    for (int i = 0; i < theta_samples; ++i)
        m.theta_grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / static_cast<double>(theta_samples);
    m.t_grid.resize(static_cast<std::size_t>(t_samples));
    for (int j = 0; j < t_samples; ++j)
        m.t_grid[static_cast<std::size_t>(j)] =
            t_samples == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(t_samples - 1);
    m.a.reserve(m.theta_grid.size() * m.t_grid.size());
    m.b.reserve(m.theta_grid.size() * m.t_grid.size());
    constexpr double two_pi = 6.283185307179586476925286766559;
    for (double theta : m.theta_grid) {
        const double a = 1.0 + 0.5 * std::cos(two_pi * theta);
        // negative variant: -B/A = 1.5 - 0.2 (1 - cos(2 pi (theta - 3/4))) / A,
        // maximized exactly at theta = 3/4 with value 3/2 (A = 1, B = -3/2 there)
        const double b = positive ? 1.5 + 0.5 * std::sin(two_pi * theta)
                                  : -1.5 * a + 0.2 * (1.0 - std::cos(two_pi * (theta - 0.75)));
        for (std::size_t j = 0; j < m.t_grid.size(); ++j) {
            m.a.push_back(a);
            m.b.push_back(b);
        }
    }
    return m;
}

} // namespace detail

/// m = +1 surrogate: B is bounded below by 1, so any positive K works.
inline DensityModel builtin_positive_density(int theta_samples, int t_samples = 8) {
    return detail::builtin_density(theta_samples, t_samples, true);
}

/// m = -1 surrogate: the density needs K above a strictly positive threshold.
inline DensityModel builtin_negative_density(int theta_samples, int t_samples = 8) {
    return detail::builtin_density(theta_samples, t_samples, false);
}

/// K0 = max(0, sup over samples of -B/A); K*A + B > 0 at all samples for
/// every K > K0.
inline double density_threshold(const DensityModel& m) {
    if (m.a.size() != m.theta_grid.size() * m.t_grid.size() || m.b.size() != m.a.size())
        throw std::invalid_argument("density_threshold: sample arrays must match the grids");
    double sup = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m.a.size(); ++k) {
        if (!(m.a[k] > 0)) throw std::invalid_argument("density_threshold: A must be positive at all samples");
        sup = std::max(sup, -m.b[k] / m.a[k]);
    }
    return std::max(0.0, sup);
}

inline double density_min(const DensityModel& m, double k_value) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m.a.size(); ++k) best = std::min(best, k_value * m.a[k] + m.b[k]);
    return best;
}

// ---------------------------------------------------------------------------
// Generalized Dehn twist on T*S^n = {(x, y) : x.y = 0, |y| = 1}
//
// The twist rotates each (x/|x|, y) plane by the angle nu(|x|); the fiber
// norm |x| is preserved, and nu vanishes beyond a finite radius, where the
// map is the identity bit for bit.
// ---------------------------------------------------------------------------

struct GDTProfile {
    int n = 2;           // sphere dimension
    double radius = 1.0; // nu(t) = 0 for t >= radius
    std::vector<double> t_grid;
    std::vector<double> nu;

    /// C^1 (Catmull-Rom) interpolation of the samples; exactly 0 beyond radius.
    double eval(double t) const {
        if (t >= radius || t < 0.0) return 0.0;
        const std::size_t n_samples = t_grid.size();
        const double spacing = radius / static_cast<double>(n_samples - 1);
        double cell = std::floor(t / spacing);
        if (cell > static_cast<double>(n_samples - 2)) cell = static_cast<double>(n_samples - 2);
        const std::ptrdiff_t i = static_cast<std::ptrdiff_t>(cell);
        const double u = t / spacing - cell;
        auto sample = [this, n_samples](std::ptrdiff_t k) {
            if (k < 0) k = 0;
            if (k >= static_cast<std::ptrdiff_t>(n_samples)) k = static_cast<std::ptrdiff_t>(n_samples) - 1;
            return nu[static_cast<std::size_t>(k)];
        };
        const double p0 = sample(i - 1), p1 = sample(i), p2 = sample(i + 1), p3 = sample(i + 2);
        return 0.5 * ((2.0 * p1) + (-p0 + p2) * u + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u * u +
                      (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * u * u * u);
    }
};

/// Smooth compactly supported bump: amplitude * exp(1 - 1/(1 - (t/R)^2)).
inline GDTProfile bump_profile(int n, double radius = 1.0, double amplitude = 3.141592653589793,
                               int samples = 2048) {
    if (n < 1) throw std::invalid_argument("bump_profile: sphere dimension must be >= 1");
    if (!(radius > 0)) throw std::invalid_argument("bump_profile: radius must be positive");
    if (samples < 8) throw std::invalid_argument("bump_profile: need at least 8 samples");
    GDTProfile p;
    p.n = n;
    p.radius = radius;
    p.t_grid = detail::uniform_grid(0.0, radius, samples);
    p.nu.resize(p.t_grid.size());
    for (std::size_t i = 0; i + 1 < p.t_grid.size(); ++i) {
        const double x = p.t_grid[i] / radius;
        p.nu[i] = amplitude * std::exp(1.0 - 1.0 / (1.0 - x * x));
    }
    p.nu.back() = 0.0;
    return p;
}

inline GDTProfile inverse_profile(const GDTProfile& p) {
    GDTProfile q = p;
    for (double& v : q.nu) v = -v;
    return q;
}

namespace detail {

inline double dot(const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

inline double norm(const std::vector<double>& u) { return std::sqrt(dot(u, u)); }

/// Twist formula without constraint validation; usable slightly off-shell
/// (the finite-difference sweep evaluates it along tangent chords).
inline void gdt_apply_raw(const GDTProfile& p, const std::vector<double>& x, const std::vector<double>& y,
                          std::vector<double>& x_out, std::vector<double>& y_out) {
    const double t = norm(x);
    const double angle = p.eval(t);
    if (angle == 0.0) {
        x_out = x;
        y_out = y;
        return;
    }
    if (t == 0.0) throw std::invalid_argument("gdt_apply: rotation undefined on the zero section for nu(0) != 0");
    const double ny = norm(y);
    const double c = std::cos(angle), s = std::sin(angle);
    const std::size_t dim = x.size();
    x_out.resize(dim);
    y_out.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const double e1 = x[i] / t;
        const double e2 = y[i] / ny;
        x_out[i] = t * (c * e1 + s * e2);
        y_out[i] = ny * (-s * e1 + c * e2);
    }
}

} // namespace detail

/// Applies the twist to a point of T*S^n.  Requires |y| = 1 and x.y = 0
/// within 1e-12; a vanishing angle returns the input unchanged.
inline std::pair<std::vector<double>, std::vector<double>>
gdt_apply(const GDTProfile& p, const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t dim = static_cast<std::size_t>(p.n) + 1;
    if (x.size() != dim || y.size() != dim)
        throw std::invalid_argument("gdt_apply: vectors must have length n+1");
    if (std::abs(detail::norm(y) - 1.0) > 1e-12)
        throw std::invalid_argument("gdt_apply: |y| = 1 violated beyond 1e-12");
    if (std::abs(detail::dot(x, y)) > 1e-12 * std::max(1.0, detail::norm(x)))
        throw std::invalid_argument("gdt_apply: x.y = 0 violated beyond 1e-12");
    std::vector<double> xo, yo;
    detail::gdt_apply_raw(p, x, y, xo, yo);
    return {std::move(xo), std::move(yo)};
}

struct SymplecticReport {
    double max_symplectic_error = 0.0;
    double max_constraint_error = 0.0;
    int samples = 0;
    double tol = 0.0;

    bool pass() const { return max_symplectic_error <= tol; }
};

/// Compares omega(Dtau u, Dtau v) with omega(u, v) for seeded random
/// on-shell points and tangent pairs; Dtau by central differences with
/// step 1e-4.  omega is sum dx_i ^ dy_i restricted to T*S^n.
inline SymplecticReport gdt_check_symplectic(const GDTProfile& p, int n, int samples, double tol,
                                             std::uint64_t seed = 0) {
    if (n != 1 && n != 2) throw std::invalid_argument("gdt_check_symplectic: n must be 1 or 2");
    if (samples < 1) throw std::invalid_argument("gdt_check_symplectic: need at least one sample");
    GDTProfile prof = p;
    prof.n = n;
    const std::size_t dim = static_cast<std::size_t>(n) + 1;
    constexpr double h = 1e-4;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.3, 1.1);

    auto random_unit = [&]() {
        std::vector<double> v(dim);
        double nrm = 0;
        do {
            for (double& c : v) c = gauss(rng);
            nrm = detail::norm(v);
        } while (nrm < 1e-6);
        for (double& c : v) c /= nrm;
        return v;
    };

    auto omega = [dim](const std::vector<double>& ux, const std::vector<double>& uy,
                       const std::vector<double>& vx, const std::vector<double>& vy) {
        double s = 0;
        for (std::size_t i = 0; i < dim; ++i) s += ux[i] * vy[i] - uy[i] * vx[i];
        return s;
    };

    SymplecticReport report;
    report.samples = samples;
    report.tol = tol;

    std::vector<double> xp(dim), xm(dim), yp(dim), ym(dim);
    std::vector<double> txp, typ, txm, tym;
    for (int s = 0; s < samples; ++s) {
        const std::vector<double> y = random_unit();
        std::vector<double> x(dim);
        for (double& c : x) c = gauss(rng);
        const double xy = detail::dot(x, y);
        for (std::size_t i = 0; i < dim; ++i) x[i] -= xy * y[i];
        double nx = detail::norm(x);
        if (nx < 1e-9) { x[0] += 1.0; nx = detail::norm(x); } // degenerate draw
        const double target = unif(rng) * prof.radius;
        for (double& c : x) c *= target / nx;

        // tangent pair: y.dy = 0 and x.dy + y.dx = 0
        auto tangent = [&]() {
            std::vector<double> dx(dim), dy(dim);
            for (double& c : dx) c = gauss(rng);
            for (double& c : dy) c = gauss(rng);
            const double yy = detail::dot(dy, y);
            for (std::size_t i = 0; i < dim; ++i) dy[i] -= yy * y[i];
            const double xdy = detail::dot(x, dy);
            const double ydx = detail::dot(dx, y);
            for (std::size_t i = 0; i < dim; ++i) dx[i] -= (ydx + xdy) * y[i];
            double nrm = std::sqrt(detail::dot(dx, dx) + detail::dot(dy, dy));
            if (nrm < 1e-9) { dy[0] += 1.0; nrm = std::sqrt(detail::dot(dx, dx) + detail::dot(dy, dy)); }
            for (double& c : dx) c /= nrm;
            for (double& c : dy) c /= nrm;
            return std::make_pair(dx, dy);
        };
        const auto [u_x, u_y] = tangent();
        const auto [v_x, v_y] = tangent();

        auto differentiate = [&](const std::vector<double>& wx, const std::vector<double>& wy,
                                 std::vector<double>& dpx, std::vector<double>& dpy) {
            for (std::size_t i = 0; i < dim; ++i) {
                xp[i] = x[i] + h * wx[i];
                yp[i] = y[i] + h * wy[i];
                xm[i] = x[i] - h * wx[i];
                ym[i] = y[i] - h * wy[i];
            }
            detail::gdt_apply_raw(prof, xp, yp, txp, typ);
            detail::gdt_apply_raw(prof, xm, ym, txm, tym);
            dpx.resize(dim);
            dpy.resize(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                dpx[i] = (txp[i] - txm[i]) / (2 * h);
                dpy[i] = (typ[i] - tym[i]) / (2 * h);
            }
        };
        std::vector<double> du_x, du_y, dv_x, dv_y;
        differentiate(u_x, u_y, du_x, du_y);
        differentiate(v_x, v_y, dv_x, dv_y);

        const double err = std::abs(omega(du_x, du_y, dv_x, dv_y) - omega(u_x, u_y, v_x, v_y));
        report.max_symplectic_error = std::max(report.max_symplectic_error, err);

        detail::gdt_apply_raw(prof, x, y, txp, typ);
        const double c1 = std::abs(detail::norm(typ) - 1.0);
        const double c2 = std::abs(detail::dot(txp, typ));
        report.max_constraint_error = std::max({report.max_constraint_error, c1, c2});
    }
    return report;
}

// ---------------------------------------------------------------------------
// CSV input: header row naming the columns, strictly increasing first
// column(s).  Formats: `r,h1,h2`, `t,f,g`, `theta,t,A,B`.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) {
        std::size_t b = field.find_first_not_of(" \t\r");
        std::size_t e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    return out;
}

inline std::vector<std::vector<double>> load_csv(std::string_view text,
                                                 const std::vector<std::string>& header) {
    std::istringstream is{std::string(text)};
    std::string line;
    int lineno = 0;
    bool have_header = false;
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto fields = split_csv_line(line);
        if (!have_header) {
            if (fields != header) {
                std::string want;
                for (std::size_t i = 0; i < header.size(); ++i) want += (i ? "," : "") + header[i];
                throw std::invalid_argument("csv line " + std::to_string(lineno) + ": expected header '" + want + "'");
            }
            have_header = true;
            continue;
        }
        if (fields.size() != header.size())
            throw std::invalid_argument("csv line " + std::to_string(lineno) + ": wrong column count");
        std::vector<double> row;
        for (const std::string& f : fields) {
            try {
                std::size_t pos = 0;
                row.push_back(std::stod(f, &pos));
                if (pos != f.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw std::invalid_argument("csv line " + std::to_string(lineno) + ": bad number '" + f + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    if (!have_header) throw std::invalid_argument("csv: missing header row");
    if (rows.empty()) throw std::invalid_argument("csv: no data rows");
    return rows;
}

} // namespace detail

inline ProfileSpec load_profile_csv(std::string_view text) {
    const auto rows = detail::load_csv(text, {"r", "h1", "h2"});
    ProfileSpec p;
    p.provenance = ProfileSpec::Provenance::File;
    for (const auto& row : rows) {
        p.grid.push_back(row[0]);
        p.h1.push_back(row[1]);
        p.h2.push_back(row[2]);
    }
    p.epsilon = p.grid.back();
    detail::require_grid(p.grid, 0.0, p.epsilon, "profile csv");
    return p;
}

inline CollarPair load_collar_csv(std::string_view text) {
    const auto rows = detail::load_csv(text, {"t", "f", "g"});
    CollarPair cp;
    for (const auto& row : rows) {
        cp.grid.push_back(row[0]);
        cp.f.push_back(row[1]);
        cp.g.push_back(row[2]);
    }
    cp.epsilon = cp.grid.back();
    detail::require_grid(cp.grid, 0.0, cp.epsilon, "collar csv");
    cp.c = cp.f.front();
    cp.b = cp.f.back();
    cp.a = *std::min_element(cp.f.begin(), cp.f.end());
    return cp;
}

inline DensityModel load_density_csv(std::string_view text) {
    const auto rows = detail::load_csv(text, {"theta", "t", "A", "B"});
    DensityModel m;
    m.tag = "file";
    // theta-major blocks sharing one t grid
    std::size_t block = 0;
    while (block < rows.size() && rows[block][0] == rows[0][0]) {
        if (block > 0 && !(rows[block][1] > rows[block - 1][1]))
            throw std::invalid_argument("density csv: t must be strictly increasing within a theta block");
        m.t_grid.push_back(rows[block][1]);
        ++block;
    }
    if (rows.size() % block != 0) throw std::invalid_argument("density csv: ragged (theta, t) grid");
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::size_t i = r / block, j = r % block;
        if (j == 0) {
            if (!m.theta_grid.empty() && !(rows[r][0] > m.theta_grid.back()))
                throw std::invalid_argument("density csv: theta must be strictly increasing");
            m.theta_grid.push_back(rows[r][0]);
        }
        if (rows[r][0] != m.theta_grid[i] || rows[r][1] != m.t_grid[j])
            throw std::invalid_argument("density csv: grid must be rectangular in (theta, t)");
        m.a.push_back(rows[r][2]);
        m.b.push_back(rows[r][3]);
    }
    return m;
}

} // namespace obk
