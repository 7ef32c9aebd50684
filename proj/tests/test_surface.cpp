#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "obk/surface.hpp"

using namespace obk;

namespace {
HomologyVector hv(std::initializer_list<long> v) {
    HomologyVector out;
    for (long x : v) out.emplace_back(x);
    return out;
}
} // namespace

TEST_CASE("euler characteristic and homology rank") {
    CHECK(euler_characteristic(Surface{0, 1}) == 1);
    CHECK(euler_characteristic(Surface{1, 1}) == -1);
    CHECK(euler_characteristic(Surface{0, 2}) == 0);
    CHECK(homology_rank(Surface{0, 1}) == 0);
    CHECK(homology_rank(Surface{1, 1}) == 2);
    CHECK(homology_rank(Surface{0, 2}) == 1);
    CHECK(homology_rank(Surface{2, 3}) == 6);
}

TEST_CASE("curve classes") {
    const Surface torus{1, 1};
    CHECK(curve_class(torus, {CurveKind::A, 1}) == hv({1, 0}));
    CHECK(curve_class(torus, {CurveKind::B, 1}) == hv({0, 1}));
    CHECK(curve_class(torus, {CurveKind::D, 1}) == hv({0, 0})); // lone boundary is null

    const Surface annulus{0, 2};
    CHECK(curve_class(annulus, {CurveKind::D, 1}) == hv({1}));
    CHECK(curve_class(annulus, {CurveKind::D, 2}) == hv({-1}));
    CHECK(curve_class(annulus, {CurveKind::S, 2}) == hv({1}));

    const Surface pants{0, 3};
    CHECK(curve_class(pants, {CurveKind::D, 3}) == hv({-1, -1}));

    CHECK_THROWS_AS(curve_class(annulus, AtlasCurve{CurveKind::A, 1}), std::out_of_range);
    CHECK_THROWS_AS(curve_class(annulus, AtlasCurve{CurveKind::D, 3}), std::out_of_range);
    CHECK_THROWS_AS(curve_class(annulus, AtlasCurve{CurveKind::S, 3}), std::out_of_range);
}

TEST_CASE("boundary classes sum to zero") {
    for (int g = 0; g <= 2; ++g)
        for (int n = 1; n <= 4; ++n) {
            const Surface s{g, n};
            HomologyVector sum(static_cast<std::size_t>(homology_rank(s)));
            for (int j = 1; j <= n; ++j) {
                const HomologyVector c = curve_class(s, {CurveKind::D, j});
                for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += c[k];
            }
            for (const Int& v : sum) CHECK(v == 0);
        }
}

TEST_CASE("intersection pairing") {
    const Surface torus{1, 1};
    const auto a = curve_class(torus, {CurveKind::A, 1});
    const auto b = curve_class(torus, {CurveKind::B, 1});
    CHECK(intersection_number(torus, a, b) == 1);
    CHECK(intersection_number(torus, b, a) == -1);
    CHECK(intersection_number(torus, a, a) == 0);
    CHECK_THROWS_AS(intersection_number(torus, a, hv({1})), std::invalid_argument);

    SUBCASE("form matrix is skew with standard symplectic blocks and null e-part") {
        const Surface s{2, 3};
        const IntMatrix j = intersection_form_matrix(s);
        for (int p = 0; p < j.rows(); ++p)
            for (int q = 0; q < j.cols(); ++q) CHECK(j(p, q) == -j(q, p));
        CHECK(j(0, 1) == 1);
        CHECK(j(2, 3) == 1);
        for (int p = 0; p < j.rows(); ++p) {
            CHECK(j(p, 4) == 0);
            CHECK(j(p, 5) == 0);
        }
    }

    SUBCASE("bilinearity") {
        const Surface s{1, 2};
        const auto x = curve_class(s, {CurveKind::A, 1});
        const auto y = curve_class(s, {CurveKind::B, 1});
        const auto e = curve_class(s, {CurveKind::D, 1});
        HomologyVector combo(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) combo[k] = 2 * x[k] - 3 * y[k] + e[k];
        CHECK(intersection_number(s, combo, y) == 2 * intersection_number(s, x, y));
        CHECK(intersection_number(s, combo, x) == -3 * intersection_number(s, y, x));
    }
}

TEST_CASE("geometric disjointness table") {
    const AtlasCurve a1{CurveKind::A, 1}, b1{CurveKind::B, 1};
    const AtlasCurve a2{CurveKind::A, 2}, d1{CurveKind::D, 1}, s2{CurveKind::S, 2};
    CHECK_FALSE(geometrically_disjoint(a1, b1));
    CHECK(geometrically_disjoint(a1, a2));
    CHECK(geometrically_disjoint(d1, a1));
    CHECK(geometrically_disjoint(a1, a1)); // parallel copies
    CHECK(geometrically_disjoint(s2, d1));

    SUBCASE("symmetric, and disjoint curves have zero pairing") {
        const Surface s{2, 3};
        std::vector<AtlasCurve> atlas;
        for (int i = 1; i <= 2; ++i) {
            atlas.push_back({CurveKind::A, i});
            atlas.push_back({CurveKind::B, i});
        }
        for (int j = 1; j <= 3; ++j) atlas.push_back({CurveKind::D, j});
        for (int j = 2; j <= 3; ++j) atlas.push_back({CurveKind::S, j});
        for (const AtlasCurve& c1 : atlas)
            for (const AtlasCurve& c2 : atlas) {
                CHECK(geometrically_disjoint(c1, c2) == geometrically_disjoint(c2, c1));
                if (geometrically_disjoint(c1, c2))
                    CHECK(intersection_number(s, curve_class(s, c1), curve_class(s, c2)) == 0);
            }
    }
}

TEST_CASE("curve token syntax") {
    CHECK(parse_curve("a1") == AtlasCurve{CurveKind::A, 1});
    CHECK(parse_curve("d12") == AtlasCurve{CurveKind::D, 12});
    CHECK(parse_curve("s2") == AtlasCurve{CurveKind::S, 2});
    CHECK(format_curve(AtlasCurve{CurveKind::B, 3}) == "b3");
    CHECK_THROWS(parse_curve("x1"));
    CHECK_THROWS(parse_curve("a"));
    CHECK_THROWS(parse_curve("a0"));
    CHECK_THROWS(parse_curve("a1b"));
}
