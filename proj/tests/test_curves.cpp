#include "contactlab/curve.hpp"

#include "test_helpers.hpp"

#include <doctest.h>
#include <random>

using namespace contactlab;
using namespace contactlab::testing;

TEST_CASE("curve construction invariants") {
    CHECK_THROWS_AS(SpaceCurve::sampled(1, {0, 1, 2}, {vec3(0, 0, 0), vec3(1, 0, 0), vec3(2, 0, 0)}),
                    contract_error); // too few nodes
    std::vector<double> ts;
    std::vector<Vec> pts;
    for (int i = 0; i < 20; ++i) {
        ts.push_back(i);
        pts.push_back(vec3(i, 0, 0));
    }
    ts[5] = ts[4]; // duplicate parameter
    CHECK_THROWS_AS(SpaceCurve::sampled(1, ts, pts), contract_error);
    ts[5] = 5.0;
    const auto c = SpaceCurve::sampled(1, ts, pts);
    CHECK(c.immersed());
    CHECK(c.position(2.5)[0] == doctest::Approx(2.5));
}

TEST_CASE("legendrian defect") {
    SUBCASE("horizontal Legendrian") {
        const auto c = SpaceCurve::analytic(
            1, 0.0, 1.0, [](double t) { return vec3(t, 0, 0); },
            [](double) { return vec3(1, 0, 0); });
        CHECK(legendrian_defect(c).sup_defect <= 1e-15);
    }
    SUBCASE("diagonal") {
        const auto rep = legendrian_defect(diagonal_curve());
        CHECK(rep.sup_defect == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(rep.total_defect == doctest::Approx(1.0));
    }
    SUBCASE("planar circle") {
        const auto rep = legendrian_defect(space_circle());
        CHECK(rep.sup_defect == doctest::Approx(1.0));
        CHECK(rep.total_defect == doctest::Approx(M_PI));
    }
    SUBCASE("non-immersed input is rejected") {
        const auto c = SpaceCurve::analytic(
            1, -1.0, 1.0, [](double t) { return vec3(t * t * t, 0, 0); },
            [](double t) { return vec3(3 * t * t, 0, 0); });
        CHECK_THROWS_AS(legendrian_defect(c), degenerate_input_error);
    }
}

TEST_CASE("lagrangian projection") {
    const auto p = lagrangian_projection(diagonal_curve());
    CHECK(p.position(0.4)[0] == doctest::Approx(0.4));
    CHECK(p.position(0.4)[1] == doctest::Approx(0.0));
    CHECK(p.dim() == 2);

    const auto circle_shifted = SpaceCurve::analytic(
        1, 0.0, 2.0 * M_PI, [](double t) { return vec3(std::cos(t), std::sin(t), 5.0); },
        [](double t) { return vec3(-std::sin(t), std::cos(t), 0.0); }, true);
    const auto pc = lagrangian_projection(circle_shifted);
    CHECK(pc.closed()); // closed flag preserved
    CHECK(pc.position(1.0)[0] == doctest::Approx(std::cos(1.0)));
}

TEST_CASE("c0 distance") {
    const auto a = SpaceCurve::analytic(
        1, 0.0, 1.0, [](double t) { return vec3(t, 0, 0); }, [](double) { return vec3(1, 0, 0); });
    const auto b = SpaceCurve::analytic(
        1, 0.0, 1.0, [](double t) { return vec3(t, 0, 0.3); },
        [](double) { return vec3(1, 0, 0); });
    CHECK(c0_distance(a, a) == doctest::Approx(0.0));
    CHECK(c0_distance(a, b) == doctest::Approx(0.3));

    SUBCASE("pseudometric on random sampled triples") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        auto random_curve = [&] {
            std::vector<double> ts;
            std::vector<Vec> pts;
            for (int i = 0; i < 24; ++i) {
                ts.push_back(i / 23.0);
                pts.push_back(vec3(u(rng), u(rng), u(rng)) + vec3(2.0 * i / 23.0, 0, 0));
            }
            return SpaceCurve::sampled(1, ts, pts);
        };
        for (int trial = 0; trial < 40; ++trial) {
            const auto x = random_curve(), y = random_curve(), z = random_curve();
            const double dxy = c0_distance(x, y), dyx = c0_distance(y, x);
            CHECK(dxy == doctest::Approx(dyx).epsilon(1e-12));
            CHECK(c0_distance(x, z) <= dxy + c0_distance(y, z) + 1e-12);
        }
    }
}

TEST_CASE("path action") {
    SUBCASE("unit circle CCW") { CHECK(path_action(unit_circle()) == doctest::Approx(-M_PI)); }
    SUBCASE("horizontal segment") {
        const auto seg = PlanarCurve::analytic(
            1, 0.0, 1.0, [](double t) { return vec2(t, 0); }, [](double) { return vec2(1, 0); });
        CHECK(path_action(seg) == doctest::Approx(0.0));
    }
    SUBCASE("closed curves: action is minus the signed area") {
        std::mt19937_64 rng(5150);
        for (int trial = 0; trial < 1000; ++trial) {
            const auto poly = random_simple_polygon(rng);
            CHECK(std::abs(path_action(poly) + signed_area(poly)) < 1e-9);
        }
    }
}

TEST_CASE("signed area") {
    CHECK(signed_area(unit_circle()) == doctest::Approx(M_PI));
    const auto cw = PlanarCurve::analytic(
        1, 0.0, 2.0 * M_PI, [](double t) { return vec2(std::cos(-t), std::sin(-t)); },
        [](double t) { return vec2(std::sin(-t), -std::cos(-t)); }, true);
    CHECK(signed_area(cw) == doctest::Approx(-M_PI));

    std::vector<double> ts;
    std::vector<Vec> pts;
    const std::vector<Vec> sq = {vec2(0, 0), vec2(1, 0), vec2(1, 1), vec2(0, 1)};
    for (int i = 0; i <= 16; ++i) {
        ts.push_back(i);
        const int side = i % 16 / 4;
        const double w = (i % 4) / 4.0;
        const Vec& a = sq[static_cast<size_t>(side)];
        const Vec& b = sq[static_cast<size_t>((side + 1) % 4)];
        pts.push_back(i == 16 ? sq[0] : Vec(a + w * (b - a)));
    }
    const auto square = PlanarCurve::sampled(1, ts, pts, true);
    CHECK(signed_area(square) == doctest::Approx(1.0));

    CHECK_THROWS_AS(signed_area(lagrangian_projection(diagonal_curve())), contract_error);
}

TEST_CASE("winding number") {
    CHECK(winding_number(unit_circle(), Vec2(0, 0)) == 1);
    CHECK(winding_number(unit_circle(), Vec2(2, 0)) == 0);
    const auto doubled = PlanarCurve::analytic(
        1, 0.0, 4.0 * M_PI, [](double t) { return vec2(std::cos(t), std::sin(t)); },
        [](double t) { return vec2(-std::sin(t), std::cos(t)); }, true);
    CHECK(winding_number(doubled, Vec2(0, 0)) == 2);
    CHECK_THROWS_AS(winding_number(unit_circle(), Vec2(1, 0)), degenerate_input_error);
}

TEST_CASE("lift relation ties defect, action and z-gain") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.3, 1.7);
    for (int trial = 0; trial < 10; ++trial) {
        const double a = u(rng), b = u(rng), c = u(rng);
        const auto curve = SpaceCurve::analytic(
            1, 0.0, 2.0,
            [=](double t) { return vec3(std::sin(a * t), std::cos(b * t), std::sin(c * t)); },
            [=](double t) {
                return vec3(a * std::cos(a * t), -b * std::sin(b * t), c * std::cos(c * t));
            });
        const auto defect = legendrian_defect(curve);
        const double action = path_action(lagrangian_projection(curve));
        const double dz = curve.position(2.0)[2] - curve.position(0.0)[2];
        CHECK(std::abs(dz - action - defect.total_defect) < 1e-9);
    }
}

TEST_CASE("four boundary arcs on a convex region obey the winding bound") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> axis(0.3, 1.0);
    std::uniform_int_distribution<int> vcount(12, 40);
    std::uniform_int_distribution<int> coin(0, 1);

    for (int trial = 0; trial < 100; ++trial) {
        const int m = vcount(rng);
        const double ax = axis(rng), by = axis(rng);
        std::vector<Vec2> boundary;
        for (int i = 0; i < m; ++i) {
            const double phi = 2.0 * M_PI * i / m;
            boundary.emplace_back(ax * std::cos(phi), by * std::sin(phi));
        }
        const double area = M_PI * ax * by; // ellipse bound on the polygon area

        std::uniform_int_distribution<int> pick(0, m - 1);
        int idx[4] = {pick(rng), pick(rng), pick(rng), pick(rng)};
        // arcs along the boundary between picked points, each direction random
        auto arc = [&](int from, int to, bool forward) {
            std::vector<Vec2> out;
            int i = from;
            out.push_back(boundary[static_cast<size_t>(i)]);
            while (i != to) {
                i = forward ? (i + 1) % m : (i + m - 1) % m;
                out.push_back(boundary[static_cast<size_t>(i)]);
            }
            return out;
        };
        // closed concatenation x0- -> x0+ -> x1+ -> x1- -> x0-
        std::vector<Vec2> chain;
        const int pts_idx[5] = {idx[0], idx[1], idx[2], idx[3], idx[0]};
        for (int leg = 0; leg < 4; ++leg) {
            auto part = arc(pts_idx[leg], pts_idx[leg + 1], coin(rng) == 1);
            if (!chain.empty()) part.erase(part.begin());
            chain.insert(chain.end(), part.begin(), part.end());
        }
        if (chain.size() < 17) continue;
        std::vector<double> ts;
        std::vector<Vec> pts;
        for (size_t i = 0; i < chain.size(); ++i) {
            ts.push_back(static_cast<double>(i));
            pts.push_back(vec2(chain[i].x(), chain[i].y()));
        }
        const auto concat = PlanarCurve::sampled(1, std::move(ts), std::move(pts), true);
        CHECK(std::abs(path_action(concat)) <= 4.0 * area + 1e-9);
    }
}
