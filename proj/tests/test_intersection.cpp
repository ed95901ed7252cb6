#include "contactlab/intersection.hpp"

#include "test_helpers.hpp"

#include <doctest.h>
#include <random>

using namespace contactlab;
using namespace contactlab::testing;
using contactlab::detail::SegHit;
using contactlab::detail::segment_hit;

TEST_CASE("segment predicates") {
    SUBCASE("proper crossing") {
        const auto hit = segment_hit(Vec2(0, 0), Vec2(1, 1), Vec2(0, 1), Vec2(1, 0));
        CHECK(hit.kind == SegHit::Proper);
        CHECK(hit.u == doctest::Approx(0.5));
        CHECK(hit.v == doctest::Approx(0.5));
    }
    SUBCASE("miss") {
        CHECK(segment_hit(Vec2(0, 0), Vec2(1, 0), Vec2(0, 1), Vec2(1, 1)).kind == SegHit::None);
    }
    SUBCASE("endpoint touch") {
        const auto hit = segment_hit(Vec2(0, 0), Vec2(1, 0), Vec2(1, 0), Vec2(2, 1));
        CHECK(hit.kind == SegHit::Touch);
        CHECK(hit.u == doctest::Approx(1.0));
        CHECK(hit.v == doctest::Approx(0.0));
    }
    SUBCASE("collinear overlap") {
        CHECK(segment_hit(Vec2(0, 0), Vec2(2, 0), Vec2(1, 0), Vec2(3, 0)).kind == SegHit::Overlap);
    }
    SUBCASE("collinear single-point contact") {
        CHECK(segment_hit(Vec2(0, 0), Vec2(1, 0), Vec2(1, 0), Vec2(2, 0)).kind == SegHit::Touch);
    }
}

TEST_CASE("figure eight has one self-crossing") {
    // (sin 2t, sin t): transverse node at the origin, visited at t = 0/pi/2pi
    const auto eight = zero_action_eight(1.0, 0.0);
    const auto spec = make_polyline(eight, 2048);
    for (auto strategy : {CandidateStrategy::SpatialHash, CandidateStrategy::BruteForce}) {
        const auto hits = find_crossings(spec, spec, true, strategy);
        REQUIRE(hits.crossings.size() == 1);
        CHECK(hits.crossings[0].point.norm() <= 1e-8);
        CHECK(hits.crossings[0].transverse);
        // parameters 0 mod pi (the seam identifies 0 and 2pi)
        const double s = hits.crossings[0].s, t = hits.crossings[0].t;
        CHECK(std::abs(std::remainder(s, M_PI)) <= 1e-7);
        CHECK(std::abs(std::remainder(t, M_PI)) <= 1e-7);
    }
}

TEST_CASE("two circles crossing") {
    const auto a = make_polyline(unit_circle(), 512);
    auto shifted = PlanarCurve::analytic(
        1, 0.0, 2.0 * M_PI, [](double t) { return vec2(1.2 + std::cos(t), std::sin(t)); },
        [](double t) { return vec2(-std::sin(t), std::cos(t)); }, true);
    const auto b = make_polyline(shifted, 512);
    const auto hits = find_crossings(a, b, false, CandidateStrategy::SpatialHash);
    CHECK(hits.crossings.size() == 2);
    for (const auto& c : hits.crossings) CHECK(c.point.x() == doctest::Approx(0.6).epsilon(1e-6));
}

TEST_CASE("disjoint circles") {
    const auto a = make_polyline(unit_circle(), 256);
    auto big = PlanarCurve::analytic(
        1, 0.0, 2.0 * M_PI,
        [](double t) { return vec2(std::exp(0.5) * std::cos(t), std::exp(0.5) * std::sin(t)); },
        [](double t) { return vec2(-std::exp(0.5) * std::sin(t), std::exp(0.5) * std::cos(t)); },
        true);
    const auto b = make_polyline(big, 256);
    const auto hits = find_crossings(a, b, false, CandidateStrategy::BruteForce);
    CHECK(hits.crossings.empty());
    CHECK(hits.suspects.empty());
}

TEST_CASE("overlapping traces are degenerate") {
    const auto a = make_polyline(unit_circle(), 128);
    CHECK_THROWS_AS(find_crossings(a, a, false, CandidateStrategy::SpatialHash),
                    degenerate_input_error);
}

TEST_CASE("refinement rejects sagitta artifacts") {
    // Two concentric circles 1e-4 apart, sampled so coarsely that the
    // polylines cross; the true curves do not.
    auto inner = PlanarCurve::analytic(
        1, 0.0, 2.0 * M_PI, [](double t) { return vec2(std::cos(t), std::sin(t)); },
        [](double t) { return vec2(-std::sin(t), std::cos(t)); }, true);
    const double r = 1.0 + 1e-4;
    auto outer = PlanarCurve::analytic(
        1, 0.0, 2.0 * M_PI, [=](double t) { return vec2(r * std::cos(t), r * std::sin(t)); },
        [=](double t) { return vec2(-r * std::sin(t), r * std::cos(t)); }, true);
    // sagitta at 64 nodes ~ 1.2e-3 >> 1e-4: many spurious polyline crossings
    const auto a = make_polyline(inner, 64);
    const auto bshift = make_polyline(outer, 64);
    const auto hits = find_crossings(a, bshift, false, CandidateStrategy::BruteForce);
    CHECK(hits.crossings.empty());
}

TEST_CASE("strategies agree on random curve soups") {
    std::mt19937_64 rng(314);
    std::uniform_real_distribution<double> amp(-0.8, 0.8);
    for (int trial = 0; trial < 25; ++trial) {
        double a1 = amp(rng), a2 = amp(rng), b1 = amp(rng), b2 = amp(rng);
        double p1 = amp(rng), p2 = amp(rng);
        auto wiggly = PlanarCurve::analytic(
            1, 0.0, 2.0 * M_PI,
            [=](double t) {
                return vec2(a1 * std::cos(t) + a2 * std::cos(2 * t) + 0.1 * p1,
                            b1 * std::sin(t) + b2 * std::sin(2 * t) + 0.1 * p2);
            },
            [=](double t) {
                return vec2(-a1 * std::sin(t) - 2 * a2 * std::sin(2 * t),
                            b1 * std::cos(t) + 2 * b2 * std::cos(2 * t));
            },
            true);
        if (!wiggly.immersed()) continue;
        const auto spec = make_polyline(wiggly, 777);
        IntersectionResult h1, h2;
        try {
            h1 = find_crossings(spec, spec, true, CandidateStrategy::SpatialHash);
            h2 = find_crossings(spec, spec, true, CandidateStrategy::BruteForce);
        } catch (const degenerate_input_error&) {
            continue;
        }
        REQUIRE(h1.crossings.size() == h2.crossings.size());
        for (size_t i = 0; i < h1.crossings.size(); ++i) {
            CHECK(std::abs(h1.crossings[i].s - h2.crossings[i].s) <= 1e-7);
            CHECK(std::abs(h1.crossings[i].t - h2.crossings[i].t) <= 1e-7);
        }
    }
}
