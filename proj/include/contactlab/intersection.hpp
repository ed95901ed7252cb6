#pragma once

#include "contactlab/curve.hpp"

namespace contactlab {

enum class CandidateStrategy { SpatialHash, BruteForce };

// Polyline witness of a planar curve: node parameters/positions for candidate
// generation plus the true evaluator for bisection refinement.
struct PolylineSpec {
    std::vector<double> params;
    std::vector<Vec2> points;
    std::function<Vec2(double)> eval;
    bool closed = false;
    double t0 = 0.0, t1 = 1.0;
};

PolylineSpec make_polyline(const PlanarCurve& c, int target = 0);

struct Crossing {
    double s = 0.0, t = 0.0; // parameters on the two curves (s on a, t on b)
    Vec2 point = Vec2::Zero();
    bool transverse = true;
};

struct IntersectionResult {
    std::vector<Crossing> crossings;
    std::vector<Crossing> suspects; // tangential / near-parallel contacts
};

// All planar intersection points between two polyline-backed curves. In self
// mode pass the same spec twice; parameter-adjacent segment pairs (gap below
// tau_param, wrap-aware on closed curves) are skipped as trivial coincidences.
// Collinear overlapping segments raise degenerate_input_error.
IntersectionResult find_crossings(const PolylineSpec& a, const PolylineSpec& b, bool self,
                                  CandidateStrategy strategy,
                                  double tau_xy = kPlanarMatchTol, double tau_param = -1.0);

namespace detail {

enum class SegHit { None, Proper, Touch, Overlap };

struct SegHitResult {
    SegHit kind = SegHit::None;
    double u = 0.0, v = 0.0; // parameters in [0,1] along the two segments
};

SegHitResult segment_hit(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2);

} // namespace detail

} // namespace contactlab
