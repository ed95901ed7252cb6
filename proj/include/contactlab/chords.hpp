#pragma once

#include "contactlab/curve.hpp"
#include "contactlab/intersection.hpp"

namespace contactlab {

// Reeb chord witnessed by a planar double point: the curve(s) visit the same
// point of the plane at parameters s and t with a z-gap. Positive sign means
// the Reeb flow runs from the point on the first curve to the second.
struct ReebChord {
    double s = 0.0, t = 0.0;
    Vec2 planar_point = Vec2::Zero();
    double signed_delta_z = 0.0;
    double length = 0.0;
    bool transverse = true;
};

struct ChordReport {
    std::vector<ReebChord> chords;
    std::vector<ReebChord> suspects; // tangential planar contacts
    double min_length = 0.0;
    double max_length = 0.0;
    double total_length = 0.0;
    long count = 0;
};

// Self Reeb chords of a curve: transverse self-intersections of its planar
// projection with their z-gaps. Vertical arcs (planar speed ~ 0 over a
// parameter stretch) are rejected as degenerate: chords form a continuum.
ChordReport find_self_chords(const SpaceCurve& c,
                             CandidateStrategy strategy = CandidateStrategy::SpatialHash,
                             int target = 0);

// Chords between two curves; identical inputs delegate to find_self_chords.
ChordReport find_chords_between(const SpaceCurve& a, const SpaceCurve& b,
                                CandidateStrategy strategy = CandidateStrategy::SpatialHash,
                                int target = 0);

// C = |z(t1) - ztilde(t1)| / 10 where ztilde is the Legendrian lift of the
// projection started at the curve's initial z. Requires an embedded
// projection, checked through the lift's self-chords.
double action_defect_constant(const SpaceCurve& c);

struct ObstructionRow {
    double epsilon = 0.0;
    double c0_dist = 0.0;
    long chord_count = 0;
    double min_len = 0.0;
    double total_len = 0.0;
    double C = 0.0;
    bool accounting_ok = false; // total within 10% of |total defect|
    bool reeb_mode = false;     // vertical input approximated by spirals
};

struct ObstructionResult {
    std::vector<ObstructionRow> rows;
    double total_defect = 0.0;
    bool all_have_chords = true;
    bool accounting_all_ok = true;
};

// For each eps, build the Legendrian approximant and report its chords.
// Curves parallel to the Reeb field are approximated by chordless spirals
// (the Reeb-flow exception); all others go through the wiggle construction
// and must produce at least one chord. With strict = true a failed chord or
// accounting check throws.
ObstructionResult obstruction_experiment(const SpaceCurve& c, const std::vector<double>& epsilons,
                                         bool strict = false);

std::string obstruction_csv(const ObstructionResult& r);
std::string chords_json(const ChordReport& r);

// Closed kappa-neighbourhood membership: distance from p to the curve's
// polyline is at most kappa.
bool neighbourhood_contains(const SpaceCurve& c, const Vec& p, double kappa);
bool neighbourhood_contains(const PlanarCurve& c, const Vec& p, double kappa);

} // namespace contactlab
