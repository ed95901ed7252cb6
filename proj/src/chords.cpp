#include "contactlab/chords.hpp"

#include "contactlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace contactlab {

namespace {

// A stretch of near-zero planar speed longer than tau_param means a vertical
// Reeb arc: every pair of its points projects to one planar point.
void reject_vertical_arcs(const PolylineSpec& spec, double tau_param) {
    for (size_t i = 0; i + 1 < spec.points.size(); ++i) {
        const double planar_len = (spec.points[i + 1] - spec.points[i]).norm();
        const double param_len = spec.params[i + 1] - spec.params[i];
        if (param_len > tau_param && planar_len < 1e-12 * std::max(1.0, spec.points[i].norm()))
            throw degenerate_input_error("find chords: vertical Reeb arc in the projection");
    }
}

ChordReport assemble_report(const SpaceCurve& a, const SpaceCurve& b,
                            const IntersectionResult& hits) {
    ChordReport report;
    auto to_chord = [&](const Crossing& c) {
        ReebChord chord;
        chord.s = c.s;
        chord.t = c.t;
        chord.planar_point = c.point;
        chord.signed_delta_z = b.position(c.t)[b.dim() - 1] - a.position(c.s)[a.dim() - 1];
        chord.length = std::abs(chord.signed_delta_z);
        chord.transverse = c.transverse;
        return chord;
    };
    for (const Crossing& c : hits.crossings) report.chords.push_back(to_chord(c));
    for (const Crossing& c : hits.suspects) report.suspects.push_back(to_chord(c));

    report.count = static_cast<long>(report.chords.size());
    if (!report.chords.empty()) {
        report.min_length = std::numeric_limits<double>::infinity();
        for (const ReebChord& ch : report.chords) {
            report.min_length = std::min(report.min_length, ch.length);
            report.max_length = std::max(report.max_length, ch.length);
            report.total_length += ch.length;
        }
    }
    return report;
}

} // namespace

ChordReport find_self_chords(const SpaceCurve& c, CandidateStrategy strategy, int target) {
    if (c.n() != 1) throw contract_error("find_self_chords: curves in dimension 3 only");
    if (!c.immersed()) throw degenerate_input_error("find_self_chords: curve is not immersed");
    const PlanarCurve proj = lagrangian_projection(c);
    const PolylineSpec spec = make_polyline(proj, target);
    const double tau_param = kParamDedupFactor * c.domain_length();
    reject_vertical_arcs(spec, tau_param);
    const auto hits = find_crossings(spec, spec, true, strategy, kPlanarMatchTol, tau_param);
    return assemble_report(c, c, hits);
}

ChordReport find_chords_between(const SpaceCurve& a, const SpaceCurve& b,
                                CandidateStrategy strategy, int target) {
    if (a.rep() == b.rep()) return find_self_chords(a, strategy, target);
    if (a.n() != 1 || b.n() != 1)
        throw contract_error("find_chords_between: curves in dimension 3 only");
    if (!a.immersed() || !b.immersed())
        throw degenerate_input_error("find_chords_between: curve is not immersed");
    const PolylineSpec sa = make_polyline(lagrangian_projection(a), target);
    const PolylineSpec sb = make_polyline(lagrangian_projection(b), target);
    const double tau_param = kParamDedupFactor * std::max(a.domain_length(), b.domain_length());
    reject_vertical_arcs(sa, tau_param);
    reject_vertical_arcs(sb, tau_param);
    const auto hits = find_crossings(sa, sb, false, strategy, kPlanarMatchTol, tau_param);
    return assemble_report(a, b, hits);
}

double action_defect_constant(const SpaceCurve& c) {
    const PlanarCurve proj = lagrangian_projection(c);
    if (!proj.immersed())
        throw degenerate_input_error("action_defect_constant: projection is not immersed");
    const double z0 = c.position(c.t0())[c.dim() - 1];
    const LegendrianCurve lift = legendrian_lift(proj, z0);

    // The projection must be embedded: any lift self-chord certifies a planar
    // double point.
    const ChordReport chords = find_self_chords(lift.curve());
    if (chords.count > 0 || !chords.suspects.empty())
        throw degenerate_input_error("action_defect_constant: projection is not embedded");

    const double z_end = c.position(c.t1())[c.dim() - 1];
    const double lift_end = lift.curve().position(c.t1())[c.dim() - 1];
    return 0.1 * std::abs(z_end - lift_end);
}

ObstructionResult obstruction_experiment(const SpaceCurve& c, const std::vector<double>& epsilons,
                                         bool strict) {
    if (epsilons.empty()) throw contract_error("obstruction_experiment: empty epsilon list");
    if (!c.immersed())
        throw degenerate_input_error("obstruction_experiment: curve is not immersed");

    // Classify: a curve whose velocity is everywhere parallel to the Reeb
    // field is a Reeb-flow segment; it admits chordless spiral approximants.
    double max_planar_ratio = 0.0;
    double min_planar_ratio = std::numeric_limits<double>::infinity();
    for (double t : c.sample_params(1025)) {
        const Vec d = c.derivative(t);
        const double r = d.head(2).norm() / d.norm();
        max_planar_ratio = std::max(max_planar_ratio, r);
        min_planar_ratio = std::min(min_planar_ratio, r);
    }
    const bool reeb_segment = max_planar_ratio < kParallelTol;

    ObstructionResult result;
    const DefectReport defect = legendrian_defect(c);
    result.total_defect = defect.total_defect;

    for (double eps : epsilons) {
        ObstructionRow row;
        row.epsilon = eps;
        row.reeb_mode = reeb_segment;
        if (reeb_segment) {
            const Vec p0 = c.position(c.t0());
            const double gain = c.position(c.t1())[2] - p0[2];
            const LegendrianCurve spiral =
                spiral_approximation(gain, Vec2(p0[0], p0[1]), eps);
            Vec offset = Vec::Zero(3);
            offset[2] = p0[2];
            const SpaceCurve shifted = spiral.curve().translated(offset);
            row.c0_dist = c0_distance(shifted, c);
            const ChordReport chords = find_self_chords(shifted);
            row.chord_count = chords.count;
            row.min_len = chords.count ? chords.min_length : 0.0;
            row.total_len = chords.total_length;
            row.C = 0.0;
            row.accounting_ok = true; // vacuous: nothing to account for
        } else {
            const WiggleResult wiggle = wiggle_approximation_detailed(c, eps);
            row.c0_dist = c0_distance(wiggle.curve.curve(), c);
            const ChordReport chords = find_self_chords(wiggle.curve.curve());
            row.chord_count = chords.count;
            row.min_len = chords.count ? chords.min_length : 0.0;
            row.total_len = chords.total_length;
            row.C = action_defect_constant(c);
            const double expected = std::abs(result.total_defect);
            row.accounting_ok = std::abs(row.total_len - expected) <= 0.1 * expected;
            if (row.chord_count < 1) result.all_have_chords = false;
            if (!row.accounting_ok) result.accounting_all_ok = false;
        }
        result.rows.push_back(row);
    }

    if (strict && !reeb_segment) {
        if (!result.all_have_chords)
            throw degenerate_input_error("obstruction_experiment: an approximant has no chords");
        if (!result.accounting_all_ok)
            throw degenerate_input_error(
                "obstruction_experiment: total chord length is not within 10% of the defect");
    }
    return result;
}

std::string obstruction_csv(const ObstructionResult& r) {
    std::ostringstream out;
    out << "epsilon,c0_dist,chord_count,min_len,total_len,C\n";
    for (const ObstructionRow& row : r.rows) {
        out << format_g17(row.epsilon) << ',' << format_g17(row.c0_dist) << ',' << row.chord_count
            << ',' << format_g17(row.min_len) << ',' << format_g17(row.total_len) << ','
            << format_g17(row.C) << '\n';
    }
    return out.str();
}

std::string chords_json(const ChordReport& r) {
    std::ostringstream out;
    out << "{\n  \"count\": " << r.count << ",\n  \"min_length\": " << format_g17(r.min_length)
        << ",\n  \"max_length\": " << format_g17(r.max_length)
        << ",\n  \"total_length\": " << format_g17(r.total_length) << ",\n  \"chords\": [";
    for (size_t i = 0; i < r.chords.size(); ++i) {
        const ReebChord& ch = r.chords[i];
        out << (i ? ",\n    " : "\n    ");
        out << "{\"s\": " << format_g17(ch.s) << ", \"t\": " << format_g17(ch.t)
            << ", \"x\": " << format_g17(ch.planar_point.x())
            << ", \"y\": " << format_g17(ch.planar_point.y())
            << ", \"delta_z\": " << format_g17(ch.signed_delta_z)
            << ", \"length\": " << format_g17(ch.length)
            << ", \"transverse\": " << (ch.transverse ? "true" : "false") << "}";
    }
    out << (r.chords.empty() ? "]" : "\n  ]") << ",\n  \"suspect_count\": " << r.suspects.size()
        << "\n}\n";
    return out.str();
}

namespace {

double point_polyline_distance(const std::vector<Vec>& pts, const Vec& p) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const Vec& a = pts[i];
        const Vec& b = pts[i + 1];
        const Vec d = b - a;
        const double dd = d.squaredNorm();
        const double w = dd > 0.0 ? std::clamp((p - a).dot(d) / dd, 0.0, 1.0) : 0.0;
        best = std::min(best, (a + w * d - p).norm());
    }
    return best;
}

template <typename CurveT>
bool neighbourhood_contains_impl(const CurveT& c, const Vec& p, double kappa) {
    if (kappa < 0.0) throw contract_error("neighbourhood_contains: kappa must be nonnegative");
    if (p.size() != c.dim())
        throw contract_error("neighbourhood_contains: point dimension mismatch");
    std::vector<Vec> pts;
    for (double t : c.sample_params()) pts.push_back(c.position(t));
    return point_polyline_distance(pts, p) <= kappa;
}

} // namespace

bool neighbourhood_contains(const SpaceCurve& c, const Vec& p, double kappa) {
    return neighbourhood_contains_impl(c, p, kappa);
}
bool neighbourhood_contains(const PlanarCurve& c, const Vec& p, double kappa) {
    return neighbourhood_contains_impl(c, p, kappa);
}

} // namespace contactlab
