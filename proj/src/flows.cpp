#include "contactlab/flows.hpp"

#include "contactlab/contact.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace contactlab {

namespace {

// State layout: [point (d) | Dphi columns (d*d)] when variational.
struct RhsContext {
    const ContactHamiltonian* h;
    int d;
    bool variational;
};

Vec rhs(const RhsContext& ctx, double s, const Vec& state) {
    const int d = ctx.d;
    const Vec p = state.head(d);
    Vec out(state.size());
    out.head(d) = contact_vector_field(*ctx.h, p, s);
    if (ctx.variational) {
        const Eigen::MatrixXd J = contact_field_jacobian(*ctx.h, p, s);
        Eigen::Map<const Eigen::MatrixXd> Y(state.data() + d, d, d);
        Eigen::Map<Eigen::MatrixXd> dY(out.data() + d, d, d);
        dY = J * Y;
    }
    return out;
}

Vec rk4_step(const RhsContext& ctx, double s, const Vec& y, double h) {
    const Vec k1 = rhs(ctx, s, y);
    const Vec k2 = rhs(ctx, s + 0.5 * h, y + 0.5 * h * k1);
    const Vec k3 = rhs(ctx, s + 0.5 * h, y + 0.5 * h * k2);
    const Vec k4 = rhs(ctx, s + h, y + h * k3);
    return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace

FlowedPoint flow_point(const ContactHamiltonian& h, const Vec& p, double t,
                       const FlowOptions& opts, FlowStats* stats) {
    if (!std::isfinite(t)) throw contract_error("flow_point: time must be finite");
    const int d = static_cast<int>(p.size());
    if (d < 3 || d % 2 == 0) throw contract_error("flow_point: point must live in R^{2n+1}");
    const int n = (d - 1) / 2;
    const ContactModel model(n);

    RhsContext ctx{&h, d, opts.variational};
    Vec state(opts.variational ? d + d * d : d);
    state.head(d) = p;
    if (opts.variational) {
        // Columns: contact frame e_{x,i}, e_{y,i} at p, then the Reeb field.
        Eigen::Map<Eigen::MatrixXd> Y(state.data() + d, d, d);
        Y.setZero();
        for (int i = 0; i < n; ++i) {
            Vec frame = Vec::Zero(2 * n);
            frame[i] = 1.0;
            Y.col(i) = model.frame_to_ambient(p, frame);
            frame.setZero();
            frame[n + i] = 1.0;
            Y.col(n + i) = model.frame_to_ambient(p, frame);
        }
        Y.col(d - 1) = model.reeb();
    }

    const long steps = std::max(1L, static_cast<long>(std::ceil(std::abs(t) * opts.steps_per_unit)));
    const double dt = t / static_cast<double>(steps);

    FlowStats local_stats;
    for (long i = 0; i < steps; ++i) {
        const double s = dt * static_cast<double>(i);
        const Vec next = rk4_step(ctx, s, state, dt);
        if (opts.monitor_stride > 0 && (i % opts.monitor_stride) == 0) {
            const Vec half = rk4_step(ctx, s + 0.5 * dt, rk4_step(ctx, s, state, 0.5 * dt), 0.5 * dt);
            const double scale = 1.0 + next.cwiseAbs().maxCoeff();
            const double err = (next - half).cwiseAbs().maxCoeff() / 15.0 / scale;
            local_stats.max_local_error = std::max(local_stats.max_local_error, err);
            if (err > opts.monitor_tol)
                throw integration_error("flow_point: step error monitor exceeded " +
                                        format_g17(opts.monitor_tol));
        }
        state = next;
        ++local_stats.steps;
    }

    FlowedPoint out;
    out.point = state.head(d);
    if (opts.variational) {
        Eigen::Map<const Eigen::MatrixXd> Y(state.data() + d, d, d);
        double residual = 0.0;
        for (int i = 0; i < 2 * n; ++i)
            residual = std::max(residual, std::abs(model.alpha(out.point, Y.col(i))));
        const double reeb_pairing = model.alpha(out.point, Y.col(d - 1));
        if (!(reeb_pairing > 0.0))
            throw integration_error("flow_point: conformal factor is not positive");
        out.conformal_residual = residual;
        out.conformal_factor_log = std::log(reeb_pairing);
    }
    if (stats) *stats = local_stats;
    return out;
}

CurveFlowResult flow_curve(const ContactHamiltonian& h, const SpaceCurve& c, double t,
                           const FlowOptions& opts, int resolution) {
    const auto params = c.sample_params(resolution);
    std::vector<Vec> pts;
    pts.reserve(params.size());
    CurveFlowResult out{t, c, {}, {}, {}};
    for (double u : params) {
        FlowStats stats;
        const FlowedPoint fp = flow_point(h, c.position(u), t, opts, &stats);
        pts.push_back(fp.point);
        out.residuals.push_back(fp.conformal_residual);
        out.factors_log.push_back(fp.conformal_factor_log);
        out.stats.steps += stats.steps;
        out.stats.max_local_error = std::max(out.stats.max_local_error, stats.max_local_error);
    }
    out.mapped = SpaceCurve::sampled(c.n(), params, std::move(pts), c.closed());
    return out;
}

double tangency_margin_field(const std::function<Vec(const Vec&)>& field, const SpaceCurve& c,
                             int samples) {
    if (c.n() != 1) throw contract_error("tangency_margin: curves in dimension 3 only");
    if (!c.immersed()) throw degenerate_input_error("tangency_margin: curve is not immersed");
    const ContactModel model(1);
    const Vec reeb = model.reeb();

    double margin = std::numeric_limits<double>::infinity();
    for (double t : c.sample_params(samples)) {
        const Vec d = c.derivative(t);
        if (model.reeb_parallel(d))
            throw degenerate_input_error("tangency_margin: Reeb field tangent to the curve");
        const Vec x = field(c.position(t));
        const double xn = x.norm();
        if (xn < 1e-300) return 0.0;
        Eigen::Matrix3d m;
        m.col(0) = d;
        m.col(1) = reeb;
        m.col(2) = x;
        margin = std::min(margin, std::abs(m.determinant()) / (d.norm() * xn));
    }
    return margin;
}

double tangency_margin(const ContactHamiltonian& h, const SpaceCurve& c, int samples) {
    return tangency_margin_field([&](const Vec& p) { return contact_vector_field(h, p); }, c,
                                 samples);
}

DisplacementResult displacement_experiment(const ContactHamiltonian& h, const SpaceCurve& c,
                                           const std::vector<double>& times,
                                           const FlowOptions& opts,
                                           const std::optional<Box>& norm_box, int resolution) {
    if (times.empty()) throw contract_error("displacement_experiment: empty time list");
    DisplacementResult result;
    result.margin = tangency_margin(h, c, std::max(resolution, 4096));

    double osc = 0.0;
    if (norm_box) osc = hofer_osc_norm(h, *norm_box, 64).osc_norm;

    // Only mapped points are needed here; skip the linearized flow.
    FlowOptions point_opts = opts;
    point_opts.variational = false;

    for (double t : times) {
        DisplacementRow row;
        row.time = t;
        row.margin = result.margin;
        try {
            const CurveFlowResult flowed = flow_curve(h, c, t, point_opts, resolution);
            // Matching polyline resolutions keep overlapping traces exactly
            // collinear, so coincident images flag as degenerate rather than
            // showing sampling crosstalk.
            const ChordReport chords =
                find_chords_between(c, flowed.mapped, CandidateStrategy::SpatialHash, resolution);
            row.chord_count = chords.count;
            row.min_len = chords.count ? chords.min_length : 0.0;
            row.total_len = chords.total_length;
            row.planar_hits = chords.count + static_cast<long>(chords.suspects.size());
            row.disjoint = row.planar_hits == 0;
        } catch (const degenerate_input_error&) {
            row.degenerate = true;
        }
        if (row.disjoint && row.chord_count == 0) {
            if (!result.first_disjoint_time) result.first_disjoint_time = t;
            if (norm_box) {
                const double bound = std::abs(t) * osc;
                if (!result.energy_upper_bound || bound < *result.energy_upper_bound)
                    result.energy_upper_bound = bound;
            }
        }
        result.rows.push_back(row);
    }
    return result;
}

std::string displacement_csv(const DisplacementResult& r) {
    std::ostringstream out;
    out << "time,chord_count,min_len,total_len,planar_hits,margin,degenerate,disjoint\n";
    for (const DisplacementRow& row : r.rows) {
        out << format_g17(row.time) << ',' << row.chord_count << ',' << format_g17(row.min_len)
            << ',' << format_g17(row.total_len) << ',' << row.planar_hits << ','
            << format_g17(row.margin) << ',' << (row.degenerate ? 1 : 0) << ','
            << (row.disjoint ? 1 : 0) << '\n';
    }
    return out.str();
}

namespace {

struct GridScan {
    double max_val = -std::numeric_limits<double>::infinity();
    double min_val = std::numeric_limits<double>::infinity();
};

GridScan scan_box(const ContactHamiltonian& h, const Box& box, int resolution, double s) {
    const int d = static_cast<int>(box.lo.size());
    std::vector<int> idx(static_cast<size_t>(d), 0);
    Vec p(d);
    GridScan scan;
    for (;;) {
        for (int k = 0; k < d; ++k)
            p[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * idx[static_cast<size_t>(k)] / resolution;
        const double v = h.value(p, s);
        scan.max_val = std::max(scan.max_val, v);
        scan.min_val = std::min(scan.min_val, v);
        int k = 0;
        while (k < d && ++idx[static_cast<size_t>(k)] > resolution) {
            idx[static_cast<size_t>(k)] = 0;
            ++k;
        }
        if (k == d) break;
    }
    return scan;
}

NormReport norm_at_resolution(const ContactHamiltonian& h, const Box& box, int resolution,
                              int time_samples) {
    NormReport report;
    report.box = box;
    report.resolution = resolution;

    if (!h.time_dependent()) {
        const GridScan scan = scan_box(h, box, resolution, 0.0);
        report.osc_norm = scan.max_val - scan.min_val;
        report.positive_norm = scan.max_val;
        report.min_integral = scan.min_val;
        report.time_samples = 1;
        return report;
    }

    const int S = std::max(64, time_samples);
    report.time_samples = S;
    double osc = 0.0, pos = 0.0, mini = 0.0;
    for (int j = 0; j < S; ++j) {
        const double s = static_cast<double>(j) / (S - 1);
        const double w = (j == 0 || j == S - 1) ? 0.5 : 1.0;
        const GridScan scan = scan_box(h, box, resolution, s);
        osc += w * (scan.max_val - scan.min_val);
        pos += w * scan.max_val;
        mini += w * scan.min_val;
    }
    const double ds = 1.0 / (S - 1);
    report.osc_norm = osc * ds;
    report.positive_norm = pos * ds;
    report.min_integral = mini * ds;
    return report;
}

} // namespace

NormReport hofer_osc_norm(const ContactHamiltonian& h, const Box& box, int resolution,
                          int time_samples) {
    if (box.lo.size() != box.hi.size() || box.lo.size() == 0)
        throw contract_error("hofer_osc_norm: malformed box");
    for (int k = 0; k < box.lo.size(); ++k)
        if (!(box.hi[k] > box.lo[k])) throw contract_error("hofer_osc_norm: empty box");
    if (resolution < 2) throw contract_error("hofer_osc_norm: resolution too small");

    NormReport report = norm_at_resolution(h, box, resolution, time_samples);
    if (resolution % 2 == 0 && resolution >= 4) {
        const NormReport coarse = norm_at_resolution(h, box, resolution / 2, time_samples);
        report.refinement_error = std::abs(report.osc_norm - coarse.osc_norm);
    }
    return report;
}

} // namespace contactlab
