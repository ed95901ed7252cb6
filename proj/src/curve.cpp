#include "contactlab/curve.hpp"

#include <algorithm>
#include <cmath>

namespace contactlab {

namespace detail {

namespace {

constexpr int kMinSampledNodes = 16;
constexpr int kDefaultAnalyticGrid = 1024;
constexpr int kQuadratureRefine = 4;

double clamp_param(const CurveRep& rep, double t) {
    if (rep.closed && (t < rep.t0 || t > rep.t1)) {
        const double len = rep.t1 - rep.t0;
        t = rep.t0 + std::fmod(std::fmod(t - rep.t0, len) + len, len);
    }
    return std::min(std::max(t, rep.t0), rep.t1);
}

} // namespace

int CurveRep::segment_index(double t) const {
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    int i = static_cast<int>(it - ts.begin()) - 1;
    i = std::max(0, std::min(i, static_cast<int>(ts.size()) - 2));
    return i;
}

Vec CurveRep::position(double t) const {
    t = clamp_param(*this, t);
    if (!sampled) return pos_fn(t);
    const int i = segment_index(t);
    const double w = (t - ts[i]) / (ts[i + 1] - ts[i]);
    return (1.0 - w) * pts[i] + w * pts[i + 1];
}

Vec CurveRep::derivative(double t) const {
    t = clamp_param(*this, t);
    if (!sampled) return deriv_fn(t);
    const int i = segment_index(t);
    // Exactly at a node: the cached quadratic-interpolant derivative; inside a
    // segment: the polyline slope.
    if (t == ts[i]) return node_derivs[static_cast<size_t>(i)];
    if (t == ts[i + 1]) return node_derivs[static_cast<size_t>(i) + 1];
    return (pts[i + 1] - pts[i]) / (ts[i + 1] - ts[i]);
}

RepPtr make_analytic_rep(int dim, double t0, double t1, std::function<Vec(double)> pos,
                         std::function<Vec(double)> deriv, bool closed,
                         std::vector<double> preferred) {
    if (!(t1 > t0)) throw contract_error("curve: empty parameter domain");
    if (!pos || !deriv) throw contract_error("curve: analytic form needs position and derivative");
    auto rep = std::make_shared<CurveRep>();
    rep->dim = dim;
    rep->t0 = t0;
    rep->t1 = t1;
    rep->closed = closed;
    rep->sampled = false;
    rep->pos_fn = std::move(pos);
    rep->deriv_fn = std::move(deriv);
    if (!preferred.empty()) {
        std::sort(preferred.begin(), preferred.end());
        preferred.erase(std::unique(preferred.begin(), preferred.end()), preferred.end());
        if (preferred.front() < t0 || preferred.back() > t1)
            throw contract_error("curve: preferred nodes outside the domain");
    }
    rep->preferred_nodes = std::move(preferred);

    // Immersion estimate over a coarse probe grid plus preferred nodes.
    double min_speed = std::numeric_limits<double>::infinity();
    for (double t : linspace(t0, t1, 257)) min_speed = std::min(min_speed, rep->deriv_fn(t).norm());
    for (double t : rep->preferred_nodes) min_speed = std::min(min_speed, rep->deriv_fn(t).norm());
    rep->min_speed = min_speed;
    return rep;
}

RepPtr make_sampled_rep(int dim, std::vector<double> ts, std::vector<Vec> pts, bool closed) {
    if (ts.size() != pts.size()) throw contract_error("curve: parameter/sample count mismatch");
    if (static_cast<int>(ts.size()) < kMinSampledNodes)
        throw contract_error("curve: sampled curves need at least 16 nodes");
    for (size_t i = 1; i < ts.size(); ++i)
        if (!(ts[i] > ts[i - 1]))
            throw contract_error("curve: sample parameters must be strictly increasing");
    for (const Vec& p : pts) {
        if (p.size() != dim) throw contract_error("curve: sample dimension mismatch");
        if (!p.allFinite()) throw contract_error("curve: non-finite sample");
    }

    auto rep = std::make_shared<CurveRep>();
    rep->dim = dim;
    rep->t0 = ts.front();
    rep->t1 = ts.back();
    rep->closed = closed;
    rep->sampled = true;
    rep->ts = std::move(ts);
    rep->pts = std::move(pts);

    const int m = static_cast<int>(rep->ts.size());
    rep->node_derivs.resize(static_cast<size_t>(m));
    auto node = [&](int i) -> const Vec& { return rep->pts[static_cast<size_t>(i)]; };
    for (int i = 0; i < m; ++i) {
        int a, b, c;
        if (rep->closed && i == 0) {
            // wrap: previous node is m-2 shifted by the period
            const double period = rep->t1 - rep->t0;
            rep->node_derivs[0] = quadratic_interp_derivative(
                rep->ts[0], rep->ts[m - 2] - period, node(m - 2), rep->ts[0], node(0), rep->ts[1],
                node(1));
            continue;
        }
        if (rep->closed && i == m - 1) {
            const double period = rep->t1 - rep->t0;
            rep->node_derivs[static_cast<size_t>(i)] = quadratic_interp_derivative(
                rep->ts[m - 1], rep->ts[m - 2], node(m - 2), rep->ts[m - 1], node(m - 1),
                rep->ts[1] + period, node(1));
            continue;
        }
        if (i == 0) {
            a = 0; b = 1; c = 2;
        } else if (i == m - 1) {
            a = m - 3; b = m - 2; c = m - 1;
        } else {
            a = i - 1; b = i; c = i + 1;
        }
        rep->node_derivs[static_cast<size_t>(i)] = quadratic_interp_derivative(
            rep->ts[static_cast<size_t>(i)], rep->ts[static_cast<size_t>(a)], node(a),
            rep->ts[static_cast<size_t>(b)], node(b), rep->ts[static_cast<size_t>(c)], node(c));
    }

    double min_speed = std::numeric_limits<double>::infinity();
    for (const Vec& d : rep->node_derivs) min_speed = std::min(min_speed, d.norm());
    rep->min_speed = min_speed;
    return rep;
}

std::vector<double> CurveBase::sample_params(int target) const {
    if (rep_->sampled && target <= 0) return rep_->ts;
    std::vector<double> out;
    if (rep_->sampled) {
        out = rep_->ts;
    } else if (!rep_->preferred_nodes.empty()) {
        out = rep_->preferred_nodes;
        if (out.front() > rep_->t0) out.insert(out.begin(), rep_->t0);
        if (out.back() < rep_->t1) out.push_back(rep_->t1);
    }
    // Analytic curves always merge a uniform grid: preferred nodes mark
    // breakpoints but may be sparse between them.
    int uniform = target > 0 ? target : 0;
    if (!rep_->sampled && uniform <= 0) uniform = kDefaultAnalyticGrid + 1;
    if (uniform > 1) {
        auto grid = linspace(rep_->t0, rep_->t1, uniform);
        out.insert(out.end(), grid.begin(), grid.end());
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return out;
}

} // namespace detail

SpaceCurve space_curve_from_rep(detail::RepPtr rep) { return SpaceCurve(std::move(rep)); }
PlanarCurve planar_curve_from_rep(detail::RepPtr rep) { return PlanarCurve(std::move(rep)); }

SpaceCurve SpaceCurve::analytic(int n, double t0, double t1, std::function<Vec(double)> pos,
                                std::function<Vec(double)> deriv, bool closed,
                                std::vector<double> preferred_nodes) {
    if (n < 1) throw contract_error("SpaceCurve: n must be positive");
    return SpaceCurve(detail::make_analytic_rep(2 * n + 1, t0, t1, std::move(pos),
                                                std::move(deriv), closed,
                                                std::move(preferred_nodes)));
}

SpaceCurve SpaceCurve::sampled(int n, std::vector<double> ts, std::vector<Vec> pts, bool closed) {
    if (n < 1) throw contract_error("SpaceCurve: n must be positive");
    return SpaceCurve(detail::make_sampled_rep(2 * n + 1, std::move(ts), std::move(pts), closed));
}

PlanarCurve PlanarCurve::analytic(int n, double t0, double t1, std::function<Vec(double)> pos,
                                  std::function<Vec(double)> deriv, bool closed,
                                  std::vector<double> preferred_nodes) {
    if (n < 1) throw contract_error("PlanarCurve: n must be positive");
    return PlanarCurve(detail::make_analytic_rep(2 * n, t0, t1, std::move(pos), std::move(deriv),
                                                 closed, std::move(preferred_nodes)));
}

PlanarCurve PlanarCurve::sampled(int n, std::vector<double> ts, std::vector<Vec> pts, bool closed) {
    if (n < 1) throw contract_error("PlanarCurve: n must be positive");
    return PlanarCurve(detail::make_sampled_rep(2 * n, std::move(ts), std::move(pts), closed));
}

namespace {

template <typename CurveT>
CurveT resample_impl(const CurveT& c, int nodes) {
    auto params = c.sample_params(nodes);
    std::vector<Vec> pts;
    pts.reserve(params.size());
    for (double t : params) pts.push_back(c.position(t));
    auto rep = detail::make_sampled_rep(c.dim(), std::move(params), std::move(pts), c.closed());
    if (c.provenance()) {
        auto mut = std::make_shared<detail::CurveRep>(*rep);
        mut->provenance = c.provenance();
        rep = mut;
    }
    if constexpr (std::is_same_v<CurveT, SpaceCurve>)
        return space_curve_from_rep(rep);
    else
        return planar_curve_from_rep(rep);
}

} // namespace

SpaceCurve SpaceCurve::resampled(int nodes) const { return resample_impl(*this, nodes); }
PlanarCurve PlanarCurve::resampled(int nodes) const { return resample_impl(*this, nodes); }

SpaceCurve SpaceCurve::with_provenance(Provenance p) const {
    auto mut = std::make_shared<detail::CurveRep>(*rep_);
    mut->provenance = std::move(p);
    return SpaceCurve(mut);
}

PlanarCurve PlanarCurve::with_provenance(Provenance p) const {
    auto mut = std::make_shared<detail::CurveRep>(*rep_);
    mut->provenance = std::move(p);
    return PlanarCurve(mut);
}

SpaceCurve SpaceCurve::translated(const Vec& offset) const {
    if (offset.size() != dim()) throw contract_error("translated: offset dimension mismatch");
    if (rep_->sampled) {
        auto pts = rep_->pts;
        for (Vec& p : pts) p += offset;
        auto rep = detail::make_sampled_rep(dim(), rep_->ts, std::move(pts), closed());
        return SpaceCurve(rep);
    }
    auto base = rep_;
    Vec off = offset;
    return SpaceCurve(detail::make_analytic_rep(
        dim(), t0(), t1(), [base, off](double t) { return Vec(base->position(t) + off); },
        [base](double t) { return base->derivative(t); }, closed(), rep_->preferred_nodes));
}

namespace {

// Quadrature grid for analytic curves: preferred nodes merged with a uniform
// grid, refined 4x; Simpson needs cell midpoints, which analytic curves give.
std::vector<double> quadrature_grid(const detail::CurveBase& c, int grid) {
    const int base = grid > 0 ? grid : detail::kDefaultAnalyticGrid;
    return c.sample_params(base * detail::kQuadratureRefine + 1);
}

double simpson_on_grid(const std::vector<double>& ts, const std::function<double(double)>& f) {
    double acc = 0.0;
    for (size_t i = 0; i + 1 < ts.size(); ++i) {
        const double a = ts[i], b = ts[i + 1];
        acc += (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }
    return acc;
}

double alpha_of_derivative(const ContactModel& model, const Vec& p, const Vec& d) {
    return model.alpha(p, d);
}

} // namespace

namespace detail {
constexpr int kDefaultAnalyticGridPublic = kDefaultAnalyticGrid;
}

DefectReport legendrian_defect(const SpaceCurve& c, int grid) {
    if (!c.immersed())
        throw degenerate_input_error("legendrian_defect: curve is not immersed");
    const ContactModel model(c.n());
    DefectReport out;
    out.argmax_param = c.t0();

    if (c.is_sampled()) {
        const auto& rep = *c.rep();
        for (size_t i = 0; i < rep.ts.size(); ++i) {
            const Vec& d = rep.node_derivs[i];
            const double val = std::abs(alpha_of_derivative(model, rep.pts[i], d)) / d.norm();
            if (val > out.sup_defect) {
                out.sup_defect = val;
                out.argmax_param = rep.ts[i];
            }
        }
        // Exact polyline integral: alpha(c') dt = dz - sum y_i dx_i per segment,
        // with y linear along the segment.
        double total = 0.0;
        const int nn = c.n();
        for (size_t i = 0; i + 1 < rep.ts.size(); ++i) {
            const Vec& a = rep.pts[i];
            const Vec& b = rep.pts[i + 1];
            double seg = b[2 * nn] - a[2 * nn];
            for (int k = 0; k < nn; ++k)
                seg -= 0.5 * (a[nn + k] + b[nn + k]) * (b[k] - a[k]);
            total += seg;
        }
        out.total_defect = total;
        return out;
    }

    const auto ts = quadrature_grid(c, grid);
    for (double t : ts) {
        const Vec d = c.derivative(t);
        const double sp = d.norm();
        if (sp < kImmersionSpeedTol)
            throw degenerate_input_error("legendrian_defect: vanishing speed on the grid");
        const double val = std::abs(alpha_of_derivative(model, c.position(t), d)) / sp;
        if (val > out.sup_defect) {
            out.sup_defect = val;
            out.argmax_param = t;
        }
    }
    out.total_defect = simpson_on_grid(
        ts, [&](double t) { return alpha_of_derivative(model, c.position(t), c.derivative(t)); });
    return out;
}

PlanarCurve lagrangian_projection(const SpaceCurve& c) {
    const int nn = c.n();
    if (c.is_sampled()) {
        const auto& rep = *c.rep();
        std::vector<Vec> pts;
        pts.reserve(rep.pts.size());
        for (const Vec& p : rep.pts) pts.push_back(p.head(2 * nn));
        return PlanarCurve::sampled(nn, rep.ts, std::move(pts), c.closed());
    }
    auto base = c.rep();
    return PlanarCurve::analytic(
        nn, c.t0(), c.t1(), [base, nn](double t) { return Vec(base->position(t).head(2 * nn)); },
        [base, nn](double t) { return Vec(base->derivative(t).head(2 * nn)); }, c.closed(),
        base->preferred_nodes);
}

namespace {

template <typename CurveT>
double c0_distance_impl(const CurveT& a, const CurveT& b, int grid) {
    if (a.dim() != b.dim()) throw contract_error("c0_distance: ambient dimension mismatch");
    if (!(a.domain_length() > 0.0) || !(b.domain_length() > 0.0))
        throw contract_error("c0_distance: degenerate parameter domain");

    // Affine map of b's domain onto a's.
    const double scale = b.domain_length() / a.domain_length();
    auto to_b = [&](double t) { return b.t0() + (t - a.t0()) * scale; };

    auto params = a.sample_params(grid);
    auto pb = b.sample_params(grid);
    for (double t : pb) params.push_back(a.t0() + (t - b.t0()) / scale);
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());

    double best = 0.0;
    for (double t : params) best = std::max(best, (a.position(t) - b.position(to_b(t))).norm());
    return best;
}

} // namespace

double c0_distance(const SpaceCurve& a, const SpaceCurve& b, int grid) {
    return c0_distance_impl(a, b, grid);
}
double c0_distance(const PlanarCurve& a, const PlanarCurve& b, int grid) {
    return c0_distance_impl(a, b, grid);
}

namespace {

// Exact integral of sum y_i dx_i along the polyline segments of a sampled
// planar curve up to parameter t. For closed curves an implicit closing
// segment back to the first node is appended.
double polyline_action_prefix(const detail::CurveRep& rep, int nn, double t) {
    double total = 0.0;
    for (size_t i = 0; i + 1 < rep.ts.size() && rep.ts[i] < t; ++i) {
        const Vec& a = rep.pts[i];
        Vec b = rep.pts[i + 1];
        if (rep.ts[i + 1] > t) b = rep.position(t);
        double seg = 0.0;
        for (int k = 0; k < nn; ++k) seg += 0.5 * (a[nn + k] + b[nn + k]) * (b[k] - a[k]);
        total += seg;
    }
    if (rep.closed && t >= rep.t1) {
        const Vec& a = rep.pts.back();
        const Vec& b = rep.pts.front();
        for (int k = 0; k < nn; ++k) total += 0.5 * (a[nn + k] + b[nn + k]) * (b[k] - a[k]);
    }
    return total;
}

} // namespace

double path_action_prefix(const PlanarCurve& p, double t, int grid) {
    const int nn = p.n();
    if (p.is_sampled()) return polyline_action_prefix(*p.rep(), nn, t);
    auto ts = quadrature_grid(p, grid);
    std::vector<double> clipped;
    for (double u : ts)
        if (u < t) clipped.push_back(u);
    clipped.push_back(std::min(t, p.t1()));
    if (clipped.size() < 2) return 0.0;
    return simpson_on_grid(clipped, [&](double u) {
        const Vec pos = p.position(u);
        const Vec d = p.derivative(u);
        double v = 0.0;
        for (int k = 0; k < nn; ++k) v += pos[nn + k] * d[k];
        return v;
    });
}

double path_action(const PlanarCurve& p, int grid) { return path_action_prefix(p, p.t1(), grid); }

double signed_area(const PlanarCurve& p, int grid) {
    if (p.n() != 1) throw contract_error("signed_area: planar (n = 1) curves only");
    if (!p.closed()) throw contract_error("signed_area: curve is not closed");
    if (p.is_sampled()) {
        const auto& rep = *p.rep();
        double acc = 0.0;
        const size_t m = rep.pts.size();
        for (size_t i = 0; i < m; ++i) {
            const Vec& a = rep.pts[i];
            const Vec& b = rep.pts[(i + 1) % m];
            acc += a[0] * b[1] - b[0] * a[1];
        }
        return 0.5 * acc;
    }
    auto ts = quadrature_grid(p, grid);
    return simpson_on_grid(ts, [&](double u) {
        const Vec pos = p.position(u);
        const Vec d = p.derivative(u);
        return 0.5 * (pos[0] * d[1] - pos[1] * d[0]);
    });
}

int winding_number(const PlanarCurve& p, const Vec2& q, int grid) {
    if (p.n() != 1) throw contract_error("winding_number: planar (n = 1) curves only");
    if (!p.closed()) throw contract_error("winding_number: curve is not closed");

    auto params = p.sample_params(grid);
    std::vector<Vec2> pts;
    pts.reserve(params.size());
    for (double t : params) {
        const Vec pos = p.position(t);
        pts.emplace_back(pos[0] - q[0], pos[1] - q[1]);
    }
    if ((pts.front() - pts.back()).norm() > 1e-12 * std::max(1.0, pts.front().norm()))
        pts.push_back(pts.front());

    double angle = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const Vec2& a = pts[i];
        const Vec2& b = pts[i + 1];
        if (a.norm() < kPlanarMatchTol || b.norm() < kPlanarMatchTol)
            throw degenerate_input_error("winding_number: point lies on the curve");
        angle += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
    }
    const double turns = angle / (2.0 * M_PI);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 0.1)
        throw degenerate_input_error("winding_number: angle residual too large");
    return static_cast<int>(rounded);
}

} // namespace contactlab
