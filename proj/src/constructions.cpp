#include "contactlab/constructions.hpp"

#include "contactlab/intersection.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace contactlab {

namespace {

constexpr double kSkipLoopTol = 1e-12;

// Prefix integral of sum y_i dx_i along a planar curve, cheap to evaluate at
// arbitrary parameters. Exact per segment for polylines, cached Simpson for
// analytic curves.
class ActionPrefix {
  public:
    explicit ActionPrefix(const PlanarCurve& p, int min_cells = 4096) : rep_(p.rep()), nn_(p.n()) {
        if (rep_->sampled) {
            const auto& ts = rep_->ts;
            prefix_.resize(ts.size(), 0.0);
            for (size_t i = 0; i + 1 < ts.size(); ++i)
                prefix_[i + 1] = prefix_[i] + segment_action(rep_->pts[i], rep_->pts[i + 1], 1.0);
        } else {
            auto rep = rep_;
            const int nn = nn_;
            int cells = std::max(min_cells, 4 * static_cast<int>(rep_->preferred_nodes.size()));
            integral_ = CumulativeIntegral(
                [rep, nn](double t) {
                    const Vec pos = rep->position(t);
                    const Vec d = rep->derivative(t);
                    double v = 0.0;
                    for (int k = 0; k < nn; ++k) v += pos[nn + k] * d[k];
                    return v;
                },
                rep_->t0, rep_->t1, cells);
        }
    }

    double operator()(double t) const {
        if (!rep_->sampled) return integral_(t);
        if (t <= rep_->t0) return 0.0;
        if (t >= rep_->t1) return prefix_.back();
        const int i = rep_->segment_index(t);
        const double w = (t - rep_->ts[static_cast<size_t>(i)]) /
                         (rep_->ts[static_cast<size_t>(i) + 1] - rep_->ts[static_cast<size_t>(i)]);
        return prefix_[static_cast<size_t>(i)] +
               segment_action(rep_->pts[static_cast<size_t>(i)],
                              rep_->pts[static_cast<size_t>(i) + 1], w);
    }

    double total() const { return (*this)(rep_->t1); }

  private:
    // int_0^w y(x(u)) dx over a straight segment: y linear in u.
    double segment_action(const Vec& a, const Vec& b, double w) const {
        double acc = 0.0;
        for (int k = 0; k < nn_; ++k) {
            const double dx = b[k] - a[k];
            const double dy = b[nn_ + k] - a[nn_ + k];
            acc += dx * (a[nn_ + k] * w + 0.5 * dy * w * w);
        }
        return acc;
    }

    detail::RepPtr rep_;
    int nn_;
    std::vector<double> prefix_;
    CumulativeIntegral integral_;
};

std::vector<double> refine_by_four(const std::vector<double>& ts) {
    std::vector<double> out;
    out.reserve(4 * ts.size());
    for (size_t i = 0; i + 1 < ts.size(); ++i) {
        const double a = ts[i], b = ts[i + 1];
        out.push_back(a);
        out.push_back(a + 0.25 * (b - a));
        out.push_back(a + 0.5 * (b - a));
        out.push_back(a + 0.75 * (b - a));
    }
    out.push_back(ts.back());
    return out;
}

} // namespace

LegendrianCurve LegendrianCurve::certify(SpaceCurve c, double tol) {
    const DefectReport rep = legendrian_defect(c);
    if (!(rep.sup_defect <= tol))
        throw contract_error("LegendrianCurve: defect " + format_g17(rep.sup_defect) +
                             " exceeds tolerance " + format_g17(tol));
    return LegendrianCurve(std::move(c), rep.sup_defect, tol);
}

LegendrianCurve legendrian_lift(const PlanarCurve& p, double z0) {
    if (p.n() != 1) throw contract_error("legendrian_lift: planar (n = 1) curves only");
    if (!p.immersed()) throw degenerate_input_error("legendrian_lift: curve is not immersed");

    auto prefix = std::make_shared<ActionPrefix>(p);
    auto rep = p.rep();
    const int nn = p.n();

    auto pos = [rep, prefix, z0, nn](double t) {
        Vec out(2 * nn + 1);
        out.head(2 * nn) = rep->position(t);
        out[2 * nn] = z0 + (*prefix)(t);
        return out;
    };
    auto deriv = [rep, nn](double t) {
        const Vec pd = rep->derivative(t);
        const Vec pp = rep->position(t);
        Vec out(2 * nn + 1);
        out.head(2 * nn) = pd;
        double zd = 0.0;
        for (int k = 0; k < nn; ++k) zd += pp[nn + k] * pd[k];
        out[2 * nn] = zd;
        return out;
    };

    std::vector<double> preferred =
        rep->sampled ? refine_by_four(rep->ts) : rep->preferred_nodes;

    const double total = prefix->total();
    const bool closed = p.closed() && std::abs(total) <= 1e-9;

    auto lifted = SpaceCurve::analytic(nn, p.t0(), p.t1(), pos, deriv, closed, preferred);
    const double tol = rep->sampled ? kLegendrianTolSampled : kLegendrianTolAnalytic;
    return LegendrianCurve::certify(std::move(lifted), tol);
}

// ---------------------------------------------------------------------------
// spiral

LegendrianCurve spiral_approximation(double z_gain, const Vec2& base, double eps) {
    if (!(eps > 0.0)) throw contract_error("spiral_approximation: eps must be positive");
    if (z_gain == 0.0) throw contract_error("spiral_approximation: z_gain must be nonzero");

    const double g = z_gain;
    const double sigma = g > 0.0 ? 1.0 : -1.0; // clockwise turns gain z
    const long turns = std::max(1L, static_cast<long>(std::ceil(
                                        std::abs(g) / (M_PI * 0.5625 * eps * eps))));
    const double theta_total = 2.0 * M_PI * turns;
    const double r_bar = std::sqrt(std::abs(g) / (M_PI * static_cast<double>(turns)));

    double half = 0.2 * r_bar;
    half = std::min(half, 0.98 * eps - r_bar);
    if (r_bar - half < 0.5 * eps) half = std::max(r_bar - 0.5 * eps, 0.02 * r_bar);

    const double r_lo = r_bar - half;
    const double r_hi = r_bar + half;
    const double r_max = r_hi;

    // Sampling density: keep polyline sagitta below a quarter of the gap
    // between consecutive turns, so the polyline witness of embeddedness does
    // not self-intersect spuriously.
    const double turn_gap = 2.0 * half / static_cast<double>(turns);
    double dtheta = std::sqrt(2.0 * turn_gap / r_max);
    int per_turn = static_cast<int>(std::ceil(2.0 * M_PI / dtheta));
    per_turn = std::clamp(per_turn, 48, 768);
    const long cells = turns * per_turn;

    auto rho = [=](double th) { return r_lo + (r_hi - r_lo) * th / theta_total; };
    auto rho_d = [=]() { return (r_hi - r_lo) / theta_total; };
    auto psi = [=](double th) { return 0.5 * M_PI - sigma * th; };

    auto x_rel = [=](double th) { return rho(th) * std::cos(psi(th)); };
    auto x_rel_d = [=](double th) {
        return rho_d() * std::cos(psi(th)) + sigma * rho(th) * std::sin(psi(th));
    };
    auto y_rel = [=](double th) { return rho(th) * std::sin(psi(th)); };
    auto y_rel_d = [=](double th) {
        return rho_d() * std::sin(psi(th)) - sigma * rho(th) * std::cos(psi(th));
    };

    // Relative action: full turns starting at angle pi/2 make the base-point
    // contribution vanish exactly, so the gain scales as scale^2.
    auto integrand = std::make_shared<CumulativeIntegral>(
        [=](double th) { return y_rel(th) * x_rel_d(th); }, 0.0, theta_total,
        static_cast<int>(cells));
    const double rel_total = integrand->total();
    if (!(g / rel_total > 0.0))
        throw integration_error("spiral_approximation: inconsistent orientation of the gain");
    const double scale = std::sqrt(g / rel_total);

    const double y0 = base.y();
    auto z_of_theta = [=](double th) {
        return scale * scale * (*integrand)(th) + scale * y0 * (x_rel(th) - x_rel(0.0));
    };
    auto z_d_of_theta = [=](double th) {
        return scale * scale * y_rel(th) * x_rel_d(th) + scale * y0 * x_rel_d(th);
    };

    // Parameterization: blend of normalized z with the angle fraction. The
    // blend weight is raised just enough to keep t(theta) strictly monotone
    // when the base height makes z wobble within turns.
    auto theta_nodes = linspace(0.0, theta_total, static_cast<int>(cells) + 1);
    double min_rate = std::numeric_limits<double>::infinity();
    for (double th : theta_nodes) min_rate = std::min(min_rate, z_d_of_theta(th) / g);
    const double m_neg = std::max(0.0, -min_rate);
    double w = std::clamp(1.25 * theta_total * m_neg / (1.0 + 1.25 * theta_total * m_neg), 0.15,
                          0.95);

    std::vector<double> t_nodes(theta_nodes.size());
    for (int attempt = 0; attempt < 5; ++attempt) {
        for (size_t i = 0; i < theta_nodes.size(); ++i)
            t_nodes[i] = (1.0 - w) * z_of_theta(theta_nodes[i]) / g + w * theta_nodes[i] / theta_total;
        bool monotone = true;
        for (size_t i = 1; i < t_nodes.size(); ++i)
            if (!(t_nodes[i] > t_nodes[i - 1])) {
                monotone = false;
                break;
            }
        if (monotone) break;
        w = 0.5 * (w + 1.0);
        if (attempt == 4)
            throw integration_error("spiral_approximation: parameterization not monotone");
    }
    t_nodes.front() = 0.0;
    t_nodes.back() = 1.0;

    auto theta_of_t = [t_nodes, theta_nodes](double t) {
        if (t <= 0.0) return theta_nodes.front();
        if (t >= 1.0) return theta_nodes.back();
        const auto it = std::upper_bound(t_nodes.begin(), t_nodes.end(), t);
        size_t i = static_cast<size_t>(it - t_nodes.begin());
        i = std::min(std::max<size_t>(i, 1), t_nodes.size() - 1) - 1;
        const double f = (t - t_nodes[i]) / (t_nodes[i + 1] - t_nodes[i]);
        return theta_nodes[i] + f * (theta_nodes[i + 1] - theta_nodes[i]);
    };
    auto rate_of_t = [t_nodes, theta_nodes](double t) {
        const auto it = std::upper_bound(t_nodes.begin(), t_nodes.end(), std::clamp(t, 0.0, 1.0));
        size_t i = static_cast<size_t>(it - t_nodes.begin());
        i = std::min(std::max<size_t>(i, 1), t_nodes.size() - 1) - 1;
        return (theta_nodes[i + 1] - theta_nodes[i]) / (t_nodes[i + 1] - t_nodes[i]);
    };

    const double x0 = base.x();
    auto pos = [=](double t) {
        const double th = theta_of_t(t);
        Vec out(3);
        out[0] = x0 + scale * x_rel(th);
        out[1] = y0 + scale * y_rel(th);
        out[2] = z_of_theta(th);
        return out;
    };
    auto deriv = [=](double t) {
        const double th = theta_of_t(t);
        const double rate = rate_of_t(t);
        Vec out(3);
        out[0] = scale * x_rel_d(th) * rate;
        out[1] = scale * y_rel_d(th) * rate;
        out[2] = (y0 + scale * y_rel(th)) * out[0];
        return out;
    };

    auto curve = SpaceCurve::analytic(1, 0.0, 1.0, pos, deriv, false, t_nodes);
    Provenance prov;
    prov.construction = "spiral";
    prov.epsilon = eps;
    prov.loops = 0;
    prov.turns = turns;
    curve = curve.with_provenance(prov);
    return LegendrianCurve::certify(std::move(curve), kLegendrianTolAnalytic);
}

// ---------------------------------------------------------------------------
// wiggle

namespace {

struct WigglePiece {
    double u0 = 0.0, u1 = 0.0;
    std::function<Vec(double)> pos;
    std::function<Vec(double)> deriv;
};

// Lens-shaped loop through the apex: two chords at +-60 degrees to the local
// tangent plus a circular cap, discretized as a polygon so its enclosed area
// (and hence its action) is an exact shoelace value. The two apex chords meet
// the through-going strand with interleaved directions, giving one transverse
// double point at the apex.
struct LensShape {
    std::vector<Vec2> unit_vertices; // apex first and last, unit radius
    double beta = 0.0;               // |area| / rho^2
};

const LensShape& lens_shape() {
    static const LensShape shape = [] {
        LensShape s;
        constexpr int kArc = 16;
        s.unit_vertices.emplace_back(0.0, 0.0);
        for (int j = 0; j <= kArc; ++j) {
            const double phi = (120.0 + 120.0 * j / kArc) * M_PI / 180.0;
            s.unit_vertices.emplace_back(std::sin(phi), 1.0 - std::cos(phi));
        }
        s.unit_vertices.emplace_back(0.0, 0.0);
        double area2 = 0.0;
        for (size_t i = 0; i + 1 < s.unit_vertices.size(); ++i) {
            const Vec2& a = s.unit_vertices[i];
            const Vec2& b = s.unit_vertices[i + 1];
            area2 += a.x() * b.y() - b.x() * a.y();
        }
        s.beta = std::abs(0.5 * area2);
        return s;
    }();
    return shape;
}

// z gained along a straight planar edge: dx (y0 w + dy w^2 / 2).
double edge_action(const Vec2& a, const Vec2& b) {
    return (b.x() - a.x()) * 0.5 * (a.y() + b.y());
}

} // namespace

WiggleResult wiggle_approximation_detailed(const SpaceCurve& c, double eps) {
    if (!(eps > 0.0)) throw contract_error("wiggle_approximation: eps must be positive");
    if (c.n() != 1) throw contract_error("wiggle_approximation: curves in dimension 3 only");
    if (!c.immersed()) throw degenerate_input_error("wiggle_approximation: curve is not immersed");

    const ContactModel model(1);
    // The Reeb field must be nowhere parallel to the velocity, i.e. the
    // projection must be immersed.
    {
        double max_speed = 0.0;
        double min_ratio = std::numeric_limits<double>::infinity();
        for (double t : c.sample_params(1025)) {
            const Vec d = c.derivative(t);
            max_speed = std::max(max_speed, d.norm());
            min_ratio = std::min(min_ratio, d.head(2).norm() / d.norm());
        }
        if (min_ratio < kParallelTol)
            throw degenerate_input_error(
                "wiggle_approximation: Reeb field parallel to the velocity somewhere");
    }

    const PlanarCurve proj = lagrangian_projection(c);
    auto proj_rep = proj.rep();
    auto prefix = std::make_shared<ActionPrefix>(proj);
    const double z_start = c.position(c.t0())[2];

    // Accumulated defect E(t) = z(t) - z(t0) - action(t).
    auto defect_at = [&](double t) {
        return c.position(t)[2] - z_start - (*prefix)(t);
    };

    const double span = c.domain_length();
    const double total_defect = defect_at(c.t1());
    const LensShape& lens = lens_shape();
    const double cap = lens.beta * 0.25 * eps * eps;

    double max_speed = 0.0;
    for (double t : c.sample_params(1025))
        max_speed = std::max(max_speed, c.derivative(t).head(2).norm());

    long pieces = std::max({4L, static_cast<long>(std::ceil(std::abs(total_defect) / (0.9 * cap))),
                            static_cast<long>(std::ceil(span * max_speed / (2.0 * eps)))});

    std::vector<double> taus, deltas;
    for (int attempt = 0;; ++attempt) {
        taus = linspace(c.t0(), c.t1(), static_cast<int>(pieces) + 1);
        deltas.assign(static_cast<size_t>(pieces), 0.0);
        double emax = 0.0;
        double eprev = 0.0;
        for (long k = 1; k <= pieces; ++k) {
            const double ek = defect_at(taus[static_cast<size_t>(k)]);
            deltas[static_cast<size_t>(k) - 1] = ek - eprev;
            eprev = ek;
            emax = std::max(emax, std::abs(deltas[static_cast<size_t>(k) - 1]));
        }
        if (emax <= cap) break;
        if (attempt >= 8)
            throw integration_error("wiggle_approximation: defect concentration exceeds capacity");
        pieces *= 2;
    }

    bool any_loop = false;
    for (double d : deltas)
        if (std::abs(d) > kSkipLoopTol) any_loop = true;

    if (!any_loop) {
        auto lifted = legendrian_lift(proj, z_start);
        Provenance prov;
        prov.construction = "wiggle";
        prov.epsilon = eps;
        prov.loops = 0;
        prov.turns = 0;
        auto curve = lifted.curve().with_provenance(prov);
        WiggleResult out{LegendrianCurve::certify(std::move(curve), lifted.tolerance()), {}, pieces};
        return out;
    }

    auto table = std::make_shared<std::vector<WigglePiece>>();
    std::vector<double> preferred;
    std::vector<double> loop_actions;
    const int main_subdiv = std::max(4, static_cast<int>(std::ceil(4096.0 / pieces)));

    double gain_before = 0.0; // sum of inserted loop actions so far
    for (long k = 1; k <= pieces; ++k) {
        const double src_a = taus[static_cast<size_t>(k) - 1];
        const double src_b = taus[static_cast<size_t>(k)];
        const double delta = deltas[static_cast<size_t>(k) - 1];
        const bool insert = std::abs(delta) > kSkipLoopTol;
        const double slot = insert ? 0.25 * (src_b - src_a) : 0.0;
        const double out_a = src_a, out_b = src_b - slot;

        // main piece: reparameterized lift of the projection
        {
            const double rate = (src_b - src_a) / (out_b - out_a);
            const double offset = gain_before;
            auto pr = prefix;
            auto rep = proj_rep;
            const double z0 = z_start;
            auto pos = [=](double u) {
                const double tau = src_a + (u - out_a) * rate;
                Vec out(3);
                out.head(2) = rep->position(tau);
                out[2] = z0 + (*pr)(tau) + offset;
                return out;
            };
            auto deriv = [=](double u) {
                const double tau = src_a + (u - out_a) * rate;
                const Vec pd = rep->derivative(tau);
                const Vec pp = rep->position(tau);
                Vec out(3);
                out[0] = pd[0] * rate;
                out[1] = pd[1] * rate;
                out[2] = pp[1] * out[0];
                return out;
            };
            table->push_back({out_a, out_b, pos, deriv});
            for (int j = 0; j < main_subdiv; ++j)
                preferred.push_back(out_a + (out_b - out_a) * j / main_subdiv);
        }

        if (!insert) continue;

        // lens loop at the piece end
        const Vec pd = proj_rep->derivative(src_b);
        const Vec2 tangent(pd[0], pd[1]);
        if (tangent.norm() < 1e-300)
            throw degenerate_input_error("wiggle_approximation: vanishing planar speed at a loop");
        const Vec2 that = tangent.normalized();
        const Vec2 nhat(-that.y(), that.x());
        const double side = delta > 0.0 ? -1.0 : 1.0; // right-side lens gives positive action
        const double rho = std::sqrt(std::abs(delta) / lens.beta);

        const Vec app = proj_rep->position(src_b);
        const Vec2 apex(app[0], app[1]);
        std::vector<Vec2> verts;
        verts.reserve(lens.unit_vertices.size());
        for (const Vec2& uv : lens.unit_vertices)
            verts.push_back(apex + rho * (uv.x() * that + side * uv.y() * nhat));

        // parameter allocation proportional to edge length
        std::vector<double> cum{0.0};
        for (size_t i = 0; i + 1 < verts.size(); ++i)
            cum.push_back(cum.back() + (verts[i + 1] - verts[i]).norm());
        const double perim = cum.back();

        double z_edge = z_start + (*prefix)(src_b) + gain_before;
        double action_sum = 0.0;
        for (size_t i = 0; i + 1 < verts.size(); ++i) {
            const double ua = out_b + slot * cum[i] / perim;
            const double ub = out_b + slot * cum[i + 1] / perim;
            const Vec2 A = verts[i], B = verts[i + 1];
            const double za = z_edge;
            auto pos = [=](double u) {
                const double w = (u - ua) / (ub - ua);
                Vec out(3);
                out[0] = A.x() + w * (B.x() - A.x());
                out[1] = A.y() + w * (B.y() - A.y());
                out[2] = za + (B.x() - A.x()) * (A.y() * w + 0.5 * (B.y() - A.y()) * w * w);
                return out;
            };
            auto deriv = [=](double u) {
                const double w = (u - ua) / (ub - ua);
                const double rate = 1.0 / (ub - ua);
                Vec out(3);
                out[0] = (B.x() - A.x()) * rate;
                out[1] = (B.y() - A.y()) * rate;
                out[2] = (A.y() + w * (B.y() - A.y())) * out[0];
                return out;
            };
            table->push_back({ua, ub, pos, deriv});
            preferred.push_back(ua);
            const double act = edge_action(A, B);
            z_edge += act;
            action_sum += act;
        }
        loop_actions.push_back(action_sum);
        gain_before += action_sum;
    }
    preferred.push_back(c.t1());

    auto locate = [table](double u) -> const WigglePiece& {
        const auto& tb = *table;
        size_t lo = 0, hi = tb.size();
        while (hi - lo > 1) {
            const size_t mid = (lo + hi) / 2;
            if (tb[mid].u0 <= u)
                lo = mid;
            else
                hi = mid;
        }
        return tb[lo];
    };
    auto pos = [table, locate](double u) { return locate(u).pos(u); };
    auto deriv = [table, locate](double u) { return locate(u).deriv(u); };

    auto curve = SpaceCurve::analytic(1, c.t0(), c.t1(), pos, deriv, false, preferred);
    Provenance prov;
    prov.construction = "wiggle";
    prov.epsilon = eps;
    prov.loops = static_cast<long>(loop_actions.size());
    prov.turns = 0;
    curve = curve.with_provenance(prov);

    WiggleResult out{LegendrianCurve::certify(std::move(curve), kLegendrianTolAnalytic),
                     std::move(loop_actions), pieces};
    return out;
}

LegendrianCurve wiggle_approximation(const SpaceCurve& c, double eps) {
    return wiggle_approximation_detailed(c, eps).curve;
}

// ---------------------------------------------------------------------------
// suspension

PlanarCurve suspension_circle_loop(const Vec2& center, double radius) {
    if (!(radius > 0.0)) throw contract_error("suspension_circle_loop: radius must be positive");
    const double c1 = center.x(), c2 = center.y();
    return PlanarCurve::analytic(
        1, 0.0, 2.0 * M_PI,
        [=](double t) {
            Vec out(2);
            out[0] = c1 + radius * std::cos(t);
            out[1] = c2 + radius * std::sin(t);
            return out;
        },
        [=](double t) {
            Vec out(2);
            out[0] = -radius * std::sin(t);
            out[1] = radius * std::cos(t);
            return out;
        },
        true);
}

SuspensionMap make_suspension(SpaceCurve base, PlanarCurve loop, double a, double b) {
    if (!(b > a)) throw contract_error("make_suspension: need a < b");
    if (loop.n() != 1) throw contract_error("make_suspension: loop must map into the plane");
    if (!loop.closed()) throw contract_error("make_suspension: loop must be closed");
    if (!base.immersed()) throw contract_error("make_suspension: base curve is not immersed");

    for (double t : loop.sample_params(512)) {
        const Vec p = loop.position(t);
        if (p[0] < -1e-12)
            throw contract_error("make_suspension: loop first coordinate must be nonnegative");
        if (p[1] < a - 1e-12 || p[1] > b + 1e-12)
            throw contract_error("make_suspension: loop second coordinate leaves [a, b]");
    }

    const auto spec = make_polyline(loop, 512);
    const auto hits = find_crossings(spec, spec, true, CandidateStrategy::BruteForce);
    if (!hits.crossings.empty() || !hits.suspects.empty())
        throw contract_error("make_suspension: loop is not embedded");

    return SuspensionMap{std::move(base), std::move(loop), a, b};
}

double suspension_pullback_norm(const SuspensionMap& m, int grid) {
    if (grid < 2) throw contract_error("suspension_pullback_norm: grid too small");
    const ContactModel model(m.base.n());
    const int d = model.dim();

    double worst = 0.0;
    const auto xs = linspace(m.base.t0(), m.base.t1(), grid);
    const auto ts = linspace(m.loop.t0(), m.loop.t1(), grid);
    for (double x : xs) {
        const Vec fx = m.base.position(x);
        const Vec fdx = m.base.derivative(x);
        for (double t : ts) {
            const Vec lp = m.loop.position(t);
            const Vec ld = m.loop.derivative(t);
            Vec q = fx;
            q[d - 1] += lp[0]; // Reeb flow in the standard model: z-translation
            const double s = lp[1];

            // u = dF(d/dx), v = dF(d/dt) in T(M) + R d/ds
            Vec u_m = fdx;
            const double u_s = 0.0;
            Vec v_m = Vec::Zero(d);
            v_m[d - 1] = ld[0];
            const double v_s = ld[1];

            // d(e^s alpha) = e^s (ds ^ alpha + d alpha)
            double dalpha_uv = 0.0;
            for (int i = 0; i < model.n(); ++i)
                dalpha_uv += u_m[i] * v_m[model.n() + i] - u_m[model.n() + i] * v_m[i];
            const double val =
                std::exp(s) * (u_s * model.alpha(q, v_m) - v_s * model.alpha(q, u_m) + dalpha_uv);
            worst = std::max(worst, std::abs(val));
        }
    }
    return worst;
}

} // namespace contactlab
