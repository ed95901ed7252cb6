#include "contactlab/intersection.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace contactlab {

namespace detail {

SegHitResult segment_hit(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
    SegHitResult out;
    const Vec2 r = p2 - p1;
    const Vec2 q = q2 - q1;
    const Vec2 d = q1 - p1;

    auto cross2 = [](const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); };

    const double denom = cross2(r, q);
    const double eps_denom = 1e-14 * r.norm() * q.norm();

    if (std::abs(denom) <= eps_denom) {
        // Parallel; collinear iff q1 lies on the line through p1 along r.
        const double eps_col = 1e-13 * std::max(1.0, d.norm()) * std::max(r.norm(), 1e-300);
        if (std::abs(cross2(d, r)) > eps_col) return out;
        const double rr = r.squaredNorm();
        if (rr == 0.0) return out;
        double u1 = d.dot(r) / rr;
        double u2 = (q2 - p1).dot(r) / rr;
        if (u1 > u2) std::swap(u1, u2);
        const double lo = std::max(0.0, u1), hi = std::min(1.0, u2);
        if (lo > hi + 1e-12) return out;
        if ((hi - lo) * r.norm() > 1e-10 * std::max(1.0, r.norm())) {
            out.kind = SegHit::Overlap;
            out.u = 0.5 * (lo + hi);
            return out;
        }
        out.kind = SegHit::Touch;
        out.u = 0.5 * (lo + hi);
        const double qq = q.squaredNorm();
        out.v = qq > 0.0 ? std::clamp((p1 + out.u * r - q1).dot(q) / qq, 0.0, 1.0) : 0.0;
        return out;
    }

    const double u = cross2(d, q) / denom;
    const double v = cross2(d, r) / denom;
    const double slack = 1e-12;
    if (u < -slack || u > 1.0 + slack || v < -slack || v > 1.0 + slack) return out;
    out.u = std::clamp(u, 0.0, 1.0);
    out.v = std::clamp(v, 0.0, 1.0);
    const bool interior = u > slack && u < 1.0 - slack && v > slack && v < 1.0 - slack;
    out.kind = interior ? SegHit::Proper : SegHit::Touch;
    return out;
}

} // namespace detail

PolylineSpec make_polyline(const PlanarCurve& c, int target) {
    if (c.n() != 1) throw contract_error("make_polyline: planar (n = 1) curves only");
    PolylineSpec spec;
    spec.params = c.sample_params(target);
    spec.points.reserve(spec.params.size());
    for (double t : spec.params) {
        const Vec p = c.position(t);
        spec.points.emplace_back(p[0], p[1]);
    }
    auto rep = c.rep();
    spec.eval = [rep](double t) {
        const Vec p = rep->position(t);
        return Vec2(p[0], p[1]);
    };
    spec.closed = c.closed();
    spec.t0 = c.t0();
    spec.t1 = c.t1();
    return spec;
}

namespace {

using detail::SegHit;
using detail::segment_hit;

struct SegRef {
    int which = 0;
    int idx = 0;
};

double param_gap(const PolylineSpec& s, double u, double v) {
    double gap = std::abs(v - u);
    if (s.closed) gap = std::min(gap, (s.t1 - s.t0) - gap);
    return gap;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b, double& w) {
    const Vec2 d = b - a;
    const double dd = d.squaredNorm();
    w = dd > 0.0 ? std::clamp((p - a).dot(d) / dd, 0.0, 1.0) : 0.0;
    return (a + w * d - p).norm();
}

// Segments that do not intersect exactly but pass within tau of each other at
// an endpoint still witness a planar double point at the matching tolerance
// (floating-point images of exact touch points land on either side).
bool near_touch(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2, double tau,
                double& u, double& v) {
    double w;
    if (point_segment_distance(q1, p1, p2, w) <= tau) {
        u = w;
        v = 0.0;
        return true;
    }
    if (point_segment_distance(q2, p1, p2, w) <= tau) {
        u = w;
        v = 1.0;
        return true;
    }
    if (point_segment_distance(p1, q1, q2, w) <= tau) {
        u = 0.0;
        v = w;
        return true;
    }
    if (point_segment_distance(p2, q1, q2, w) <= tau) {
        u = 1.0;
        v = w;
        return true;
    }
    return false;
}

// Refinement of a candidate crossing against the true curve evaluators:
// a linearized estimate first, then damped 2D Newton, then bisection of the
// parameter box as a fallback. Returns false when the candidate is a polyline
// sagitta artifact with no underlying crossing.
bool refine_crossing(const PolylineSpec& a, const PolylineSpec& b, double sa, double sb, double ta,
                     double tb, double u0, double v0, double tau_xy, Crossing& out) {
    const double span_a = sb - sa, span_b = tb - ta;

    auto finish = [&](double s, double t) {
        const Vec2 qa = a.eval(s);
        const Vec2 qb = b.eval(t);
        if ((qa - qb).norm() > 64.0 * tau_xy) return false;
        out.s = s;
        out.t = t;
        out.point = 0.5 * (qa + qb);
        return true;
    };

    // Linearized estimate from the segment intersection parameters; exact for
    // polyline-backed curves.
    {
        const double s = sa + u0 * span_a;
        const double t = ta + v0 * span_b;
        if ((a.eval(s) - b.eval(t)).norm() <= tau_xy) return finish(s, t);
    }

    // Damped Newton on F(s,t) = a(s) - b(t), confined near the box.
    {
        double s = sa + u0 * span_a, t = ta + v0 * span_b;
        const double hs = std::max(1e-9 * span_a, 1e-14);
        const double ht = std::max(1e-9 * span_b, 1e-14);
        for (int it = 0; it < 16; ++it) {
            const Vec2 F = a.eval(s) - b.eval(t);
            if (F.norm() <= tau_xy) return finish(s, t);
            const Vec2 da = (a.eval(std::min(s + hs, a.t1)) - a.eval(std::max(s - hs, a.t0))) /
                            (std::min(s + hs, a.t1) - std::max(s - hs, a.t0));
            const Vec2 db = (b.eval(std::min(t + ht, b.t1)) - b.eval(std::max(t - ht, b.t0))) /
                            (std::min(t + ht, b.t1) - std::max(t - ht, b.t0));
            const double det = -da.x() * db.y() + da.y() * db.x();
            if (std::abs(det) < 1e-30) break;
            // Solve [da, -db] [ds, dt]^T = -F
            const double ds = (-F.x() * -db.y() - -F.y() * -db.x()) / det;
            const double dt = (da.x() * -F.y() - da.y() * -F.x()) / det;
            s += ds;
            t += dt;
            if (s < sa - span_a || s > sb + span_a || t < ta - span_b || t > tb + span_b) {
                s = std::clamp(s, sa, sb);
                t = std::clamp(t, ta, tb);
                break;
            }
        }
    }

    // Bisection fallback; also the arbiter that rejects false candidates.
    Vec2 pa1 = a.eval(sa), pa2 = a.eval(sb);
    Vec2 pb1 = b.eval(ta), pb2 = b.eval(tb);
    double lsa = sa, lsb = sb, lta = ta, ltb = tb;
    for (int iter = 0; iter < 140; ++iter) {
        const double ws = lsb - lsa, wt = ltb - lta;
        if (ws <= 1e-13 * std::max(1.0, span_a) && wt <= 1e-13 * std::max(1.0, span_b)) break;
        if (ws >= wt) {
            const double m = 0.5 * (lsa + lsb);
            const Vec2 pm = a.eval(m);
            if (segment_hit(pa1, pm, pb1, pb2).kind != SegHit::None) {
                lsb = m;
                pa2 = pm;
            } else if (segment_hit(pm, pa2, pb1, pb2).kind != SegHit::None) {
                lsa = m;
                pa1 = pm;
            } else {
                return false;
            }
        } else {
            const double m = 0.5 * (lta + ltb);
            const Vec2 pm = b.eval(m);
            if (segment_hit(pa1, pa2, pb1, pm).kind != SegHit::None) {
                ltb = m;
                pb2 = pm;
            } else if (segment_hit(pa1, pa2, pm, pb2).kind != SegHit::None) {
                lta = m;
                pb1 = pm;
            } else {
                return false;
            }
        }
    }
    return finish(0.5 * (lsa + lsb), 0.5 * (lta + ltb));
}

struct PairHash {
    size_t operator()(const std::pair<int, int>& p) const {
        return std::hash<long long>()((static_cast<long long>(p.first) << 32) ^
                                      static_cast<unsigned>(p.second));
    }
};

} // namespace

IntersectionResult find_crossings(const PolylineSpec& a, const PolylineSpec& b, bool self,
                                  CandidateStrategy strategy, double tau_xy, double tau_param) {
    const PolylineSpec& bb = self ? a : b;
    const int na = static_cast<int>(a.points.size()) - 1;
    const int nb = static_cast<int>(bb.points.size()) - 1;
    if (na < 1 || nb < 1) throw contract_error("find_crossings: degenerate polyline");
    if (tau_param < 0.0) tau_param = kParamDedupFactor * std::max(a.t1 - a.t0, bb.t1 - bb.t0);

    std::unordered_set<std::pair<int, int>, PairHash> seen_hits;
    std::vector<Crossing> raw_crossings, raw_suspects;

    auto consider = [&](int i, int j) {
        if (self) {
            if (j <= i) return;
            if (param_gap(a, a.params[static_cast<size_t>(i) + 1],
                          a.params[static_cast<size_t>(j)]) <= tau_param)
                return;
        }
        const Vec2& p1 = a.points[static_cast<size_t>(i)];
        const Vec2& p2 = a.points[static_cast<size_t>(i) + 1];
        const Vec2& q1 = bb.points[static_cast<size_t>(j)];
        const Vec2& q2 = bb.points[static_cast<size_t>(j) + 1];
        if (std::min(p1.x(), p2.x()) > std::max(q1.x(), q2.x()) + tau_xy ||
            std::min(q1.x(), q2.x()) > std::max(p1.x(), p2.x()) + tau_xy ||
            std::min(p1.y(), p2.y()) > std::max(q1.y(), q2.y()) + tau_xy ||
            std::min(q1.y(), q2.y()) > std::max(p1.y(), p2.y()) + tau_xy)
            return;
        auto hit = segment_hit(p1, p2, q1, q2);
        if (hit.kind == SegHit::None) {
            double u, v;
            if (!near_touch(p1, p2, q1, q2, tau_xy, u, v)) return;
            hit.kind = SegHit::Touch;
            hit.u = u;
            hit.v = v;
        }
        if (!seen_hits.insert({i, j}).second) return;
        if (hit.kind == SegHit::Overlap)
            throw degenerate_input_error("find_crossings: overlapping planar segments");

        Crossing c;
        if (!refine_crossing(a, bb, a.params[static_cast<size_t>(i)],
                             a.params[static_cast<size_t>(i) + 1],
                             bb.params[static_cast<size_t>(j)],
                             bb.params[static_cast<size_t>(j) + 1], hit.u, hit.v, tau_xy, c))
            return;
        if (self && param_gap(a, c.s, c.t) <= tau_param) return;

        const double hs = 1e-7 * std::max(1.0, a.t1 - a.t0);
        const double ht = 1e-7 * std::max(1.0, bb.t1 - bb.t0);
        const Vec2 da = a.eval(std::min(c.s + hs, a.t1)) - a.eval(std::max(c.s - hs, a.t0));
        const Vec2 db = bb.eval(std::min(c.t + ht, bb.t1)) - bb.eval(std::max(c.t - ht, bb.t0));
        const double denom = da.norm() * db.norm();
        const double sine = denom > 0.0 ? std::abs(da.x() * db.y() - da.y() * db.x()) / denom : 0.0;
        c.transverse = sine >= 1e-6;
        (c.transverse ? raw_crossings : raw_suspects).push_back(c);
    };

    if (strategy == CandidateStrategy::BruteForce) {
        for (int i = 0; i < na; ++i)
            for (int j = self ? i + 1 : 0; j < nb; ++j) consider(i, j);
    } else {
        double cell = 0.0;
        for (int i = 0; i < na; ++i)
            cell = std::max(cell, (a.points[static_cast<size_t>(i) + 1] -
                                   a.points[static_cast<size_t>(i)]).norm());
        for (int j = 0; j < nb; ++j)
            cell = std::max(cell, (bb.points[static_cast<size_t>(j) + 1] -
                                   bb.points[static_cast<size_t>(j)]).norm());
        if (cell <= 0.0) cell = 1.0;

        auto key = [](long ix, long iy) {
            return (static_cast<unsigned long long>(static_cast<unsigned long>(ix)) << 32) ^
                   static_cast<unsigned long>(iy);
        };
        std::unordered_map<unsigned long long, std::vector<SegRef>> grid;
        auto insert_segment = [&](int which, int idx, const Vec2& u, const Vec2& v) {
            // inflate by tau_xy so near-touching segments share a cell even
            // across a cell boundary
            const long x0 =
                static_cast<long>(std::floor((std::min(u.x(), v.x()) - tau_xy) / cell));
            const long x1 =
                static_cast<long>(std::floor((std::max(u.x(), v.x()) + tau_xy) / cell));
            const long y0 =
                static_cast<long>(std::floor((std::min(u.y(), v.y()) - tau_xy) / cell));
            const long y1 =
                static_cast<long>(std::floor((std::max(u.y(), v.y()) + tau_xy) / cell));
            for (long ix = x0; ix <= x1; ++ix)
                for (long iy = y0; iy <= y1; ++iy) grid[key(ix, iy)].push_back({which, idx});
        };
        for (int i = 0; i < na; ++i)
            insert_segment(0, i, a.points[static_cast<size_t>(i)],
                           a.points[static_cast<size_t>(i) + 1]);
        if (!self)
            for (int j = 0; j < nb; ++j)
                insert_segment(1, j, bb.points[static_cast<size_t>(j)],
                               bb.points[static_cast<size_t>(j) + 1]);

        for (const auto& [k, refs] : grid) {
            (void)k;
            for (size_t u = 0; u < refs.size(); ++u)
                for (size_t v = u + 1; v < refs.size(); ++v) {
                    const SegRef& ru = refs[u];
                    const SegRef& rv = refs[v];
                    if (self) {
                        consider(std::min(ru.idx, rv.idx), std::max(ru.idx, rv.idx));
                    } else if (ru.which != rv.which) {
                        const SegRef& pa = ru.which == 0 ? ru : rv;
                        const SegRef& pb = ru.which == 0 ? rv : ru;
                        consider(pa.idx, pb.idx);
                    }
                }
        }
    }

    auto dedup = [&](std::vector<Crossing>& v) {
        std::sort(v.begin(), v.end(), [](const Crossing& x, const Crossing& y) {
            return x.s != y.s ? x.s < y.s : x.t < y.t;
        });
        std::vector<Crossing> out;
        for (const Crossing& c : v) {
            bool dup = false;
            for (auto it = out.rbegin(); it != out.rend(); ++it) {
                if (c.s - it->s > tau_param) break;
                const double ds = self ? param_gap(a, it->s, c.s) : std::abs(it->s - c.s);
                const double dt = self ? param_gap(a, it->t, c.t) : std::abs(it->t - c.t);
                if (ds <= tau_param && dt <= tau_param) {
                    dup = true;
                    break;
                }
            }
            if (!dup) out.push_back(c);
        }
        // Wrap-around duplicates on closed curves live at opposite ends of the
        // sorted order; a pass over the few seam entries covers it.
        if (a.closed || bb.closed) {
            auto near_seam = [&](const Crossing& c) {
                const double pad = 2.0 * tau_param;
                return (a.closed && (c.s - a.t0 <= pad || a.t1 - c.s <= pad)) ||
                       (bb.closed && (c.t - bb.t0 <= pad || bb.t1 - c.t <= pad));
            };
            std::vector<size_t> seam;
            for (size_t i = 0; i < out.size(); ++i)
                if (near_seam(out[i])) seam.push_back(i);
            std::vector<bool> drop(out.size(), false);
            for (size_t u = 0; u < seam.size(); ++u)
                for (size_t w = u + 1; w < seam.size(); ++w) {
                    const Crossing& x = out[seam[u]];
                    const Crossing& y = out[seam[w]];
                    const double ds = param_gap(a, x.s, y.s);
                    const double dt = param_gap(self ? a : bb, x.t, y.t);
                    bool dup = ds <= tau_param && dt <= tau_param;
                    if (!dup && self && a.closed) {
                        // self chords are unordered pairs of circle points
                        const double dsx = param_gap(a, x.s, y.t);
                        const double dtx = param_gap(a, x.t, y.s);
                        dup = dsx <= tau_param && dtx <= tau_param;
                    }
                    if (dup) drop[seam[w]] = true;
                }
            std::vector<Crossing> kept;
            kept.reserve(out.size());
            for (size_t i = 0; i < out.size(); ++i)
                if (!drop[i]) kept.push_back(out[i]);
            out = std::move(kept);
        }
        v = std::move(out);
    };

    IntersectionResult result;
    result.crossings = std::move(raw_crossings);
    result.suspects = std::move(raw_suspects);
    if (self) {
        for (auto& c : result.crossings)
            if (c.t < c.s) std::swap(c.s, c.t);
        for (auto& c : result.suspects)
            if (c.t < c.s) std::swap(c.s, c.t);
    }
    dedup(result.crossings);
    dedup(result.suspects);
    return result;
}

} // namespace contactlab
