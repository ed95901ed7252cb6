#pragma once

#include "contactlab/common.hpp"
#include "contactlab/contact.hpp"

#include <memory>
#include <optional>

namespace contactlab {

// Construction metadata carried by curves produced by the approximation
// routines; serialized alongside the samples.
struct Provenance {
    std::string construction;
    double epsilon = 0.0;
    long loops = 0;
    long turns = 0;
};

namespace detail {

struct CurveRep {
    int dim = 3;
    double t0 = 0.0, t1 = 1.0;
    bool closed = false;
    bool sampled = false;

    // analytic representation
    std::function<Vec(double)> pos_fn;
    std::function<Vec(double)> deriv_fn;
    std::vector<double> preferred_nodes; // natural sampling for geometry queries

    // sampled representation (piecewise-linear between nodes)
    std::vector<double> ts;
    std::vector<Vec> pts;
    std::vector<Vec> node_derivs; // quadratic-interpolant derivatives at nodes

    double min_speed = 0.0;
    std::optional<Provenance> provenance;

    Vec position(double t) const;
    Vec derivative(double t) const;
    int segment_index(double t) const; // sampled only
};

using RepPtr = std::shared_ptr<const CurveRep>;

RepPtr make_analytic_rep(int dim, double t0, double t1, std::function<Vec(double)> pos,
                         std::function<Vec(double)> deriv, bool closed,
                         std::vector<double> preferred);
RepPtr make_sampled_rep(int dim, std::vector<double> ts, std::vector<Vec> pts, bool closed);

class CurveBase {
  public:
    double t0() const { return rep_->t0; }
    double t1() const { return rep_->t1; }
    double domain_length() const { return rep_->t1 - rep_->t0; }
    bool closed() const { return rep_->closed; }
    bool is_sampled() const { return rep_->sampled; }
    int dim() const { return rep_->dim; }

    Vec position(double t) const { return rep_->position(t); }
    Vec derivative(double t) const { return rep_->derivative(t); }

    // Estimated minimum speed over nodes; curves with min_speed below
    // kImmersionSpeedTol are constructible but rejected by operations that
    // require an immersion.
    double min_speed() const { return rep_->min_speed; }
    bool immersed() const { return rep_->min_speed >= kImmersionSpeedTol; }

    // Parameter grid used for polyline queries: the curve's own nodes when it
    // has them, otherwise a uniform grid (merged with any preferred nodes).
    std::vector<double> sample_params(int target = 0) const;

    const std::optional<Provenance>& provenance() const { return rep_->provenance; }
    const detail::RepPtr& rep() const { return rep_; }

  protected:
    explicit CurveBase(detail::RepPtr rep) : rep_(std::move(rep)) {}
    detail::RepPtr rep_;
};

} // namespace detail

class PlanarCurve;

// Parameterized curve in R^{2n+1}, analytic (closed-form position and
// derivative) or sampled (strictly increasing grid, >= 16 nodes).
class SpaceCurve : public detail::CurveBase {
  public:
    static SpaceCurve analytic(int n, double t0, double t1, std::function<Vec(double)> pos,
                               std::function<Vec(double)> deriv, bool closed = false,
                               std::vector<double> preferred_nodes = {});
    static SpaceCurve sampled(int n, std::vector<double> ts, std::vector<Vec> pts,
                              bool closed = false);

    int n() const { return (dim() - 1) / 2; }

    SpaceCurve resampled(int nodes) const;
    SpaceCurve with_provenance(Provenance p) const;
    SpaceCurve translated(const Vec& offset) const;

  private:
    friend SpaceCurve space_curve_from_rep(detail::RepPtr);
    explicit SpaceCurve(detail::RepPtr rep) : CurveBase(std::move(rep)) {}
};

// Curve in R^{2n}; same representation with even ambient dimension.
class PlanarCurve : public detail::CurveBase {
  public:
    static PlanarCurve analytic(int n, double t0, double t1, std::function<Vec(double)> pos,
                                std::function<Vec(double)> deriv, bool closed = false,
                                std::vector<double> preferred_nodes = {});
    static PlanarCurve sampled(int n, std::vector<double> ts, std::vector<Vec> pts,
                               bool closed = false);

    int n() const { return dim() / 2; }

    PlanarCurve resampled(int nodes) const;
    PlanarCurve with_provenance(Provenance p) const;

  private:
    friend PlanarCurve planar_curve_from_rep(detail::RepPtr);
    explicit PlanarCurve(detail::RepPtr rep) : CurveBase(std::move(rep)) {}
};

SpaceCurve space_curve_from_rep(detail::RepPtr rep);
PlanarCurve planar_curve_from_rep(detail::RepPtr rep);

struct DefectReport {
    double sup_defect = 0.0;   // max |alpha(c')| / |c'|
    double total_defect = 0.0; // integral of alpha(c') dt
    double argmax_param = 0.0;
};

// Normalized and integrated failure of the Legendrian condition alpha(c') = 0.
DefectReport legendrian_defect(const SpaceCurve& c, int grid = 0);

// Drops the z coordinate, preserving parameterization, sampling and closedness.
PlanarCurve lagrangian_projection(const SpaceCurve& c);

// Parameterized sup distance on a common refinement grid. Domains are matched
// by affine reparameterization of b onto a's domain.
double c0_distance(const SpaceCurve& a, const SpaceCurve& b, int grid = 0);
double c0_distance(const PlanarCurve& a, const PlanarCurve& b, int grid = 0);

// Integral of y dx (sum_i y_i dx_i): exact per segment on polylines,
// composite Simpson on analytic curves.
double path_action(const PlanarCurve& p, int grid = 0);

// Prefix action t0..t; same quadrature rules as path_action.
double path_action_prefix(const PlanarCurve& p, double t, int grid = 0);

// Green/shoelace signed area of a closed planar curve, CCW positive. n = 1.
double signed_area(const PlanarCurve& p, int grid = 0);

// Total turning of a closed planar curve around q, by cumulative angle
// summation; throws if q lies on the curve or the residual exceeds 0.1.
int winding_number(const PlanarCurve& p, const Vec2& q, int grid = 0);

} // namespace contactlab
