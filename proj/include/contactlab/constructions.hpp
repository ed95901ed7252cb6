#pragma once

#include "contactlab/curve.hpp"

namespace contactlab {

// A SpaceCurve together with a verified bound on its Legendrian defect.
class LegendrianCurve {
  public:
    static LegendrianCurve certify(SpaceCurve c, double tol);

    const SpaceCurve& curve() const { return curve_; }
    double sup_defect() const { return sup_defect_; }
    double tolerance() const { return tol_; }

  private:
    LegendrianCurve(SpaceCurve c, double sup, double tol)
        : curve_(std::move(c)), sup_defect_(sup), tol_(tol) {}
    SpaceCurve curve_;
    double sup_defect_;
    double tol_;
};

// Unique Legendrian lift of an immersed planar curve: z(t) = z0 + int y dx.
// Analytic inputs lift with closed-form derivatives; sampled inputs lift to a
// piecewise form that is exactly Legendrian along every polyline segment.
LegendrianCurve legendrian_lift(const PlanarCurve& p, double z0);

// Legendrian approximation of the vertical interval over `base` with total
// z-gain `z_gain`: an embedded monotone-radius spiral in the eps-disc,
// clockwise turns for positive gain. The parameterization tracks z so the
// curve stays C0-close to the linearly-parameterized interval.
LegendrianCurve spiral_approximation(double z_gain, const Vec2& base, double eps);

struct WiggleResult {
    LegendrianCurve curve;
    std::vector<double> loop_actions; // signed action of each inserted loop
    long pieces = 0;
};

// Legendrian C0-approximation of a curve with Reeb field nowhere parallel to
// its velocity: the projection is lifted piecewise and a small planar loop of
// area |delta_k| is inserted at each partition point to cancel the
// accumulated z-error. Each loop crosses the curve once transversally, so it
// contributes one Reeb chord of length |delta_k|.
WiggleResult wiggle_approximation_detailed(const SpaceCurve& c, double eps);
LegendrianCurve wiggle_approximation(const SpaceCurve& c, double eps);

// Suspension of a curve into the symplectization-like product
// (M x [a,b], d(e^s alpha)): F(x,t) = (ReebFlow_{loop1(t)}(f(x)), loop2(t)).
struct SuspensionMap {
    SpaceCurve base;
    PlanarCurve loop; // (gamma1, gamma2), closed and embedded, gamma1 >= 0
    double s_min = 0.0, s_max = 1.0;
};

SuspensionMap make_suspension(SpaceCurve base, PlanarCurve loop, double a, double b);

// Max absolute value of the pulled-back 2-form F*(d(e^s alpha)) on the
// coordinate bivector grid; vanishes exactly when the base is Legendrian.
double suspension_pullback_norm(const SuspensionMap& m, int grid = 64);

// Circle loop in the (gamma1, gamma2) strip, for suspension experiments.
PlanarCurve suspension_circle_loop(const Vec2& center, double radius);

} // namespace contactlab
