#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace contactlab {

using Vec = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

// Violated precondition or malformed input (wrong dimensions, bad schema, ...).
struct contract_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input is formally valid but geometrically degenerate for the requested
// operation (Reeb-tangent curve, non-immersed projection, overlapping traces).
struct degenerate_input_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Numerical integration failed to meet its accuracy contract.
struct integration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Library-wide tolerances. Stated once, reused everywhere.
inline constexpr double kLegendrianTolAnalytic = 1e-9;
inline constexpr double kLegendrianTolSampled = 1e-6;
inline constexpr double kPlanarMatchTol = 1e-9;   // tau_xy for chord matching
inline constexpr double kParamDedupFactor = 1e-6; // tau_param = factor * domain length
inline constexpr double kParallelTol = 1e-9;      // normalized parallelism threshold
inline constexpr double kImmersionSpeedTol = 1e-8;
inline constexpr double kFiniteDiffStep = 1e-5; // relative, h = step * (1 + |coord|)

std::vector<double> linspace(double a, double b, int n);

// Derivative at tq of the quadratic through (t0,f0), (t1,f1), (t2,f2).
// Second-order accurate on non-uniform grids; used for sampled-curve tangents.
Vec quadratic_interp_derivative(double tq, double t0, const Vec& f0, double t1, const Vec& f1,
                                double t2, const Vec& f2);

// Prefix integral of a scalar function over [a, b] by composite Simpson on a
// fixed cell grid; evaluation inside a cell completes with a partial Simpson
// step so values are smooth in t.
class CumulativeIntegral {
  public:
    CumulativeIntegral() = default;
    CumulativeIntegral(std::function<double(double)> f, double a, double b, int cells);

    double operator()(double t) const; // integral a..t
    double total() const { return prefix_.empty() ? 0.0 : prefix_.back(); }
    double lower() const { return a_; }
    double upper() const { return b_; }

  private:
    std::function<double(double)> f_;
    double a_ = 0.0, b_ = 1.0, h_ = 1.0;
    std::vector<double> prefix_; // cells + 1 entries
};

std::uint64_t fnv1a64(std::string_view data);

// 17 significant digits, '.' decimal, no locale surprises.
std::string format_g17(double v);

} // namespace contactlab
