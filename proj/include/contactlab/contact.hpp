#pragma once

#include "contactlab/common.hpp"

namespace contactlab {

// Tangent vector at a base point of R^{2n+1}.
struct TangentVector {
    Vec base;
    Vec components;

    static TangentVector make(Vec base, Vec components);
};

// Splitting of an ambient vector into its contact-plane part (expressed in the
// xi frame {e_{x,i} = d/dx_i + y_i d/dz, e_{y,i} = d/dy_i}) and a Reeb multiple.
struct LinePlaneDecomposition {
    Vec xi_frame;    // 2n components: (a_1..a_n, b_1..b_n)
    double reeb_part = 0.0;
};

// The standard contact model (R^{2n+1}, alpha = dz - sum_i y_i dx_i) with
// coordinates ordered (x_1..x_n, y_1..y_n, z). Reeb field is d/dz. The xi
// frame above makes d(alpha) and J constant matrices, so frame computations
// carry no point-dependent algebra.
class ContactModel {
  public:
    explicit ContactModel(int n = 1);

    int n() const { return n_; }
    int dim() const { return 2 * n_ + 1; }

    Vec reeb() const;

    // alpha_p(v) = v_z - sum_i y_i(p) v_{x,i}
    double alpha(const Vec& p, const Vec& v) const;
    double alpha(const TangentVector& v) const { return alpha(v.base, v.components); }

    // v = frame-part + alpha(v) * R; xi part returned in frame coordinates.
    LinePlaneDecomposition project(const Vec& p, const Vec& v) const;

    // Ambient embedding of a xi-frame vector at p.
    Vec frame_to_ambient(const Vec& p, const Vec& frame) const;

    // dalpha restricted to the frame: sum_i (a_i b'_i - b_i a'_i).
    double d_alpha_frame(const Vec& u, const Vec& v) const;

    // J e_{x,i} = e_{y,i}, J e_{y,i} = -e_{x,i}; acts on frame coordinates.
    Vec apply_J(const Vec& frame) const;

    // g_J(u, v) = dalpha(u, Jv); the standard inner product on the frame.
    double g_J(const Vec& u, const Vec& v) const;

    // True when the Reeb direction is parallel to v within kParallelTol.
    bool reeb_parallel(const Vec& v) const;

    // Spanning frame vector of E_p = (pi T_pL)^{perp d alpha} for a curve
    // tangent at p. For n = 1 a line in the contact plane is its own
    // symplectic complement, so this is span(pi(tangent)).
    Vec bundle_E(const Vec& p, const Vec& tangent) const;

  private:
    void check_point(const Vec& p) const;
    int n_;
};

} // namespace contactlab
