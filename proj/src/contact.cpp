#include "contactlab/contact.hpp"

#include <cmath>

namespace contactlab {

TangentVector TangentVector::make(Vec base, Vec components) {
    if (base.size() != components.size())
        throw contract_error("TangentVector: base/component dimension mismatch");
    if (!base.allFinite() || !components.allFinite())
        throw contract_error("TangentVector: non-finite entries");
    return TangentVector{std::move(base), std::move(components)};
}

ContactModel::ContactModel(int n) : n_(n) {
    if (n < 1) throw contract_error("ContactModel: n must be positive");
}

void ContactModel::check_point(const Vec& p) const {
    if (p.size() != dim()) throw contract_error("ContactModel: point dimension mismatch");
}

Vec ContactModel::reeb() const {
    Vec r = Vec::Zero(dim());
    r[dim() - 1] = 1.0;
    return r;
}

double ContactModel::alpha(const Vec& p, const Vec& v) const {
    check_point(p);
    if (v.size() != dim()) throw contract_error("ContactModel: vector dimension mismatch");
    double a = v[dim() - 1];
    for (int i = 0; i < n_; ++i) a -= p[n_ + i] * v[i];
    return a;
}

LinePlaneDecomposition ContactModel::project(const Vec& p, const Vec& v) const {
    LinePlaneDecomposition out;
    out.reeb_part = alpha(p, v);
    // The xi part of v has the same (x, y) components as v; only the z
    // component is adjusted, and in frame coordinates it is implicit.
    out.xi_frame = v.head(2 * n_);
    return out;
}

Vec ContactModel::frame_to_ambient(const Vec& p, const Vec& frame) const {
    check_point(p);
    if (frame.size() != 2 * n_) throw contract_error("ContactModel: frame dimension mismatch");
    Vec amb = Vec::Zero(dim());
    amb.head(2 * n_) = frame;
    double z = 0.0;
    for (int i = 0; i < n_; ++i) z += frame[i] * p[n_ + i]; // e_{x,i} carries y_i d/dz
    amb[dim() - 1] = z;
    return amb;
}

double ContactModel::d_alpha_frame(const Vec& u, const Vec& v) const {
    if (u.size() != 2 * n_ || v.size() != 2 * n_)
        throw contract_error("ContactModel: frame dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += u[i] * v[n_ + i] - u[n_ + i] * v[i];
    return s;
}

Vec ContactModel::apply_J(const Vec& frame) const {
    if (frame.size() != 2 * n_) throw contract_error("ContactModel: frame dimension mismatch");
    Vec out(2 * n_);
    for (int i = 0; i < n_; ++i) {
        out[i] = -frame[n_ + i];
        out[n_ + i] = frame[i];
    }
    return out;
}

double ContactModel::g_J(const Vec& u, const Vec& v) const { return d_alpha_frame(u, apply_J(v)); }

bool ContactModel::reeb_parallel(const Vec& v) const {
    if (v.size() != dim()) throw contract_error("ContactModel: vector dimension mismatch");
    const double norm = v.norm();
    if (norm == 0.0) return true;
    return v.head(2 * n_).norm() / norm < kParallelTol;
}

Vec ContactModel::bundle_E(const Vec& p, const Vec& tangent) const {
    check_point(p);
    if (n_ != 1)
        throw contract_error("bundle_E: implemented for curves in dimension 3 (n = 1)");
    if (reeb_parallel(tangent))
        throw degenerate_input_error("bundle_E: Reeb field parallel to the tangent line");
    return project(p, tangent).xi_frame;
}

} // namespace contactlab
