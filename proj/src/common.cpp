#include "contactlab/common.hpp"

#include <cmath>
#include <cstdio>

namespace contactlab {

std::vector<double> linspace(double a, double b, int n) {
    if (n < 2) throw contract_error("linspace: need at least 2 nodes");
    std::vector<double> out(static_cast<size_t>(n));
    const double h = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = a + h * i;
    out.back() = b;
    return out;
}

Vec quadratic_interp_derivative(double tq, double t0, const Vec& f0, double t1, const Vec& f1,
                                double t2, const Vec& f2) {
    const double d01 = t0 - t1, d02 = t0 - t2, d12 = t1 - t2;
    if (d01 == 0.0 || d02 == 0.0 || d12 == 0.0)
        throw contract_error("quadratic_interp_derivative: coincident abscissae");
    const double w0 = (2.0 * tq - t1 - t2) / (d01 * d02);
    const double w1 = (2.0 * tq - t0 - t2) / (-d01 * d12);
    const double w2 = (2.0 * tq - t0 - t1) / (d02 * d12);
    return w0 * f0 + w1 * f1 + w2 * f2;
}

CumulativeIntegral::CumulativeIntegral(std::function<double(double)> f, double a, double b,
                                       int cells)
    : f_(std::move(f)), a_(a), b_(b) {
    if (!(b > a)) throw contract_error("CumulativeIntegral: empty interval");
    if (cells < 1) throw contract_error("CumulativeIntegral: need at least one cell");
    h_ = (b - a) / cells;
    prefix_.resize(static_cast<size_t>(cells) + 1, 0.0);
    double left = f_(a);
    for (int i = 0; i < cells; ++i) {
        const double tl = a + h_ * i;
        const double tr = (i + 1 == cells) ? b : tl + h_;
        const double mid = f_(0.5 * (tl + tr));
        const double right = f_(tr);
        prefix_[static_cast<size_t>(i) + 1] =
            prefix_[static_cast<size_t>(i)] + (tr - tl) / 6.0 * (left + 4.0 * mid + right);
        left = right;
    }
}

double CumulativeIntegral::operator()(double t) const {
    if (prefix_.empty()) return 0.0;
    if (t <= a_) return 0.0;
    if (t >= b_) return prefix_.back();
    const int cells = static_cast<int>(prefix_.size()) - 1;
    int i = static_cast<int>((t - a_) / h_);
    if (i >= cells) i = cells - 1;
    const double tl = a_ + h_ * i;
    if (t <= tl) return prefix_[static_cast<size_t>(i)];
    const double mid = f_(0.5 * (tl + t));
    const double part = (t - tl) / 6.0 * (f_(tl) + 4.0 * mid + f_(t));
    return prefix_[static_cast<size_t>(i)] + part;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

} // namespace contactlab
