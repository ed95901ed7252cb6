#include "contactlab/hamiltonian.hpp"

#include <cmath>
#include <random>

namespace contactlab {

const std::vector<std::pair<std::string, std::string>>& ContactHamiltonian::registry() {
    static const std::vector<std::pair<std::string, std::string>> reg = {
        {"reeb", "1"},
        {"radial", "2*z - x*y"},
        {"coordinate-x", "x"},
    };
    return reg;
}

ContactHamiltonian ContactHamiltonian::from_name_or_expression(const std::string& text) {
    for (const auto& [name, expr] : registry()) {
        if (text == name) {
            auto h = from_expression(expr);
            h.name_ = name;
            return h;
        }
    }
    return from_expression(text);
}

ContactHamiltonian ContactHamiltonian::from_expression(const std::string& text) {
    ContactHamiltonian h;
    h.name_ = text;
    h.expr_ = Expression::parse(text);
    h.time_dependent_ = h.expr_->uses_variable(3);
    for (int i = 0; i < 3; ++i) h.grad_[static_cast<size_t>(i)] = h.expr_->derivative(i);
    h.validate_derivatives();
    return h;
}

ContactHamiltonian ContactHamiltonian::from_function(
    std::function<double(const Vec&, double)> value, bool time_dependent, std::string name) {
    if (!value) throw contract_error("ContactHamiltonian: null function");
    ContactHamiltonian h;
    h.name_ = std::move(name);
    h.fn_ = std::move(value);
    h.time_dependent_ = time_dependent;
    return h;
}

double ContactHamiltonian::value(const Vec& p, double s) const {
    if (expr_) {
        if (p.size() != 3)
            throw contract_error("ContactHamiltonian: expression fields need 3d points");
        return expr_->eval(p[0], p[1], p[2], s);
    }
    return fn_(p, s);
}

Vec ContactHamiltonian::spatial_gradient(const Vec& p, double s) const {
    if (expr_) {
        if (p.size() != 3)
            throw contract_error("ContactHamiltonian: expression fields need 3d points");
        Vec g(3);
        for (int i = 0; i < 3; ++i) g[i] = grad_[static_cast<size_t>(i)]->eval(p[0], p[1], p[2], s);
        return g;
    }
    Vec g(p.size());
    for (int i = 0; i < p.size(); ++i) {
        const double h = kFiniteDiffStep * (1.0 + std::abs(p[i]));
        Vec hi = p, lo = p;
        hi[i] += h;
        lo[i] -= h;
        g[i] = (fn_(hi, s) - fn_(lo, s)) / (2.0 * h);
    }
    return g;
}

void ContactHamiltonian::validate_derivatives() const {
    std::mt19937_64 rng(20240612u);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::uniform_real_distribution<double> time(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        Vec p(3);
        for (int i = 0; i < 3; ++i) p[i] = coord(rng);
        const double s = time(rng);
        const Vec g = spatial_gradient(p, s);
        for (int i = 0; i < 3; ++i) {
            const double h = kFiniteDiffStep * (1.0 + std::abs(p[i]));
            Vec hi = p, lo = p;
            hi[i] += h;
            lo[i] -= h;
            const double fd = (value(hi, s) - value(lo, s)) / (2.0 * h);
            const double scale = std::max({1.0, std::abs(g[i]), std::abs(fd)});
            if (std::abs(g[i] - fd) / scale > 1e-4)
                throw contract_error("ContactHamiltonian: derivative validation failed for " +
                                     name_);
        }
    }
}

Vec contact_vector_field(const ContactHamiltonian& h, const Vec& p, double s) {
    const int d = static_cast<int>(p.size());
    if (d < 3 || d % 2 == 0)
        throw contract_error("contact_vector_field: point must live in R^{2n+1}");
    const int n = (d - 1) / 2;
    const double H = h.value(p, s);
    const Vec g = h.spatial_gradient(p, s);
    Vec X(d);
    double zdot = H;
    for (int i = 0; i < n; ++i) {
        X[i] = -g[n + i];
        X[n + i] = g[i] + p[n + i] * g[d - 1];
        zdot -= p[n + i] * g[n + i];
    }
    X[d - 1] = zdot;
    return X;
}

Eigen::MatrixXd contact_field_jacobian(const ContactHamiltonian& h, const Vec& p, double s) {
    const int d = static_cast<int>(p.size());
    Eigen::MatrixXd J(d, d);
    for (int i = 0; i < d; ++i) {
        const double step = kFiniteDiffStep * (1.0 + std::abs(p[i]));
        Vec hi = p, lo = p;
        hi[i] += step;
        lo[i] -= step;
        J.col(i) = (contact_vector_field(h, hi, s) - contact_vector_field(h, lo, s)) /
                   (2.0 * step);
    }
    return J;
}

} // namespace contactlab
