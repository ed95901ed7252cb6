#pragma once

#include "contactlab/common.hpp"
#include "contactlab/expression.hpp"

#include <optional>

namespace contactlab {

// Scalar field H on the contact manifold, optionally time dependent, with
// partial derivatives: symbolic for expression-backed fields, central finite
// differences (h = 1e-5 relative) for function-backed ones. Derivatives are
// validated against finite differences at construction.
class ContactHamiltonian {
  public:
    // Built-ins: "reeb" (1), "radial" (2z - xy), "coordinate-x" (x); anything
    // else is parsed as an expression in x, y, z, s.
    static ContactHamiltonian from_name_or_expression(const std::string& text);
    static ContactHamiltonian from_expression(const std::string& text);
    static ContactHamiltonian from_function(std::function<double(const Vec&, double)> value,
                                            bool time_dependent, std::string name = "function");

    double value(const Vec& p, double s = 0.0) const;
    Vec spatial_gradient(const Vec& p, double s = 0.0) const; // same dim as p

    bool time_dependent() const { return time_dependent_; }
    const std::string& name() const { return name_; }

    static const std::vector<std::pair<std::string, std::string>>& registry();

  private:
    ContactHamiltonian() = default;
    void validate_derivatives() const;

    std::string name_;
    bool time_dependent_ = false;
    std::optional<Expression> expr_;
    std::array<std::optional<Expression>, 3> grad_; // d/dx, d/dy, d/dz (n = 1)
    std::function<double(const Vec&, double)> fn_;
};

// Contact Hamiltonian vector field in the standard model:
//   dx_i = -H_{y_i},  dy_i = H_{x_i} + y_i H_z,  dz = H - sum_i y_i H_{y_i},
// the unique field with alpha(X_H) = H and i_{X_H} d(alpha)|_xi = -dH|_xi.
Vec contact_vector_field(const ContactHamiltonian& h, const Vec& p, double s = 0.0);

// Jacobian of the field at p by central differences; feeds the variational
// flow used for conformal-factor verification.
Eigen::MatrixXd contact_field_jacobian(const ContactHamiltonian& h, const Vec& p, double s = 0.0);

} // namespace contactlab
