#pragma once

#include "contactlab/common.hpp"

#include <array>
#include <memory>

namespace contactlab {

// Scalar expression in the variables x, y, z, s with + - * / ^, unary minus,
// and the functions sin, cos, exp. Supports symbolic differentiation, which
// keeps Hamiltonian gradients exact.
class Expression {
  public:
    static Expression parse(const std::string& text); // throws contract_error

    double eval(double x, double y, double z, double s = 0.0) const;
    Expression derivative(int var) const; // 0..3 = x, y, z, s
    bool uses_variable(int var) const;
    std::string to_string() const;

    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

  private:
    explicit Expression(NodePtr root) : root_(std::move(root)) {}
    NodePtr root_;
};

} // namespace contactlab
