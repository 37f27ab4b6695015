#pragma once

#include "gausslab/linalg.hpp"

#include <functional>

namespace gausslab {

// Quadrature rule integrating f against a weight; sum_i w_i f(x_i).
struct QuadratureRule {
  Vec nodes;
  Vec weights;
};

// Probabilists' Gauss-Hermite: exact for polynomials of degree < 2*order
// against the standard normal N(0,1).  Rules are cached per order.
const QuadratureRule& gauss_hermite(int order);

// Gauss-Legendre on [0,1] (for Taylor integral remainders).
const QuadratureRule& gauss_legendre_unit(int order);

// Integral of f against N(0,1) by order doubling (8, 16, ..., max_order)
// until two successive estimates agree to rel_tol.
double integrate_normal(const std::function<double(double)>& f,
                        double rel_tol = 1e-12, int max_order = 512);

// Same integral for integrands with kinks (e.g. |.|^p factors): the line is
// split at the kink points and each smooth panel integrated by composite
// Gauss-Legendre, restoring spectral convergence.
double integrate_normal_kinked(const std::function<double(double)>& f,
                               const std::vector<double>& kinks,
                               double rel_tol = 1e-12, int max_order = 512);

}  // namespace gausslab
