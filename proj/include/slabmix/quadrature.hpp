#pragma once

#include <Eigen/Core>

namespace slabmix {

/// Symmetric discrete-ordinate set on [-1,1]: direction cosines mu (ascending,
/// zero excluded) and positive weights summing to 2.
struct Quadrature {
  Eigen::VectorXd mu;
  Eigen::VectorXd w;

  int order() const { return static_cast<int>(mu.size()); }
};

/// n-point Gauss-Legendre rule on [-1,1], n even in [2,128]. Nodes found by
/// Newton iteration on P_n to residual below 1e-14, mirrored in exact pairs.
Quadrature gauss_legendre(int n);

/// n-point Gauss-Legendre nodes/weights mapped onto (a,b). Accepts any n >= 1;
/// used for moment integrals such as the beta coefficient.
void gauss_legendre_on(int n, double a, double b, Eigen::VectorXd& x,
                       Eigen::VectorXd& w);

}  // namespace slabmix
