#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace strichartz {

struct RealEigen {
  Eigen::VectorXd values;   ///< ascending
  Eigen::MatrixXd vectors;  ///< columns
};

struct ComplexEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

/// Symmetric eigendecomposition (LAPACK dsyevd).
RealEigen eigh(const Eigen::MatrixXd& a);
/// Hermitian eigendecomposition (LAPACK zheevd).
ComplexEigen eigh(const Eigen::MatrixXcd& a);

/// exp(-i tau H) from an eigendecomposition of H.
Eigen::MatrixXcd unitary_from(const RealEigen& e, double tau);
Eigen::MatrixXcd unitary_from(const ComplexEigen& e, double tau);

using LinearMap = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;

struct LanczosOptions {
  int max_dimension = 60;
  double tolerance = 1e-13;
};

/// exp(-i tau H) v for hermitian H given as a map, by Lanczos with full
/// reorthogonalization. The Krylov space grows until the a-posteriori error
/// estimate drops below tolerance * |v|.
Eigen::VectorXcd lanczos_expm(const LinearMap& h, const Eigen::VectorXcd& v, double tau,
                              const LanczosOptions& options = {});

/// Smallest eigenvalue of hermitian H by restarted Lanczos from a start vector.
double lanczos_lowest(const LinearMap& h, const Eigen::VectorXcd& start, int iterations = 200,
                      double tolerance = 1e-12);

}  // namespace strichartz
