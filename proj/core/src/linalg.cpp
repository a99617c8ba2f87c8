#include "strichartz/linalg.hpp"

#include <lapacke.h>

#include <cmath>

#include "strichartz/error.hpp"

namespace strichartz {

RealEigen eigh(const Eigen::MatrixXd& a) {
  require(a.rows() == a.cols(), ErrorKind::DimensionMismatch, "eigh needs a square matrix");
  RealEigen out;
  out.vectors = a;  // column major, overwritten with eigenvectors
  out.values.resize(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.rows());
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, out.vectors.data(), n,
                                         out.values.data());
  require(info == 0, ErrorKind::LinearSolve, "dsyevd failed with info " + std::to_string(info));
  return out;
}

ComplexEigen eigh(const Eigen::MatrixXcd& a) {
  require(a.rows() == a.cols(), ErrorKind::DimensionMismatch, "eigh needs a square matrix");
  ComplexEigen out;
  out.vectors = a;
  out.values.resize(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.rows());
  const lapack_int info =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                     reinterpret_cast<lapack_complex_double*>(out.vectors.data()), n,
                     out.values.data());
  require(info == 0, ErrorKind::LinearSolve, "zheevd failed with info " + std::to_string(info));
  return out;
}

namespace {

Eigen::VectorXcd phases(const Eigen::VectorXd& values, double tau) {
  Eigen::VectorXcd p(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    p(i) = std::exp(std::complex<double>(0.0, -tau * values(i)));
  }
  return p;
}

}  // namespace

Eigen::MatrixXcd unitary_from(const RealEigen& e, double tau) {
  const Eigen::MatrixXcd q = e.vectors.cast<std::complex<double>>();
  return q * phases(e.values, tau).asDiagonal() * q.adjoint();
}

Eigen::MatrixXcd unitary_from(const ComplexEigen& e, double tau) {
  return e.vectors * phases(e.values, tau).asDiagonal() * e.vectors.adjoint();
}

Eigen::VectorXcd lanczos_expm(const LinearMap& h, const Eigen::VectorXcd& v, double tau,
                              const LanczosOptions& options) {
  const double beta0 = v.norm();
  if (beta0 == 0.0 || tau == 0.0) return v;
  const int mmax = std::min<int>(options.max_dimension, static_cast<int>(v.size()));
  Eigen::MatrixXcd basis(v.size(), mmax + 1);
  std::vector<double> alpha, beta;
  basis.col(0) = v / beta0;
  Eigen::VectorXcd result;
  for (int j = 0; j < mmax; ++j) {
    Eigen::VectorXcd w = h(basis.col(j));
    const double a = basis.col(j).dot(w).real();
    alpha.push_back(a);
    // Full reorthogonalization, twice for stability.
    for (int pass = 0; pass < 2; ++pass) {
      w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).adjoint() * w);
    }
    const double b = w.norm();
    const int m = j + 1;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) t(i, i) = alpha[static_cast<std::size_t>(i)];
    for (int i = 0; i + 1 < m; ++i) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    Eigen::VectorXcd coeff =
        es.eigenvectors().cast<std::complex<double>>() *
        (phases(es.eigenvalues(), tau).asDiagonal() *
         es.eigenvectors().row(0).transpose().cast<std::complex<double>>());
    // Error estimate: residual coupling into the next Krylov vector.
    const double err = b * std::abs(coeff(m - 1));
    result = beta0 * (basis.leftCols(m) * coeff);
    if (err < options.tolerance || b < 1e-14 * std::max(1.0, std::abs(a))) return result;
    beta.push_back(b);
    basis.col(j + 1) = w / b;
  }
  fail(ErrorKind::Instability,
       "krylov-exponential: Lanczos did not converge within the Krylov dimension cap; reduce the "
       "time step");
}

double lanczos_lowest(const LinearMap& h, const Eigen::VectorXcd& start, int iterations,
                      double tolerance) {
  require(start.norm() > 0.0, ErrorKind::InvalidArgument, "Lanczos start vector is zero");
  Eigen::VectorXcd v = start / start.norm();
  double previous = std::numeric_limits<double>::infinity();
  const int m = std::min<int>(iterations, static_cast<int>(start.size()));
  for (int restart = 0; restart < 50; ++restart) {
    Eigen::MatrixXcd basis(v.size(), m);
    std::vector<double> alpha, beta;
    basis.col(0) = v;
    int used = 0;
    for (int j = 0; j < m; ++j) {
      Eigen::VectorXcd w = h(basis.col(j));
      alpha.push_back(basis.col(j).dot(w).real());
      for (int pass = 0; pass < 2; ++pass) {
        w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).adjoint() * w);
      }
      used = j + 1;
      const double b = w.norm();
      if (b < 1e-13 || j + 1 == m) break;
      beta.push_back(b);
      basis.col(j + 1) = w / b;
    }
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(used, used);
    for (int i = 0; i < used; ++i) t(i, i) = alpha[static_cast<std::size_t>(i)];
    for (int i = 0; i + 1 < used; ++i) {
      t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const double lowest = es.eigenvalues()(0);
    v = basis.leftCols(used) * es.eigenvectors().col(0).cast<std::complex<double>>();
    v /= v.norm();
    const Eigen::VectorXcd r = h(v) - lowest * v;
    if (r.norm() < tolerance * std::max(1.0, std::abs(lowest)) ||
        std::abs(previous - lowest) < tolerance * std::max(1.0, std::abs(lowest))) {
      return lowest;
    }
    previous = lowest;
  }
  return previous;
}

}  // namespace strichartz
