#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "strichartz/exponents.hpp"

namespace strichartz {

/// Axis list for a mixed partial derivative, e.g. {0, 0, 1} is d^3/dx0^2 dx1.
using AxisList = std::vector<int>;

/// s (1 + a sin(w t)) <x>^{2 nu} + offset, with <x>^2 = 1 + |x|^2.
/// Harmonic C<x>^2 is nu = 1, quartic <x>^4 is nu = 2, the sigma example is
/// nu = sigma / 2.
struct RadialPowerTerm {
  double strength = 0.0;
  double nu = 1.0;
  double modulation = 0.0;
  double frequency = 0.0;
  double offset = 0.0;
};

/// E . x, time independent.
struct ConstantElectricTerm {
  Eigen::VectorXd field;
};

/// Tabulated scalar profile; derivatives by fourth-order central differences.
struct CustomScalarTerm {
  std::function<double(double, const Eigen::VectorXd&)> value;
  double step = 1e-3;
};

struct ScalarTerm {
  enum class Kind { RadialPower, ConstantElectric, Custom } kind = Kind::RadialPower;
  RadialPowerTerm radial;
  ConstantElectricTerm electric;
  CustomScalarTerm custom;

  static ScalarTerm radial_power(double strength, double nu, double modulation = 0.0,
                                 double frequency = 0.0, double offset = 0.0);
  static ScalarTerm constant_electric(Eigen::VectorXd field);
  static ScalarTerm tabulated(std::function<double(double, const Eigen::VectorXd&)> value,
                              double step = 1e-3);
};

/// A = grad(c t <x>^{2 nu}). Gauge shifts (c = -C, nu = 1) and the sigma
/// example (c = -1 for unit charge, nu = sigma / 2) are of this form.
struct RadialGradientTerm {
  double coefficient = 0.0;
  double nu = 1.0;
};

/// A = K x, constant in time (uniform magnetic field for skew K).
struct LinearTerm {
  Eigen::MatrixXd matrix;
};

struct CustomVectorTerm {
  std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> value;
  double step = 1e-3;
};

struct VectorTerm {
  enum class Kind { RadialGradient, Linear, Custom } kind = Kind::RadialGradient;
  RadialGradientTerm gradient;
  LinearTerm linear;
  CustomVectorTerm custom;

  static VectorTerm radial_gradient(double coefficient, double nu);
  static VectorTerm linear_potential(Eigen::MatrixXd matrix);
  static VectorTerm tabulated(std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> value,
                              double step = 1e-3);
};

/// Electromagnetic potentials acting on one particle in R^d (the same field
/// acts on every particle, weighted by its charge).
class FieldSpec {
 public:
  explicit FieldSpec(int dimension = 1) : dimension_(dimension) {}

  int dimension() const noexcept { return dimension_; }
  const std::vector<ScalarTerm>& scalar_terms() const noexcept { return phi_; }
  const std::vector<VectorTerm>& vector_terms() const noexcept { return a_; }

  FieldSpec& add(ScalarTerm term);
  FieldSpec& add(VectorTerm term);

  bool has_vector_potential() const noexcept { return !a_.empty(); }
  /// True when neither phi nor A depends on t.
  bool time_independent() const;

  double phi(double t, const Eigen::VectorXd& x) const;
  double phi_dt(double t, const Eigen::VectorXd& x) const;
  double phi_derivative(double t, const Eigen::VectorXd& x, const AxisList& axes) const;

  Eigen::VectorXd A(double t, const Eigen::VectorXd& x) const;
  Eigen::VectorXd A_dt(double t, const Eigen::VectorXd& x) const;
  /// d^axes A_component.
  double A_derivative(double t, const Eigen::VectorXd& x, int component,
                      const AxisList& axes) const;
  double A_dt_derivative(double t, const Eigen::VectorXd& x, int component,
                         const AxisList& axes) const;

  /// True if A is a gradient for symbolic reasons (all terms radial-gradient).
  bool vector_potential_is_gradient() const;

 private:
  int dimension_;
  std::vector<ScalarTerm> phi_;
  std::vector<VectorTerm> a_;
};

/// <x> = (1 + |x|^2)^{1/2}.
double japanese_bracket(const Eigen::VectorXd& x);

/// d^axes of (1 + |x|^2)^nu, exact.
double radial_power_derivative(const Eigen::VectorXd& x, double nu, const AxisList& axes);

/// B_jk = d_j A_k - d_k A_j.
Eigen::MatrixXd magnetic_field(const FieldSpec& fields, double t, const Eigen::VectorXd& x);
/// d^axes B_jk.
Eigen::MatrixXd magnetic_field_derivative(const FieldSpec& fields, double t,
                                          const Eigen::VectorXd& x, const AxisList& axes);

struct ScanOptions {
  std::vector<double> box_radii{4.0, 8.0, 16.0};
  int samples_per_axis = 33;
  std::vector<double> times{0.0, 0.5, 1.0};
  int max_order = 3;
  /// Decay weight <x>^{1 + eps} for derivatives of B.
  double decay_epsilon = 0.5;
  /// A sup that grows by more than this factor from the smallest to the
  /// largest box is flagged as unbounded.
  double growth_factor = 1.5;
};

struct ScanCheck {
  std::string name;
  std::vector<double> sup_per_box;
  bool pass = true;
};

struct ScanReport {
  std::vector<double> box_radii;
  std::vector<ScanCheck> checks;
  bool pass = true;
  const ScanCheck* find(const std::string& name) const;
};

/// Sampled sup of |d^a phi| (2 <= |a| <= 3), <x>^{1+eps}|d^a B| (|a| >= 1),
/// |d^a A| + |d^a dA/dt| (|a| >= 1) and |dphi/dt| / <x>^2 on nested boxes.
ScanReport assumption_scan(const FieldSpec& fields, const ScanOptions& options = {});

/// Phase T(t) u = exp(i t c <x>^{2 nu}) u.
struct GaugeTransform {
  double coefficient = 0.0;
  double nu = 1.0;

  double phase(double t, const Eigen::VectorXd& x) const;
  static GaugeTransform harmonic(double C) { return {C, 1.0}; }
};

/// (phi + C<x>^2, A - 2tCx). Like terms are merged so that applying C and -C
/// in sequence returns the original spec exactly.
FieldSpec gauge_transform_fields(const FieldSpec& fields, double C);

struct SigmaExample {
  FieldSpec hamiltonian;  ///< H_C(t)
  FieldSpec comparison;   ///< H_{C,0}
  GaugeTransform gauge;   ///< T(t) = exp(i t <x>^sigma)
  double sigma = 0.0;
  double C = 0.0;
};

/// H_C(t) = 1/2 (-i grad + sigma t x <x>^{sigma-2})^2 + C<x>^sigma for a unit
/// charge, and H_{C,0} = -1/2 Laplacian + C<x>^sigma.
SigmaExample sigma_example(int dimension, double sigma, double C);

struct PotentialCenter {
  Eigen::VectorXd position;
  Eigen::VectorXd velocity;
  double strength = 1.0;
};

/// A cluster interaction V_D(t, x_{D,r}).
struct PotentialTerm {
  enum class Profile { PowerLaw, Gaussian } profile = Profile::PowerLaw;
  std::vector<int> cluster;
  double gamma = 1.0;
  double epsilon = 0.0;
  /// Gaussian profile: Z exp(-|x - y|^2 / (2 width^2)).
  double width = 1.0;
  std::vector<PotentialCenter> centers;
  /// Integrability exponent p_D declared for norm bookkeeping.
  ExponentRational p = ExponentRational::infinity();

  /// Single static center at the origin with unit strength.
  static PotentialTerm power_law(std::vector<int> cluster, int relative_dim, double gamma,
                                 double epsilon);
  static PotentialTerm gaussian(std::vector<int> cluster, int relative_dim, double strength,
                                double width);

  /// sup |V| bound: eps^{-gamma} sum |Z| (power law), sum |Z| (gaussian).
  double sup_bound() const;
};

/// sum_l Z_l (|x - y_l(t)|^2 + eps^2)^{-gamma/2} in relative coordinates.
double eval_V(const PotentialTerm& term, double t, const Eigen::VectorXd& x_relative);

}  // namespace strichartz
