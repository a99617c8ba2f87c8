#include "strichartz/fields.hpp"

#include <algorithm>
#include <cmath>

#include "strichartz/error.hpp"

namespace strichartz {

namespace {

// All set partitions of {0, ..., k-1}; each partition is a list of blocks.
using Partition = std::vector<std::vector<int>>;

void enumerate_partitions(int k, int next, Partition& current, std::vector<Partition>& out) {
  if (next == k) {
    out.push_back(current);
    return;
  }
  for (std::size_t b = 0; b < current.size(); ++b) {
    current[b].push_back(next);
    enumerate_partitions(k, next + 1, current, out);
    current[b].pop_back();
  }
  current.push_back({next});
  enumerate_partitions(k, next + 1, current, out);
  current.pop_back();
}

const std::vector<Partition>& partitions_of(int k) {
  static const std::vector<std::vector<Partition>> table = [] {
    std::vector<std::vector<Partition>> t;
    for (int n = 0; n <= 6; ++n) {
      std::vector<Partition> out;
      Partition current;
      enumerate_partitions(n, 0, current, out);
      t.push_back(std::move(out));
    }
    return t;
  }();
  require(k >= 0 && k < static_cast<int>(table.size()), ErrorKind::OutOfRange,
          "derivative order too high");
  return table[static_cast<std::size_t>(k)];
}

// m-th derivative of r^nu.
double power_derivative(double r, double nu, int m) {
  double coeff = 1.0;
  for (int i = 0; i < m; ++i) coeff *= (nu - i);
  if (coeff == 0.0) return 0.0;
  return coeff * std::pow(r, nu - m);
}

double fd_first(const std::function<double(double)>& f, double h) {
  return (-f(2 * h) + 8 * f(h) - 8 * f(-h) + f(-2 * h)) / (12 * h);
}

// Nested fourth-order central differences along the listed axes.
double fd_derivative(const std::function<double(const Eigen::VectorXd&)>& f,
                     const Eigen::VectorXd& x, const AxisList& axes, std::size_t from, double h) {
  if (from == axes.size()) return f(x);
  const int axis = axes[from];
  return fd_first(
      [&](double shift) {
        Eigen::VectorXd y = x;
        y(axis) += shift;
        return fd_derivative(f, y, axes, from + 1, h);
      },
      h);
}

AxisList sorted(AxisList axes) {
  std::sort(axes.begin(), axes.end());
  return axes;
}

void check_point(int dimension, const Eigen::VectorXd& x) {
  require(x.size() == dimension, ErrorKind::DimensionMismatch,
          "field evaluated at a point of the wrong dimension");
}

// All sorted axis lists of the given length over d axes.
std::vector<AxisList> multi_indices(int d, int order) {
  std::vector<AxisList> out;
  AxisList current(static_cast<std::size_t>(order), 0);
  std::function<void(int, int)> rec = [&](int pos, int lo) {
    if (pos == order) {
      out.push_back(current);
      return;
    }
    for (int a = lo; a < d; ++a) {
      current[static_cast<std::size_t>(pos)] = a;
      rec(pos + 1, a);
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace

ScalarTerm ScalarTerm::radial_power(double strength, double nu, double modulation,
                                    double frequency, double offset) {
  ScalarTerm t;
  t.kind = Kind::RadialPower;
  t.radial = {strength, nu, modulation, frequency, offset};
  return t;
}

ScalarTerm ScalarTerm::constant_electric(Eigen::VectorXd field) {
  ScalarTerm t;
  t.kind = Kind::ConstantElectric;
  t.electric.field = std::move(field);
  return t;
}

ScalarTerm ScalarTerm::tabulated(std::function<double(double, const Eigen::VectorXd&)> value,
                                 double step) {
  ScalarTerm t;
  t.kind = Kind::Custom;
  t.custom = {std::move(value), step};
  return t;
}

VectorTerm VectorTerm::radial_gradient(double coefficient, double nu) {
  VectorTerm t;
  t.kind = Kind::RadialGradient;
  t.gradient = {coefficient, nu};
  return t;
}

VectorTerm VectorTerm::linear_potential(Eigen::MatrixXd matrix) {
  VectorTerm t;
  t.kind = Kind::Linear;
  t.linear.matrix = std::move(matrix);
  return t;
}

VectorTerm VectorTerm::tabulated(
    std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> value, double step) {
  VectorTerm t;
  t.kind = Kind::Custom;
  t.custom = {std::move(value), step};
  return t;
}

FieldSpec& FieldSpec::add(ScalarTerm term) {
  if (term.kind == ScalarTerm::Kind::ConstantElectric) {
    require(term.electric.field.size() == dimension_, ErrorKind::DimensionMismatch,
            "electric field vector has the wrong dimension");
  }
  phi_.push_back(std::move(term));
  return *this;
}

FieldSpec& FieldSpec::add(VectorTerm term) {
  if (term.kind == VectorTerm::Kind::Linear) {
    require(term.linear.matrix.rows() == dimension_ && term.linear.matrix.cols() == dimension_,
            ErrorKind::DimensionMismatch, "linear vector potential matrix must be d x d");
  }
  a_.push_back(std::move(term));
  return *this;
}

bool FieldSpec::time_independent() const {
  for (const auto& s : phi_) {
    if (s.kind == ScalarTerm::Kind::Custom) return false;
    if (s.kind == ScalarTerm::Kind::RadialPower && s.radial.modulation != 0.0 &&
        s.radial.frequency != 0.0) {
      return false;
    }
  }
  for (const auto& v : a_) {
    if (v.kind == VectorTerm::Kind::Custom) return false;
    if (v.kind == VectorTerm::Kind::RadialGradient && v.gradient.coefficient != 0.0) return false;
  }
  return true;
}

bool FieldSpec::vector_potential_is_gradient() const {
  return std::all_of(a_.begin(), a_.end(),
                     [](const VectorTerm& v) { return v.kind == VectorTerm::Kind::RadialGradient; });
}

double japanese_bracket(const Eigen::VectorXd& x) { return std::sqrt(1.0 + x.squaredNorm()); }

double radial_power_derivative(const Eigen::VectorXd& x, double nu, const AxisList& axes_in) {
  const AxisList axes = sorted(axes_in);
  const double rho = 1.0 + x.squaredNorm();
  const int k = static_cast<int>(axes.size());
  if (k == 0) return std::pow(rho, nu);
  double total = 0.0;
  for (const auto& partition : partitions_of(k)) {
    double product = 1.0;
    for (const auto& block : partition) {
      if (block.size() == 1) {
        product *= 2.0 * x(axes[static_cast<std::size_t>(block[0])]);
      } else if (block.size() == 2) {
        product *= axes[static_cast<std::size_t>(block[0])] ==
                           axes[static_cast<std::size_t>(block[1])]
                       ? 2.0
                       : 0.0;
      } else {
        product = 0.0;
      }
      if (product == 0.0) break;
    }
    if (product != 0.0) {
      total += power_derivative(rho, nu, static_cast<int>(partition.size())) * product;
    }
  }
  return total;
}

double FieldSpec::phi(double t, const Eigen::VectorXd& x) const {
  return phi_derivative(t, x, {});
}

double FieldSpec::phi_derivative(double t, const Eigen::VectorXd& x, const AxisList& axes) const {
  check_point(dimension_, x);
  double sum = 0.0;
  for (const auto& s : phi_) {
    switch (s.kind) {
      case ScalarTerm::Kind::RadialPower: {
        const auto& r = s.radial;
        const double amp = r.strength * (1.0 + r.modulation * std::sin(r.frequency * t));
        sum += amp * radial_power_derivative(x, r.nu, axes);
        if (axes.empty()) sum += r.offset;
        break;
      }
      case ScalarTerm::Kind::ConstantElectric:
        if (axes.empty()) {
          sum += s.electric.field.dot(x);
        } else if (axes.size() == 1) {
          sum += s.electric.field(axes[0]);
        }
        break;
      case ScalarTerm::Kind::Custom:
        sum += fd_derivative([&](const Eigen::VectorXd& y) { return s.custom.value(t, y); }, x,
                             axes, 0, s.custom.step);
        break;
    }
  }
  return sum;
}

double FieldSpec::phi_dt(double t, const Eigen::VectorXd& x) const {
  check_point(dimension_, x);
  double sum = 0.0;
  for (const auto& s : phi_) {
    if (s.kind == ScalarTerm::Kind::RadialPower) {
      const auto& r = s.radial;
      sum += r.strength * r.modulation * r.frequency * std::cos(r.frequency * t) *
             std::pow(1.0 + x.squaredNorm(), r.nu);
    } else if (s.kind == ScalarTerm::Kind::Custom) {
      sum += fd_first([&](double dt) { return s.custom.value(t + dt, x); }, s.custom.step);
    }
  }
  return sum;
}

Eigen::VectorXd FieldSpec::A(double t, const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(dimension_);
  for (int k = 0; k < dimension_; ++k) out(k) = A_derivative(t, x, k, {});
  return out;
}

Eigen::VectorXd FieldSpec::A_dt(double t, const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(dimension_);
  for (int k = 0; k < dimension_; ++k) out(k) = A_dt_derivative(t, x, k, {});
  return out;
}

double FieldSpec::A_derivative(double t, const Eigen::VectorXd& x, int component,
                               const AxisList& axes) const {
  check_point(dimension_, x);
  require(component >= 0 && component < dimension_, ErrorKind::OutOfRange,
          "vector potential component out of range");
  double sum = 0.0;
  for (const auto& v : a_) {
    switch (v.kind) {
      case VectorTerm::Kind::RadialGradient: {
        AxisList full = axes;
        full.push_back(component);
        sum += v.gradient.coefficient * t * radial_power_derivative(x, v.gradient.nu, full);
        break;
      }
      case VectorTerm::Kind::Linear:
        if (axes.empty()) {
          sum += v.linear.matrix.row(component).dot(x);
        } else if (axes.size() == 1) {
          sum += v.linear.matrix(component, axes[0]);
        }
        break;
      case VectorTerm::Kind::Custom:
        sum += fd_derivative(
            [&](const Eigen::VectorXd& y) { return v.custom.value(t, y)(component); }, x, axes, 0,
            v.custom.step);
        break;
    }
  }
  return sum;
}

double FieldSpec::A_dt_derivative(double t, const Eigen::VectorXd& x, int component,
                                  const AxisList& axes) const {
  check_point(dimension_, x);
  double sum = 0.0;
  for (const auto& v : a_) {
    if (v.kind == VectorTerm::Kind::RadialGradient) {
      AxisList full = axes;
      full.push_back(component);
      sum += v.gradient.coefficient * radial_power_derivative(x, v.gradient.nu, full);
    } else if (v.kind == VectorTerm::Kind::Custom) {
      sum += fd_derivative(
          [&](const Eigen::VectorXd& y) {
            return fd_first([&](double dt) { return v.custom.value(t + dt, y)(component); },
                            v.custom.step);
          },
          x, axes, 0, v.custom.step);
    }
  }
  return sum;
}

Eigen::MatrixXd magnetic_field_derivative(const FieldSpec& fields, double t,
                                          const Eigen::VectorXd& x, const AxisList& axes) {
  const int d = fields.dimension();
  Eigen::MatrixXd grad(d, d);  // grad(j, k) = d_j A_k
  for (int j = 0; j < d; ++j) {
    AxisList full = axes;
    full.push_back(j);
    for (int k = 0; k < d; ++k) grad(j, k) = fields.A_derivative(t, x, k, full);
  }
  Eigen::MatrixXd b(d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) b(j, k) = grad(j, k) - grad(k, j);
  }
  return b;
}

Eigen::MatrixXd magnetic_field(const FieldSpec& fields, double t, const Eigen::VectorXd& x) {
  return magnetic_field_derivative(fields, t, x, {});
}

const ScanCheck* ScanReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ScanReport assumption_scan(const FieldSpec& fields, const ScanOptions& options) {
  require(!options.box_radii.empty() && options.samples_per_axis >= 2, ErrorKind::InvalidArgument,
          "scan needs at least one box and two samples per axis");
  require(options.max_order >= 1 && options.max_order <= 3, ErrorKind::InvalidArgument,
          "scan orders must lie in 1..3");
  const int d = fields.dimension();
  ScanReport report;
  report.box_radii = options.box_radii;
  ScanCheck ph{"ph-1", {}, true};
  ScanCheck bb{"B-1", {}, true};
  ScanCheck ab{"AB-1", {}, true};
  ScanCheck pt{"phi-t-growth", {}, true};

  std::vector<AxisList> phi_orders, b_orders, a_orders;
  for (int m = 2; m <= options.max_order; ++m) {
    for (auto& a : multi_indices(d, m)) phi_orders.push_back(a);
  }
  for (int m = 1; m <= options.max_order - 1; ++m) {
    for (auto& a : multi_indices(d, m)) b_orders.push_back(a);
  }
  for (int m = 1; m <= options.max_order; ++m) {
    for (auto& a : multi_indices(d, m)) a_orders.push_back(a);
  }

  for (const double radius : options.box_radii) {
    double s_ph = 0, s_b = 0, s_a = 0, s_pt = 0;
    const int m = options.samples_per_axis;
    long total = 1;
    for (int a = 0; a < d; ++a) total *= m;
    Eigen::VectorXd x(d);
    for (long flat = 0; flat < total; ++flat) {
      long rem = flat;
      for (int a = d - 1; a >= 0; --a) {
        x(a) = -radius + 2.0 * radius * static_cast<double>(rem % m) / (m - 1);
        rem /= m;
      }
      const double weight = std::pow(japanese_bracket(x), 1.0 + options.decay_epsilon);
      for (const double t : options.times) {
        for (const auto& al : phi_orders) {
          s_ph = std::max(s_ph, std::abs(fields.phi_derivative(t, x, al)));
        }
        for (const auto& al : b_orders) {
          s_b = std::max(s_b, weight * magnetic_field_derivative(fields, t, x, al)
                                           .cwiseAbs()
                                           .maxCoeff());
        }
        for (const auto& al : a_orders) {
          for (int k = 0; k < d; ++k) {
            s_a = std::max(s_a, std::abs(fields.A_derivative(t, x, k, al)) +
                                    std::abs(fields.A_dt_derivative(t, x, k, al)));
          }
        }
        s_pt = std::max(s_pt, std::abs(fields.phi_dt(t, x)) / (1.0 + x.squaredNorm()));
      }
    }
    ph.sup_per_box.push_back(s_ph);
    bb.sup_per_box.push_back(s_b);
    ab.sup_per_box.push_back(s_a);
    pt.sup_per_box.push_back(s_pt);
  }

  for (ScanCheck* c : {&ph, &bb, &ab, &pt}) {
    const double first = c->sup_per_box.front();
    const double last = c->sup_per_box.back();
    const bool finite = std::all_of(c->sup_per_box.begin(), c->sup_per_box.end(),
                                    [](double v) { return std::isfinite(v); });
    c->pass = finite && !(last > 1e-12 && last > options.growth_factor * first);
    report.pass = report.pass && c->pass;
    report.checks.push_back(*c);
  }
  return report;
}

double GaugeTransform::phase(double t, const Eigen::VectorXd& x) const {
  return t * coefficient * std::pow(1.0 + x.squaredNorm(), nu);
}

FieldSpec gauge_transform_fields(const FieldSpec& fields, double C) {
  if (C == 0.0) return fields;
  FieldSpec out(fields.dimension());
  std::vector<ScalarTerm> phi = fields.scalar_terms();
  std::vector<VectorTerm> a = fields.vector_terms();

  // phi + C<x>^2: cancel an earlier -C<x>^2 term exactly if present.
  auto sit = std::find_if(phi.rbegin(), phi.rend(), [&](const ScalarTerm& s) {
    return s.kind == ScalarTerm::Kind::RadialPower && s.radial.nu == 1.0 &&
           s.radial.modulation == 0.0 && s.radial.offset == 0.0 && s.radial.strength == -C;
  });
  if (sit != phi.rend()) {
    phi.erase(std::next(sit).base());
  } else {
    phi.push_back(ScalarTerm::radial_power(C, 1.0));
  }
  // A - 2tCx = A + grad(-C t <x>^2).
  auto vit = std::find_if(a.rbegin(), a.rend(), [&](const VectorTerm& v) {
    return v.kind == VectorTerm::Kind::RadialGradient && v.gradient.nu == 1.0 &&
           v.gradient.coefficient == C;
  });
  if (vit != a.rend()) {
    a.erase(std::next(vit).base());
  } else {
    a.push_back(VectorTerm::radial_gradient(-C, 1.0));
  }
  for (auto& s : phi) out.add(std::move(s));
  for (auto& v : a) out.add(std::move(v));
  return out;
}

SigmaExample sigma_example(int dimension, double sigma, double C) {
  require(sigma >= 0.0, ErrorKind::InvalidArgument, "sigma must be nonnegative");
  SigmaExample ex{FieldSpec(dimension), FieldSpec(dimension), GaugeTransform{1.0, sigma / 2.0},
                  sigma, C};
  if (C != 0.0) {
    ex.hamiltonian.add(ScalarTerm::radial_power(C, sigma / 2.0));
    ex.comparison.add(ScalarTerm::radial_power(C, sigma / 2.0));
  }
  // -e A = sigma t x <x>^{sigma-2} = t grad <x>^sigma with e = 1.
  if (sigma != 0.0) ex.hamiltonian.add(VectorTerm::radial_gradient(-1.0, sigma / 2.0));
  return ex;
}

PotentialTerm PotentialTerm::power_law(std::vector<int> cluster, int relative_dim, double gamma,
                                       double epsilon) {
  require(gamma >= 0.0 && epsilon >= 0.0, ErrorKind::InvalidArgument,
          "gamma and epsilon must be nonnegative");
  PotentialTerm t;
  t.profile = Profile::PowerLaw;
  t.cluster = std::move(cluster);
  t.gamma = gamma;
  t.epsilon = epsilon;
  t.centers.push_back({Eigen::VectorXd::Zero(relative_dim), Eigen::VectorXd::Zero(relative_dim), 1.0});
  return t;
}

PotentialTerm PotentialTerm::gaussian(std::vector<int> cluster, int relative_dim, double strength,
                                      double width) {
  require(width > 0.0, ErrorKind::InvalidArgument, "gaussian width must be positive");
  PotentialTerm t;
  t.profile = Profile::Gaussian;
  t.cluster = std::move(cluster);
  t.width = width;
  t.centers.push_back(
      {Eigen::VectorXd::Zero(relative_dim), Eigen::VectorXd::Zero(relative_dim), strength});
  return t;
}

double PotentialTerm::sup_bound() const {
  double z = 0.0;
  for (const auto& c : centers) z += std::abs(c.strength);
  if (profile == Profile::Gaussian || gamma == 0.0) return z;
  if (epsilon == 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(epsilon, -gamma) * z;
}

double eval_V(const PotentialTerm& term, double t, const Eigen::VectorXd& x) {
  double sum = 0.0;
  for (const auto& c : term.centers) {
    require(c.position.size() == x.size() && c.velocity.size() == x.size(),
            ErrorKind::DimensionMismatch, "potential center dimension differs from x_{D,r}");
    const double r2 = (x - c.position - t * c.velocity).squaredNorm();
    if (term.profile == PotentialTerm::Profile::Gaussian) {
      sum += c.strength * std::exp(-r2 / (2.0 * term.width * term.width));
      continue;
    }
    if (term.gamma == 0.0) {
      sum += c.strength;
      continue;
    }
    const double s = r2 + term.epsilon * term.epsilon;
    if (s == 0.0) {
      fail(ErrorKind::SingularEvaluation,
           "unregularized power-law potential evaluated at its singular point");
    }
    sum += c.strength * std::pow(s, -term.gamma / 2.0);
  }
  return sum;
}

}  // namespace strichartz
