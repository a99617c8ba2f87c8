#include "strichartz/kernels.hpp"

#include <cmath>
#include <numbers>

#include "strichartz/error.hpp"

namespace strichartz {

double ExactKernel::caustic_time() const {
  if (kind == Kind::Mehler) return std::numbers::pi / std::abs(omega);
  return std::numeric_limits<double>::infinity();
}

void ExactKernel::check_time(double tau) const {
  if (tau == 0.0 || std::abs(tau) >= caustic_time()) {
    fail(ErrorKind::Caustic, "kernel evaluated at a caustic (|t - s| = " +
                                 std::to_string(std::abs(tau)) + ")");
  }
}

double ExactKernel::phase(double tau, int axis, double x, double y) const {
  switch (kind) {
    case Kind::Free:
      return mass * (x - y) * (x - y) / (2.0 * tau);
    case Kind::Mehler: {
      const double wt = omega * tau;
      return mass * omega * ((x * x + y * y) * std::cos(wt) - 2.0 * x * y) / (2.0 * std::sin(wt));
    }
    case Kind::ConstantElectric: {
      const double e = axis < field.size() ? field(axis) : 0.0;
      return mass * (x - y) * (x - y) / (2.0 * tau) - e * tau * (x + y) / 2.0 -
             e * e * tau * tau * tau / (24.0 * mass);
    }
  }
  return 0.0;
}

std::complex<double> ExactKernel::free_prefactor(double tau) const {
  return std::sqrt(std::complex<double>(mass, 0.0) /
                   (2.0 * std::numbers::pi * std::complex<double>(0.0, tau)));
}

double ExactKernel::amplitude(double tau) const {
  if (kind != Kind::Mehler) return 1.0;
  const double wt = omega * tau;
  return std::sqrt(wt / std::sin(wt));
}

StateVector exact_kernel_apply(const ExactKernel& kernel, double t, double s, const StateVector& u) {
  const double tau = t - s;
  kernel.check_time(tau);
  const TensorGrid& g = u.grid();
  require(g.particle_count() == 1, ErrorKind::UnsupportedDimension,
          "exact kernels act on single-particle grids");
  const std::complex<double> pref = kernel.free_prefactor(tau) * kernel.amplitude(tau);
  Eigen::VectorXcd data = u.values();
  for (int a = 0; a < g.axis_count(); ++a) {
    const auto& ax = g.axis(a);
    const int m = ax.points;
    Eigen::MatrixXcd k(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const double ph = kernel.phase(tau, a, ax.coordinate(i), ax.coordinate(j));
        k(i, j) = pref * ax.spacing() * std::complex<double>(std::cos(ph), std::sin(ph));
      }
    }
    const std::int64_t stride = g.stride(a);
    const std::int64_t outer = g.size() / (stride * m);
    Eigen::VectorXcd line(m);
    for (std::int64_t o = 0; o < outer; ++o) {
      for (std::int64_t i = 0; i < stride; ++i) {
        const std::int64_t base = o * m * stride + i;
        for (int p = 0; p < m; ++p) line(p) = data(base + p * stride);
        line = (k * line).eval();
        for (int p = 0; p < m; ++p) data(base + p * stride) = line(p);
      }
    }
  }
  return StateVector(u.grid_ptr(), std::move(data));
}

PhaseHessianBound phase_deviation_hessian(const ExactKernel& kernel, double tau,
                                          const GridAxis& axis) {
  kernel.check_time(tau);
  const ExactKernel free = ExactKernel::free(kernel.mass);
  const auto dev = [&](double x, double y) {
    return kernel.phase(tau, 0, x, y) - free.phase(tau, 0, x, y);
  };
  const double h = axis.spacing();
  PhaseHessianBound out;
  for (int i = 1; i + 1 < axis.points; ++i) {
    for (int j = 1; j + 1 < axis.points; ++j) {
      const double x = axis.coordinate(i), y = axis.coordinate(j);
      const double c = dev(x, y);
      out.xx = std::max(out.xx, std::abs(dev(x + h, y) - 2 * c + dev(x - h, y)) / (h * h));
      out.yy = std::max(out.yy, std::abs(dev(x, y + h) - 2 * c + dev(x, y - h)) / (h * h));
      out.xy = std::max(out.xy, std::abs(dev(x + h, y + h) - dev(x + h, y - h) -
                                         dev(x - h, y + h) + dev(x - h, y - h)) /
                                    (4 * h * h));
    }
  }
  return out;
}

}  // namespace strichartz
