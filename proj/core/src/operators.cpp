#include "strichartz/operators.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "strichartz/error.hpp"
#include "strichartz/linalg.hpp"

namespace strichartz {

namespace {

// All multi-indices of length n and total order <= k.
void multi_indices(int n, int k, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == n) {
    out.push_back(current);
    return;
  }
  for (int v = 0; v <= k; ++v) {
    current.push_back(v);
    multi_indices(n, k - v, current, out);
    current.pop_back();
  }
}

LinearMap as_map(const Hamiltonian& h, const OperatorSnapshot& op) {
  return [&h, op](const Eigen::VectorXcd& v) {
    StateVector in(h.grid_ptr(), v);
    return h.apply(op, in).values();
  };
}

double lowest(const Hamiltonian& h, const OperatorSnapshot& op) {
  StateVector start = gaussian_state(h.grid_ptr());
  return lanczos_lowest(as_map(h, op), start.values(), 400, 1e-12);
}

GridPtr halved(const TensorGrid& grid) {
  std::vector<double> extents;
  std::vector<int> points;
  for (const auto& ax : grid.axes()) {
    extents.push_back(ax.extent);
    points.push_back(std::max(8, ax.points / 2));
  }
  return std::make_shared<const TensorGrid>(grid.particle_count(), grid.dimension(), extents,
                                            points);
}

Eigen::MatrixXd derivative_matrix(const GridPtr& grid, int order) {
  const auto m = grid->size();
  Eigen::MatrixXd d(m, m);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(m);
  for (std::int64_t j = 0; j < m; ++j) {
    e.setZero();
    e[j] = 1.0;
    d.col(j) = spectral_derivative(*grid, 0, order, e).real();
  }
  return d;
}

}  // namespace

double sigma_k_norm(const StateVector& u, int k) {
  require(k >= 0 && k <= 2, ErrorKind::InvalidArgument, "sigma_k_norm: k must be 0, 1 or 2");
  const TensorGrid& grid = u.grid();
  const int n = grid.axis_count();
  std::vector<std::vector<int>> indices;
  std::vector<int> current;
  multi_indices(2 * n, k, current, indices);

  // x_a on the grid, per axis.
  std::vector<Eigen::VectorXd> coords(static_cast<std::size_t>(n), Eigen::VectorXd(grid.size()));
  std::vector<int> idx;
  for (std::int64_t flat = 0; flat < grid.size(); ++flat) {
    grid.unravel(flat, idx);
    for (int a = 0; a < n; ++a) coords[a][flat] = grid.axis(a).coordinate(idx[a]);
  }

  double total = 0.0;
  for (const auto& mi : indices) {
    Eigen::VectorXcd v = u.values();
    for (int a = 0; a < n; ++a) {
      if (mi[n + a] > 0) v = spectral_derivative(grid, a, mi[n + a], v);
    }
    for (int a = 0; a < n; ++a) {
      for (int r = 0; r < mi[a]; ++r) v.array() *= coords[a].array();
    }
    total += v.squaredNorm() * grid.cell_volume();
  }
  return std::sqrt(total);
}

HamiltonianSpec oscillator_spec(const TensorGrid& grid) {
  HamiltonianSpec spec;
  spec.system = ParticleSystem::uniform(grid.particle_count(), grid.dimension());
  spec.fields = FieldSpec(grid.dimension());
  // (1/2)<x>^2 - 1/2 = |x|^2 / 2
  spec.fields.add(ScalarTerm::radial_power(0.5, 1.0, 0.0, 0.0, -0.5));
  return spec;
}

double hos_ground_energy(const GridPtr& grid) {
  const Hamiltonian h(oscillator_spec(*grid), grid);
  return lowest(h, h.at(0.0, false));
}

LowerBoundReport h0_lower_bound_check(const HamiltonianSpec& spec, const GridPtr& grid, double t) {
  const ParticleSystem& sys = spec.system;
  for (int j = 0; j < sys.particle_count(); ++j) {
    require(sys.mass(j) == 1.0 && sys.charge(j) == 1.0, ErrorKind::InvalidArgument,
            "h0_lower_bound_check assumes unit masses and charges");
  }
  LowerBoundReport report;
  report.bound = 0.5 * (sys.configuration_dimension() + 1);

  // Hypothesis phi(t, x) >= <x>^2 / 2 on every particle's coordinate samples.
  double margin = std::numeric_limits<double>::infinity();
  const int d = sys.dimension();
  for (int j = 0; j < sys.particle_count(); ++j) {
    const auto axes = grid->particle_axes(j);
    std::int64_t count = 1;
    for (const int a : axes) count *= grid->axis(a).points;
    Eigen::VectorXd x(d);
    for (std::int64_t flat = 0; flat < count; ++flat) {
      std::int64_t rest = flat;
      for (int c = d - 1; c >= 0; --c) {
        const auto& ax = grid->axis(axes[c]);
        x[c] = ax.coordinate(static_cast<int>(rest % ax.points));
        rest /= ax.points;
      }
      margin = std::min(margin, spec.fields.phi(t, x) - 0.5 * (1.0 + x.squaredNorm()));
    }
  }
  report.hypothesis_margin = margin;
  report.hypothesis_met = margin >= -1e-12;
  if (!report.hypothesis_met) return report;

  HamiltonianSpec free = spec;
  free.potentials.clear();
  free.anti_hermitian_defect = 0.0;
  const Hamiltonian fine(free, grid);
  report.lambda_min = lowest(fine, fine.at(t, false));
  const Hamiltonian coarse(free, halved(*grid));
  report.lambda_coarse = lowest(coarse, coarse.at(t, false));
  report.tol_disc = std::abs(report.lambda_min - report.lambda_coarse);
  report.pass = report.lambda_min >= report.bound - report.tol_disc;
  return report;
}

double HosInverseReport::norm_of(int alpha, int beta, int gamma, int delta) const {
  for (const auto& w : norms) {
    if (w.alpha == alpha && w.beta == beta && w.gamma == gamma && w.delta == delta) return w.norm;
  }
  fail(ErrorKind::InvalidArgument, "weighted norm not computed for this multi-index");
}

HosInverseReport hos_inverse_properties(const GridPtr& grid, double interior_fraction) {
  require(grid->axis_count() == 1, ErrorKind::InvalidArgument,
          "hos_inverse_properties needs a 1-d grid");
  const Hamiltonian h(oscillator_spec(*grid), grid);
  const OperatorMatrix dense = h.dense(h.at(0.0, false));
  const RealEigen eig = eigh(Eigen::MatrixXd(dense.matrix.real()));
  const Eigen::MatrixXd inv =
      eig.vectors * eig.values.cwiseInverse().asDiagonal() * eig.vectors.transpose();

  const auto m = grid->size();
  const auto& ax = grid->axis(0);
  Eigen::VectorXd x(m);
  for (std::int64_t i = 0; i < m; ++i) x[i] = ax.coordinate(static_cast<int>(i));
  const Eigen::MatrixXd d1 = derivative_matrix(grid, 1);
  const Eigen::MatrixXd d2 = derivative_matrix(grid, 2);
  auto power = [&](int a, int b) -> Eigen::MatrixXd {
    // x^a d^b
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(m, m);
    if (b == 1) out = d1;
    if (b == 2) out = d2;
    for (int r = 0; r < a; ++r) out = x.asDiagonal() * out;
    return out;
  };

  HosInverseReport report;
  std::vector<std::vector<int>> indices;
  std::vector<int> current;
  multi_indices(4, 2, current, indices);
  for (const auto& mi : indices) {
    const Eigen::MatrixXd op = power(mi[0], mi[1]) * inv * power(mi[2], mi[3]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(op);
    report.norms.push_back({mi[0], mi[1], mi[2], mi[3], svd.singularValues()[0]});
  }
  report.inverse_norm = report.norm_of(0, 0, 0, 0);
  report.interior_radius = interior_fraction * ax.extent;
  {
    // On the periodic grid x is a sawtooth, so d(x f) picks up a jump at the
    // box edge whenever f does not vanish there. Inputs supported inside the
    // interior keep H^{-1} u exponentially small at the edge.
    std::vector<Eigen::Index> cols;
    for (std::int64_t j = 0; j < m; ++j) {
      if (std::abs(x[j]) <= report.interior_radius) cols.push_back(j);
    }
    const Eigen::MatrixXd full = d1 * x.asDiagonal() * inv;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(full(Eigen::all, cols)));
    report.dx_inverse_norm = svd.singularValues()[0];
  }

  // (H^{-1} u)(x_i) = sum_j G(x_i, y_j) u_j h.
  const double h_x = ax.spacing();
  double kmin = std::numeric_limits<double>::infinity();
  double s1 = 0, s2 = 0, sy = 0, sxy = 0, n = 0;
  std::vector<std::pair<double, double>> samples;
  for (std::int64_t i = 0; i < m; ++i) {
    if (std::abs(x[i]) > report.interior_radius) continue;
    for (std::int64_t j = 0; j < m; ++j) {
      if (std::abs(x[j]) > report.interior_radius) continue;
      const double g = inv(i, j) / h_x;
      kmin = std::min(kmin, g);
      const double s = std::abs(x[i] - x[j]) * (1.0 + std::abs(x[i]) + std::abs(x[j]));
      if (g > 0 && s > 1.0) {
        samples.emplace_back(s, std::log(g));
        s1 += s;
        s2 += s * s;
        sy += std::log(g);
        sxy += s * std::log(g);
        n += 1;
      }
    }
  }
  report.kernel_min = kmin;
  if (n >= 2) {
    const double slope = (n * sxy - s1 * sy) / (n * s2 - s1 * s1);
    const double icpt = (sy - slope * s1) / n;
    report.decay_rate = -slope;
    double res = 0;
    for (const auto& [s, y] : samples) res = std::max(res, std::abs(y - (icpt + slope * s)));
    report.decay_fit_residual = res;
  }
  return report;
}

}  // namespace strichartz
