#include "strichartz/duhamel.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "strichartz/error.hpp"

namespace strichartz {

std::vector<StateVector> duhamel_integral(const std::vector<StateVector>& g, const TimeGrid& grid,
                                          const Propagator& free) {
  const int k_max = grid.intervals();
  require(static_cast<int>(g.size()) == k_max + 1, ErrorKind::DimensionMismatch,
          "integrand needs one sample per time node");
  const double h = grid.step();
  std::vector<StateVector> out(g.size());
  out[0] = StateVector(g[0].grid_ptr());
  const auto& t = grid.nodes();
  if (grid.rule() == QuadratureRule::Trapezoid) {
    for (int k = 0; k < k_max; ++k) {
      StateVector x = out[static_cast<std::size_t>(k)] + cplx(h / 2) * g[static_cast<std::size_t>(k)];
      out[static_cast<std::size_t>(k + 1)] =
          free.apply(x, t[static_cast<std::size_t>(k + 1)], t[static_cast<std::size_t>(k)]) +
          cplx(h / 2) * g[static_cast<std::size_t>(k + 1)];
    }
    return out;
  }
  for (int k = 0; k < k_max; k += 2) {
    const auto i0 = static_cast<std::size_t>(k);
    const StateVector b = free.apply(out[i0], t[i0 + 1], t[i0]);
    const StateVector c = free.apply(g[i0], t[i0 + 1], t[i0]);
    // Odd node: quadratic through the three nodes, integrated over one step.
    const StateVector back = free.apply(g[i0 + 2], t[i0 + 1], t[i0 + 2]);
    out[i0 + 1] = b + cplx(5 * h / 12) * c + cplx(8 * h / 12) * g[i0 + 1] - cplx(h / 12) * back;
    // Even node: Simpson over the pair.
    const StateVector a = b + cplx(h / 3) * c + cplx(4 * h / 3) * g[i0 + 1];
    out[i0 + 2] = free.apply(a, t[i0 + 2], t[i0 + 1]) + cplx(h / 3) * g[i0 + 2];
  }
  return out;
}

std::vector<StateVector> apply_Gs(const std::vector<StateVector>& u, const TimeGrid& grid,
                                  const Propagator& free) {
  auto out = duhamel_integral(u, grid, free);
  for (auto& v : out) v *= cplx(0.0, -1.0);
  return out;
}

PicardSolver::PicardSolver(std::shared_ptr<const Propagator> free,
                           std::shared_ptr<const Hamiltonian> full, PicardOptions options)
    : free_(std::move(free)), full_(std::move(full)), options_(options) {
  require(free_ && full_, ErrorKind::InvalidArgument, "Picard solver needs U0 and H");
  require(options_.nodes_per_unit > 0 && options_.tolerance > 0 && options_.max_iterations >= 3,
          ErrorKind::InvalidArgument, "invalid Picard options");
  clusters_ = cluster_exponents(full_->spec().system, full_->spec().potentials);
  static_potential_ = true;
  for (const auto& v : full_->spec().potentials) {
    for (const auto& c : v.centers) static_potential_ = static_potential_ && c.velocity.squaredNorm() == 0;
  }
  if (static_potential_) static_v_ = full_->interaction(0.0);
}

PicardResult PicardSolver::solve_fixed(const StateVector& f, double s, double length,
                                       bool probe_only) const {
  int k = std::max(options_.min_intervals,
                   static_cast<int>(std::ceil(std::abs(length) * options_.nodes_per_unit - 1e-9)));
  if (options_.rule == QuadratureRule::Simpson && k % 2) ++k;
  const TimeGrid grid(s, s + length, k, options_.rule);
  const std::size_t n = grid.nodes().size();

  PicardResult result;
  PicardState state;
  state.start = s;
  state.end = s + length;
  state.intervals = k;

  std::vector<StateVector> u0(n);
  u0[0] = f;
  for (std::size_t i = 1; i < n; ++i) {
    u0[i] = free_->apply(u0[i - 1], grid.nodes()[i], grid.nodes()[i - 1]);
  }
  std::vector<Eigen::VectorXd> v(n);
  const bool interacting = !full_->spec().potentials.empty();
  if (interacting) {
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = static_potential_ ? static_v_ : full_->interaction(grid.nodes()[i]);
    }
  }

  std::vector<StateVector> current = u0;
  Trajectory diff{grid.nodes(), {}};
  for (int it = 1; it <= options_.max_iterations; ++it) {
    std::vector<StateVector> next = u0;
    if (interacting) {
      std::vector<StateVector> g(n);
      for (std::size_t i = 0; i < n; ++i) {
        g[i] = StateVector(f.grid_ptr(), v[i].cast<cplx>().cwiseProduct(current[i].values()));
      }
      const auto gs = apply_Gs(g, grid, *free_);
      for (std::size_t i = 0; i < n; ++i) next[i] += gs[i];
    }
    diff.states.clear();
    for (std::size_t i = 0; i < n; ++i) diff.states.push_back(next[i] - current[i]);
    // The first iterate is u0 itself; its distance from the zeroth is G V u0.
    const double r = x_norm(diff, grid, clusters_);
    state.residuals.push_back(r);
    if (state.residuals.size() >= 2) {
      const double prev = state.residuals[state.residuals.size() - 2];
      state.ratios.push_back(prev > 0 ? r / prev : 0.0);
    }
    current = std::move(next);
    if (state.residuals.size() == 3) state.rho = state.ratios.back();
    if (r < options_.tolerance) {
      state.converged = true;
      if (state.residuals.size() < 3 && !state.ratios.empty()) state.rho = state.ratios.back();
      break;
    }
    if (probe_only && state.residuals.size() >= 3) break;
  }
  result.trajectory.times = grid.nodes();
  result.trajectory.states = std::move(current);
  result.pieces.push_back(state);
  return result;
}

PicardResult PicardSolver::solve(const StateVector& f, double s, double length) const {
  PicardResult out;
  if (length == 0.0) {
    out.trajectory.times = {s};
    out.trajectory.states = {f};
    PicardState st;
    st.start = st.end = s;
    st.converged = true;
    out.pieces.push_back(st);
    return out;
  }
  const double sign = length > 0 ? 1.0 : -1.0;
  const double total = std::abs(length);
  double piece = total;
  double done = 0.0;
  StateVector state = f;
  int bisections = 0;
  while (done < total * (1 - 1e-14)) {
    double len = std::min(piece, total - done);
    // Avoid a sliver at the end.
    if (total - done - len < 1e-12 * total) len = total - done;
    PicardResult trial = solve_fixed(state, s + sign * done, sign * len, true);
    const PicardState& probe = trial.pieces.back();
    const bool contracting = probe.converged || probe.rho < options_.contraction_threshold;
    if (!contracting) {
      piece = len / 2;
      ++bisections;
      if (piece < options_.min_interval) {
        std::ostringstream os;
        os << "no contraction: residual ratio " << probe.rho << " on a subinterval of length "
           << len << " (minimum " << options_.min_interval << "); residuals";
        for (const double r : probe.residuals) os << ' ' << r;
        fail(ErrorKind::NoContraction, os.str());
      }
      continue;
    }
    PicardResult full = probe.converged ? std::move(trial) : solve_fixed(state, s + sign * done, sign * len);
    PicardState st = full.pieces.back();
    st.rho = probe.rho;
    st.bisections = bisections;
    if (!st.converged) {
      std::ostringstream os;
      os << "no contraction: Picard residual " << st.residuals.back() << " above tolerance "
         << options_.tolerance << " after " << st.residuals.size() << " iterations";
      fail(ErrorKind::NoContraction, os.str());
    }
    const std::size_t skip = out.trajectory.states.empty() ? 0 : 1;
    for (std::size_t i = skip; i < full.trajectory.states.size(); ++i) {
      out.trajectory.times.push_back(full.trajectory.times[i]);
      out.trajectory.states.push_back(full.trajectory.states[i]);
    }
    out.pieces.push_back(st);
    state = out.trajectory.states.back();
    done += len;
    piece = len;
  }
  return out;
}

StateVector PropagatorTable::apply(const StateVector& u, double t, double s) const {
  if (t == s) return u;
  return solver_->solve(u, s, t - s).final_state();
}

std::string picard_csv(const PicardResult& result) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "piece,start,end,iteration,residual,rho_estimate\n";
  for (std::size_t p = 0; p < result.pieces.size(); ++p) {
    const auto& st = result.pieces[p];
    for (std::size_t i = 0; i < st.residuals.size(); ++i) {
      os << p << ',' << st.start << ',' << st.end << ',' << i + 1 << ',' << st.residuals[i] << ',';
      if (i > 0) os << st.ratios[i - 1];
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace strichartz
