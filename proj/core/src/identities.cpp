#include "strichartz/identities.hpp"

#include <cmath>

#include "strichartz/error.hpp"

namespace strichartz {

std::string to_string(IdentityKind kind) { return kind == IdentityKind::Id1 ? "id-1" : "id-2"; }

namespace {

// Dense H0(r)^{-1} applied to a state.
class InverseAt {
 public:
  InverseAt(const Hamiltonian& h0, double r) : grid_(h0.grid_ptr()) {
    const OperatorMatrix m = h0.dense(h0.at(r, false));
    llt_.compute(m.matrix);
    require(llt_.info() == Eigen::Success, ErrorKind::LinearSolve,
            "H0(" + std::to_string(r) + ") is not positive definite on the grid");
  }
  StateVector operator()(const StateVector& u) const {
    Eigen::VectorXcd x = llt_.solve(u.values());
    require(x.allFinite(), ErrorKind::LinearSolve, "H0^{-1} solve produced non-finite values");
    return StateVector(grid_, std::move(x));
  }

 private:
  GridPtr grid_;
  Eigen::LLT<Eigen::MatrixXcd> llt_;
};

}  // namespace

IdentityReport identity_check(IdentityKind kind, const Hamiltonian& h0, const Propagator& free,
                              const StateVector& f, double t, double s,
                              const IdentityOptions& options) {
  require(h0.spec().potentials.empty(), ErrorKind::InvalidArgument,
          "identity checks use the interaction-free H0");
  IdentityReport report;
  report.kind = kind;
  report.t = t;
  report.s = s;
  report.intervals = options.intervals;

  StateVector lhs, rhs;
  if (t == s) {
    // Both sides reduce to H0(s) f (id-1) or H0(s)^{-1} f (id-2).
    if (kind == IdentityKind::Id1) {
      lhs = h0.apply(h0.at(t, false), f);
      rhs = h0.apply(h0.at(s, false), f);
    } else {
      lhs = InverseAt(h0, s)(f);
      rhs = InverseAt(h0, t)(f);
    }
  } else {
    const TimeGrid grid(s, t, options.intervals, options.rule);
    const auto w = grid.weights();
    const auto& r = grid.nodes();
    // Horner accumulation: S_j = U0(r_j, r_{j-1}) S_{j-1} + w_j g_j.
    StateVector traj = f;
    StateVector acc(f.grid_ptr());
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j > 0) {
        traj = free.apply(traj, r[j], r[j - 1]);
        acc = free.apply(acc, r[j], r[j - 1]);
      }
      StateVector g;
      if (kind == IdentityKind::Id1) {
        g = h0.apply(h0.free_time_derivative(r[j]), traj);
      } else {
        const InverseAt inv(h0, r[j]);
        g = inv(h0.apply(h0.free_time_derivative(r[j]), inv(traj)));
        g *= -1.0;
      }
      acc += cplx(w[j]) * g;
    }
    const StateVector evolved = traj;  // U0(t, s) f
    if (kind == IdentityKind::Id1) {
      lhs = h0.apply(h0.at(t, false), evolved);
      rhs = free.apply(h0.apply(h0.at(s, false), f), t, s) + acc;
    } else {
      lhs = free.apply(InverseAt(h0, s)(f), t, s);
      rhs = InverseAt(h0, t)(evolved) - acc;
    }
  }
  report.lhs_norm = lhs.norm();
  report.absolute_residual = distance(lhs, rhs);
  report.residual = report.lhs_norm > 0 ? report.absolute_residual / report.lhs_norm
                                        : report.absolute_residual;
  return report;
}

IdentityRefinement identity_refinement(IdentityKind kind, const Hamiltonian& h0,
                                       const Propagator& free, const StateVector& f, double t,
                                       double s, const std::vector<int>& intervals,
                                       QuadratureRule rule) {
  IdentityRefinement out;
  for (const int k : intervals) {
    out.levels.push_back(identity_check(kind, h0, free, f, t, s, {k, rule}));
  }
  for (std::size_t i = 1; i < out.levels.size(); ++i) {
    const double ratio = out.levels[i - 1].residual / out.levels[i].residual;
    const double factor = static_cast<double>(out.levels[i].intervals) / out.levels[i - 1].intervals;
    out.observed_orders.push_back(std::log(ratio) / std::log(factor));
  }
  return out;
}

}  // namespace strichartz
