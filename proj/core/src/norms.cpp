#include "strichartz/norms.hpp"

#include <algorithm>
#include <cmath>

#include "strichartz/error.hpp"

namespace strichartz {

namespace {

double power_sum_root(double sum, double weight, const ExponentRational& p) {
  return std::pow(weight * sum, 1.0 / p.to_double());
}

Eigen::VectorXd potential_on_grid(const TensorGrid& grid, const ParticleSystem& system,
                                  const PotentialTerm& term, double t) {
  JacobiFrame frame(system, system.cluster(term.cluster));
  Eigen::VectorXd v(grid.size());
  for (std::int64_t flat = 0; flat < grid.size(); ++flat) {
    v(flat) = eval_V(term, t, frame.relative_of(grid.point(flat)));
  }
  return v;
}

}  // namespace

RelativeProfile relative_profile(const StateVector& u, const ClusterSpec& cluster,
                                 const ExponentRational& q) {
  const TensorGrid& g = u.grid();
  cluster.validate_against(g.particle_count());
  require(cluster.dimension() == g.dimension(), ErrorKind::FrameMismatch,
          "cluster dimension differs from the grid's");
  require(q >= ExponentRational(1), ErrorKind::OutOfRange, "norm exponents must be >= 1");
  const int d = g.dimension();
  std::vector<int> members;
  for (const int j : cluster.members()) members.push_back(j - 1);
  const std::size_t k = members.size();

  for (int c = 0; c < d; ++c) {
    const auto& ref = g.axis(members[0] * d + c);
    for (const int j : members) {
      const auto& ax = g.axis(j * d + c);
      require(ax.extent == ref.extent && ax.points == ref.points, ErrorKind::FrameMismatch,
              "cluster members need identical grid axes per component to bin x_{D,r}");
    }
  }

  std::vector<int> rel_axes;
  std::vector<std::int64_t> bases;
  if (k == 1) {
    for (int c = 0; c < d; ++c) {
      rel_axes.push_back(members[0] * d + c);
      bases.push_back(g.axis(members[0] * d + c).points);
    }
  } else {
    for (std::size_t i = 1; i < k; ++i) {
      for (int c = 0; c < d; ++c) {
        rel_axes.push_back(members[i] * d + c);
        bases.push_back(2 * g.axis(members[i] * d + c).points - 1);
      }
    }
  }
  std::int64_t bins = 1;
  for (const auto b : bases) {
    bins *= b;
    require(bins <= 50'000'000, ErrorKind::MemoryGuard, "too many x_{D,r} bins");
  }

  const bool q_inf = q.is_infinite();
  const double qd = q_inf ? 0.0 : q.to_double();
  const bool q_two = qd == 2.0;
  std::vector<double> acc(static_cast<std::size_t>(bins), 0.0);
  std::vector<char> used(static_cast<std::size_t>(bins), 0);
  std::vector<int> idx;
  for (std::int64_t flat = 0; flat < g.size(); ++flat) {
    g.unravel(flat, idx);
    std::int64_t key = 0;
    std::size_t r = 0;
    if (k == 1) {
      for (int c = 0; c < d; ++c, ++r) key = key * bases[r] + idx[static_cast<std::size_t>(members[0] * d + c)];
    } else {
      for (std::size_t i = 1; i < k; ++i) {
        for (int c = 0; c < d; ++c, ++r) {
          const int m = g.axis(members[i] * d + c).points;
          const int delta = idx[static_cast<std::size_t>(members[i] * d + c)] -
                            idx[static_cast<std::size_t>(members[0] * d + c)];
          key = key * bases[r] + (delta + m - 1);
        }
      }
    }
    auto& slot = acc[static_cast<std::size_t>(key)];
    if (q_inf) {
      slot = std::max(slot, std::abs(u.values()(flat)));
    } else if (q_two) {
      slot += std::norm(u.values()(flat));
    } else {
      slot += std::pow(std::abs(u.values()(flat)), qd);
    }
    used[static_cast<std::size_t>(key)] = 1;
  }

  RelativeProfile out;
  out.bin_volume = g.cell_volume(rel_axes);
  const double inner_weight = g.cell_volume() / out.bin_volume;
  for (std::int64_t b = 0; b < bins; ++b) {
    if (!used[static_cast<std::size_t>(b)]) continue;
    const double v = acc[static_cast<std::size_t>(b)];
    out.inner.push_back(q_inf ? v : power_sum_root(v, inner_weight, q));
  }
  return out;
}

double mixed_norm(const StateVector& u, const MixedNormSpec& spec) {
  require(spec.p >= ExponentRational(1), ErrorKind::OutOfRange, "norm exponents must be >= 1");
  const RelativeProfile prof = relative_profile(u, spec.cluster, spec.q);
  if (spec.p.is_infinite()) {
    return prof.inner.empty() ? 0.0 : *std::max_element(prof.inner.begin(), prof.inner.end());
  }
  const double p = spec.p.to_double();
  double sum = 0.0;
  for (const double v : prof.inner) sum += std::pow(v, p);
  return power_sum_root(sum, prof.bin_volume, spec.p);
}

double lp_norm(const StateVector& u, const ExponentRational& p) {
  require(p >= ExponentRational(1), ErrorKind::OutOfRange, "norm exponents must be >= 1");
  if (p.is_infinite()) return u.values().cwiseAbs().maxCoeff();
  const double pd = p.to_double();
  double sum = 0.0;
  for (std::int64_t i = 0; i < u.size(); ++i) sum += std::pow(std::abs(u.values()(i)), pd);
  return power_sum_root(sum, u.grid().cell_volume(), p);
}

double time_norm(const std::vector<double>& values, const TimeGrid& grid,
                 const ExponentRational& theta) {
  require(values.size() == grid.nodes().size(), ErrorKind::DimensionMismatch,
          "one value per time node expected");
  require(theta >= ExponentRational(1), ErrorKind::OutOfRange, "time exponent must be >= 1");
  if (theta.is_infinite()) return *std::max_element(values.begin(), values.end());
  const auto w = grid.abs_weights();
  const double th = theta.to_double();
  double sum = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) sum += w[k] * std::pow(values[k], th);
  return std::pow(sum, 1.0 / th);
}

double spacetime_norm(const Trajectory& u, const TimeGrid& grid, const SpaceTimeNormSpec& spec) {
  std::vector<double> values;
  for (const auto& s : u.states) values.push_back(mixed_norm(s, spec.space));
  return time_norm(values, grid, spec.theta);
}

std::vector<ClusterExponent> cluster_exponents(const ParticleSystem& system,
                                               const std::vector<PotentialTerm>& potentials) {
  std::vector<ClusterExponent> out;
  for (const auto& v : potentials) {
    ClusterSpec c = system.cluster(v.cluster);
    const bool seen = std::any_of(out.begin(), out.end(),
                                  [&](const ClusterExponent& e) { return e.cluster == c; });
    if (!seen) out.push_back({c, v.p});
  }
  return out;
}

double x_norm(const Trajectory& u, const TimeGrid& grid, const std::vector<ClusterExponent>& terms) {
  double sup = 0.0;
  for (const auto& s : u.states) sup = std::max(sup, s.norm());
  double total = sup;
  for (const auto& term : terms) {
    const StrichartzPair pair = strichartz_pair(relative_dimension(term.cluster), term.p);
    total += spacetime_norm(u, grid, {pair.theta, {term.cluster, pair.l, ExponentRational(2)}});
  }
  return total;
}

double xstar_upper_bound(const DecompositionWitness& witness, const TimeGrid& grid,
                         const std::vector<StateVector>* target) {
  const std::size_t nodes = grid.nodes().size();
  for (const auto& comp : witness.components) {
    require(comp.samples.size() == nodes, ErrorKind::DimensionMismatch,
            "witness component needs one sample per time node");
  }
  if (target) {
    require(target->size() == nodes, ErrorKind::DimensionMismatch,
            "target needs one sample per time node");
    for (std::size_t k = 0; k < nodes; ++k) {
      Eigen::VectorXcd sum = Eigen::VectorXcd::Zero((*target)[k].size());
      for (const auto& comp : witness.components) sum += comp.samples[k].values();
      const double err = (sum - (*target)[k].values()).cwiseAbs().maxCoeff();
      const double scale = std::max(1.0, (*target)[k].values().cwiseAbs().maxCoeff());
      require(err <= 1e-10 * scale, ErrorKind::DecompositionMismatch,
              "witness components do not sum to the decomposed function");
    }
  }
  const auto w = grid.abs_weights();
  double total = 0.0;
  for (const auto& comp : witness.components) {
    if (!comp.cluster) {
      for (std::size_t k = 0; k < nodes; ++k) total += w[k] * comp.samples[k].norm();
      continue;
    }
    const auto& ce = *comp.cluster;
    const StrichartzPair pair = strichartz_pair(relative_dimension(ce.cluster), ce.p);
    const ExponentRational l_dual = dual_exponent(pair.l);
    const ExponentRational theta_dual = dual_exponent(pair.theta);
    std::vector<double> values;
    for (const auto& s : comp.samples) {
      values.push_back(mixed_norm(s, {ce.cluster, l_dual, ExponentRational(2)}));
    }
    total += time_norm(values, grid, theta_dual);
  }
  return total;
}

DecompositionWitness natural_witness(const Trajectory& u, const ParticleSystem& system,
                                     const std::vector<PotentialTerm>& potentials,
                                     double split_radius) {
  DecompositionWitness w;
  require(!u.states.empty(), ErrorKind::InvalidArgument, "empty trajectory");
  const GridPtr grid = u.states.front().grid_ptr();
  WitnessComponent bounded;
  for (std::size_t k = 0; k < u.states.size(); ++k) bounded.samples.push_back(StateVector(grid));
  for (const auto& term : potentials) {
    WitnessComponent comp;
    comp.cluster = ClusterExponent{system.cluster(term.cluster), term.p};
    JacobiFrame frame(system, system.cluster(term.cluster));
    for (std::size_t k = 0; k < u.states.size(); ++k) {
      const double t = u.times[k];
      StateVector near(grid);
      for (std::int64_t flat = 0; flat < grid->size(); ++flat) {
        const Eigen::VectorXd xr = frame.relative_of(grid->point(flat));
        const cplx vu = eval_V(term, t, xr) * u.states[k].values()(flat);
        if (xr.norm() < split_radius) {
          near.values()(flat) = vu;
        } else {
          bounded.samples[k].values()(flat) += vu;
        }
      }
      comp.samples.push_back(std::move(near));
    }
    w.components.push_back(std::move(comp));
  }
  w.components.push_back(std::move(bounded));
  return w;
}

HolderCheck holder_check(const Trajectory& u, const TimeGrid& grid, const ParticleSystem& system,
                         const PotentialTerm& term) {
  const ClusterSpec cluster = system.cluster(term.cluster);
  const int n = relative_dimension(cluster);
  const StrichartzPair pair = strichartz_pair(n, term.p);
  const ExponentRational a = a_of_p(n, term.p);
  const ExponentRational two(2);
  std::vector<double> lhs, v_norm, u_norm;
  for (std::size_t k = 0; k < u.states.size(); ++k) {
    const StateVector& s = u.states[k];
    const Eigen::VectorXd v = potential_on_grid(s.grid(), system, term, u.times[k]);
    StateVector vu(s.grid_ptr(), v.cast<cplx>().cwiseProduct(s.values()));
    lhs.push_back(mixed_norm(vu, {cluster, dual_exponent(pair.l), two}));
    StateVector vf(s.grid_ptr(), v.cast<cplx>());
    v_norm.push_back(mixed_norm(vf, {cluster, term.p, ExponentRational::infinity()}));
    u_norm.push_back(mixed_norm(s, {cluster, pair.l, two}));
  }
  HolderCheck out;
  out.lhs = time_norm(lhs, grid, dual_exponent(pair.theta));
  out.rhs = time_norm(v_norm, grid, a) * time_norm(u_norm, grid, pair.theta);
  return out;
}

}  // namespace strichartz
