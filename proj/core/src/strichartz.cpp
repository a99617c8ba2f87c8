#include "strichartz/strichartz.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "strichartz/duhamel.hpp"
#include "strichartz/error.hpp"
#include "strichartz/exponents.hpp"
#include "strichartz/parallel.hpp"

namespace strichartz {

std::string to_string(StrichartzKind kind) {
  switch (kind) {
    case StrichartzKind::Homogeneous: return "homogeneous";
    case StrichartzKind::Inhomogeneous: return "inhomogeneous";
    case StrichartzKind::RetardedL1: return "retarded-L1";
  }
  return "?";
}

StrichartzKind parse_strichartz_kind(const std::string& name) {
  if (name == "homogeneous") return StrichartzKind::Homogeneous;
  if (name == "inhomogeneous") return StrichartzKind::Inhomogeneous;
  if (name == "retarded-L1") return StrichartzKind::RetardedL1;
  fail(ErrorKind::InvalidArgument, "unknown Strichartz estimate kind '" + name + "'");
}

Trajectory evolve_along(const Propagator& propagator, const TimeGrid& time, const StateVector& f) {
  Trajectory traj;
  traj.times = time.nodes();
  traj.states.reserve(traj.times.size());
  traj.states.push_back(f);
  for (std::size_t k = 1; k < traj.times.size(); ++k) {
    traj.states.push_back(propagator.apply(traj.states.back(), traj.times[k], traj.times[k - 1]));
  }
  return traj;
}

namespace {

ExponentRational dual(const ExponentRational& p) {
  // 1/p' = 1 - 1/p
  return (ExponentRational(1) - p.reciprocal()).reciprocal();
}

}  // namespace

StrichartzReport strichartz_ratio(const Propagator& propagator, const ClusterSpec& cluster,
                                  const TimeGrid& time, const GridPtr& grid,
                                  const StrichartzOptions& options) {
  const int n = relative_dimension(cluster);
  require(is_admissible(n, options.lambda, options.sigma), ErrorKind::InadmissiblePair,
          "pair (" + options.lambda.to_string() + ", " + options.sigma.to_string() +
              ") is not admissible for n_D = " + std::to_string(n));
  require(options.samples >= 1, ErrorKind::InvalidArgument, "need at least one sample");

  StrichartzReport report;
  report.kind = options.kind;
  report.lambda = options.lambda;
  report.sigma = options.sigma;
  report.ratios.assign(static_cast<std::size_t>(options.samples), 0.0);

  const SpaceTimeNormSpec numerator{options.sigma, {cluster, options.lambda, ExponentRational(2)}};
  const SpaceTimeNormSpec forcing{dual(options.sigma),
                                  {cluster, dual(options.lambda), ExponentRational(2)}};
  const double s = time.start();

  parallel_for(options.samples, [&](std::int64_t i) {
    const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(i);
    const StateVector f = random_field_state(grid, options.field, seed);
    double ratio = 0.0;
    if (options.kind == StrichartzKind::Homogeneous) {
      const Trajectory traj = evolve_along(propagator, time, f);
      ratio = spacetime_norm(traj, time, numerator) / f.norm();
    } else {
      std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
      const double phase = std::uniform_real_distribution<double>(0.0, 2.0 * M_PI)(rng);
      Trajectory source;
      source.times = time.nodes();
      for (const double r : source.times) source.states.push_back(cplx(std::cos(r - s + phase)) * f);
      Trajectory out;
      out.times = time.nodes();
      out.states = duhamel_integral(source.states, time, propagator);
      const double num = spacetime_norm(out, time, numerator);
      double den = 0.0;
      if (options.kind == StrichartzKind::Inhomogeneous) {
        den = spacetime_norm(source, time, forcing);
      } else {
        std::vector<double> l2;
        for (const auto& st : source.states) l2.push_back(st.norm());
        den = time_norm(l2, time, ExponentRational(1));
      }
      ratio = num / den;
    }
    report.ratios[static_cast<std::size_t>(i)] = ratio;
  });
  report.sup = *std::max_element(report.ratios.begin(), report.ratios.end());
  return report;
}

std::vector<double> x_norm_ratios(const Propagator& propagator, const TimeGrid& time,
                                  const std::vector<StateVector>& samples,
                                  const std::vector<ClusterExponent>& clusters) {
  std::vector<double> out(samples.size(), 0.0);
  parallel_for(static_cast<std::int64_t>(samples.size()), [&](std::int64_t i) {
    const Trajectory traj = evolve_along(propagator, time, samples[i]);
    out[i] = x_norm(traj, time, clusters) / samples[i].norm();
  });
  return out;
}

}  // namespace strichartz
