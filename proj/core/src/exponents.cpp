#include "strichartz/exponents.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "strichartz/error.hpp"

namespace strichartz {
namespace {

const ExponentRational kOne(1);
const ExponentRational kTwo(2);
const ExponentRational kHalf(1, 2);

}  // namespace

ClusterSpec::ClusterSpec(std::vector<int> members, int dimension)
    : members_(std::move(members)), dimension_(dimension) {
  require(!members_.empty(), ErrorKind::InvalidCluster, "empty cluster");
  require(dimension_ >= 1, ErrorKind::InvalidCluster, "cluster dimension must be >= 1");
  std::sort(members_.begin(), members_.end());
  require(std::adjacent_find(members_.begin(), members_.end()) == members_.end(),
          ErrorKind::InvalidCluster, "repeated cluster member");
  require(members_.front() >= 1, ErrorKind::InvalidCluster, "cluster members are 1-based");
}

bool ClusterSpec::contains(int particle) const {
  return std::binary_search(members_.begin(), members_.end(), particle);
}

void ClusterSpec::validate_against(int particle_count) const {
  require(members_.back() <= particle_count, ErrorKind::InvalidCluster,
          "cluster " + label() + " references particle beyond N=" + std::to_string(particle_count));
}

std::string ClusterSpec::label() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) os << ',';
    os << members_[i];
  }
  os << '}';
  return os.str();
}

int relative_dimension(const ClusterSpec& cluster) {
  const int k = static_cast<int>(cluster.size());
  return k >= 2 ? (k - 1) * cluster.dimension() : cluster.dimension();
}

std::string to_string(PotentialClass kind) {
  switch (kind) {
    case PotentialClass::Weighted: return "I^{a,p}";
    case PotentialClass::TildeInfinity: return "I~^{inf,p}";
    case PotentialClass::Continuous: return "I^{cont,p}";
  }
  return "?";
}

ExponentRational a_of_p(int n, const ExponentRational& p) {
  require(n >= 1, ErrorKind::OutOfRange, "n must be >= 1");
  const ExponentRational half_n(n, 2);
  require(p >= half_n, ErrorKind::OutOfRange,
          "a(p) requires p >= n/2; got p=" + p.to_string() + " for n=" + std::to_string(n));
  const ExponentRational inv_a = kOne - ExponentRational(n) * kHalf * p.reciprocal();
  return inv_a.reciprocal();
}

StrichartzPair strichartz_pair(int n, const ExponentRational& p) {
  require(n >= 1, ErrorKind::OutOfRange, "n must be >= 1");
  require(p >= ExponentRational(n, 2) && p >= kOne, ErrorKind::OutOfRange,
          "Strichartz pair requires p >= max(1, n/2); got " + p.to_string());
  const ExponentRational inv_p = p.reciprocal();
  const ExponentRational inv_l = kHalf - kHalf * inv_p;
  const ExponentRational inv_theta = ExponentRational(n, 4) * inv_p;
  return {inv_l.reciprocal(), inv_theta.reciprocal()};
}

bool is_admissible(int n, const ExponentRational& lambda, const ExponentRational& sigma) {
  require(lambda >= kOne && sigma >= kOne, ErrorKind::OutOfRange,
          "admissibility requires exponents in [1, inf]");
  const ExponentRational lhs = kTwo * sigma.reciprocal();
  const ExponentRational rhs_factor = kHalf - lambda.reciprocal();
  if (rhs_factor < ExponentRational(0)) return false;
  const ExponentRational rhs = ExponentRational(n) * rhs_factor;
  return lhs == rhs && lhs <= kOne;
}

DerivativeExponents derivative_exponents(int n, const ExponentRational& p) {
  require(n >= 3, ErrorKind::UnsupportedDimension,
          "derivative exponents are defined for n >= 3, got n=" + std::to_string(n));
  require(p >= ExponentRational(n, 2), ErrorKind::OutOfRange,
          "derivative exponents require p >= n/2; got " + p.to_string());
  const ExponentRational inv_p = p.reciprocal();
  // 1/b = 1 - n/(4p)
  const ExponentRational b = (kOne - ExponentRational(n, 4) * inv_p).reciprocal();
  ExponentRational inv_q;
  if (n >= 4) {
    inv_q = kHalf * inv_p + ExponentRational(2, n);  // (n + 4p) / (2np)
  } else {
    inv_q = kHalf + kHalf * inv_p;  // (p + 1) / (2p)
  }
  return {b, inv_q.reciprocal(), max(kTwo, p)};
}

std::string to_string(Assumption assumption) { return assumption == Assumption::V1 ? "V1" : "V2"; }

Assumption parse_assumption(const std::string& text) {
  if (text == "V1" || text == "v1" || text == "V-1") return Assumption::V1;
  if (text == "V2" || text == "v2" || text == "V-2") return Assumption::V2;
  fail(ErrorKind::InvalidArgument, "unknown assumption '" + text + "' (expected V1 or V2)");
}

bool power_locally_integrable(int n, const ExponentRational& gamma, const ExponentRational& p) {
  require(gamma >= ExponentRational(0), ErrorKind::OutOfRange, "gamma must be >= 0");
  if (gamma.is_zero()) return true;
  if (p.is_infinite()) return false;
  return gamma * p < ExponentRational(n);
}

FeasibilityReport classify_power_potential(int n, const ExponentRational& gamma,
                                           Assumption assumption, const ClassifyOptions& options) {
  require(n >= 1, ErrorKind::OutOfRange, "n must be >= 1");
  require(!gamma.is_infinite() && gamma >= ExponentRational(0), ErrorKind::OutOfRange,
          "gamma must be a finite value >= 0");
  require(options.denominator >= 1 && options.max_p_factor >= 1, ErrorKind::InvalidArgument,
          "classification grid options must be positive");
  if (assumption == Assumption::V2) {
    require(n >= 3, ErrorKind::UnsupportedDimension, "V2 classification needs n >= 3");
  }

  FeasibilityReport report;
  report.n = n;
  report.gamma = gamma;
  report.assumption = assumption;

  const ExponentRational half_n(n, 2);
  const ExponentRational lower = max(half_n, kOne);
  const ExponentRational upper(options.max_p_factor * n);
  const ExponentRational step(1, options.denominator);

  std::vector<ExponentRational> grid;
  for (ExponentRational p = lower; p <= upper; p = p + step) grid.push_back(p);
  grid.push_back(ExponentRational::infinity());
  report.scanned_count = grid.size();

  auto record = [&](const ExponentRational& p) {
    ++report.feasible_count;
    if (!report.p_low || p < *report.p_low) report.p_low = p;
    if (!report.p_high || *report.p_high < p) report.p_high = p;
  };

  if (assumption == Assumption::V1) {
    if (half_n >= kOne && power_locally_integrable(n, gamma, half_n)) {
      report.tilde_branch_feasible = true;
      record(half_n);
    }
    for (const auto& p : grid) {
      if (p <= half_n) continue;
      if (power_locally_integrable(n, gamma, p)) {
        if (!report.weighted_branch_witness) report.weighted_branch_witness = p;
        record(p);
      }
    }
    report.feasible = report.feasible_count > 0;
    if (report.feasible) report.witness = report.p_low;
    return report;
  }

  const ExponentRational derivative_gamma = gamma + kOne;
  for (const auto& p : grid) {
    const DerivativeExponents e = derivative_exponents(n, p);
    const bool potential_ok = power_locally_integrable(n, gamma, e.p_tilde);
    const bool derivative_ok =
        gamma.is_zero() || power_locally_integrable(n, derivative_gamma, e.q);
    if (potential_ok && derivative_ok) {
      if (!report.witness) {
        report.witness = p;
        report.witness_exponents = e;
      }
      record(p);
    }
  }
  report.feasible = report.feasible_count > 0;
  return report;
}

ThresholdScan scan_gamma_threshold(int n, Assumption assumption, std::int64_t gamma_denominator,
                                   const ExponentRational& gamma_max,
                                   const ClassifyOptions& options) {
  require(gamma_denominator >= 1, ErrorKind::InvalidArgument, "gamma denominator must be >= 1");
  ThresholdScan scan;
  bool seen_infeasible = false;
  bool have_feasible = false;
  bool bracketed = false;
  const ExponentRational step(1, gamma_denominator);
  for (ExponentRational gamma(0); gamma <= gamma_max; gamma = gamma + step) {
    const bool feasible = classify_power_potential(n, gamma, assumption, options).feasible;
    if (feasible) {
      if (seen_infeasible) scan.monotone = false;
      scan.last_feasible = gamma;
      have_feasible = true;
    } else {
      if (!seen_infeasible && have_feasible) {
        scan.first_infeasible = gamma;
        bracketed = true;
      }
      seen_infeasible = true;
    }
  }
  require(have_feasible && bracketed, ErrorKind::OutOfRange,
          "no feasibility boundary inside the scanned gamma range");
  scan.boundary = 0.5 * (scan.last_feasible.to_double() + scan.first_infeasible.to_double());
  return scan;
}

}  // namespace strichartz
