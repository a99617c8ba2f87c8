#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strichartz/rational.hpp"

namespace strichartz {

/// A cluster D of interacting particles (1-based labels) in spatial dimension d.
class ClusterSpec {
 public:
  ClusterSpec(std::vector<int> members, int dimension);

  const std::vector<int>& members() const noexcept { return members_; }
  int dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(int particle) const;

  /// Throws InvalidCluster unless every member lies in {1, ..., particle_count}.
  void validate_against(int particle_count) const;

  std::string label() const;

  friend bool operator==(const ClusterSpec&, const ClusterSpec&) = default;

 private:
  std::vector<int> members_;
  int dimension_;
};

/// n_D: (|D| - 1) d for genuine clusters, d for a single particle.
int relative_dimension(const ClusterSpec& cluster);

enum class PotentialClass { Weighted, TildeInfinity, Continuous };

struct PotentialClassTag {
  PotentialClass kind;
  ExponentRational a;
  ExponentRational p;
  ClusterSpec cluster;
};

std::string to_string(PotentialClass kind);

/// a(p) with 1/a = 1 - n/(2p). p = n/2 gives a = inf (the limiting branch).
ExponentRational a_of_p(int n, const ExponentRational& p);

struct StrichartzPair {
  ExponentRational l;
  ExponentRational theta;
};

/// (l, theta) with 1/l = 1/2 - 1/(2p) and 1/theta = n/(4p).
StrichartzPair strichartz_pair(int n, const ExponentRational& p);

/// 0 <= 2/sigma = n (1/2 - 1/lambda) <= 1, decided exactly.
bool is_admissible(int n, const ExponentRational& lambda, const ExponentRational& sigma);

struct DerivativeExponents {
  ExponentRational b;
  ExponentRational q;
  ExponentRational p_tilde;
};

/// b = 4p/(4p - n), q = 2np/(n + 4p) for n >= 4 and 2p/(p + 1) for n = 3,
/// p_tilde = max(2, p).
DerivativeExponents derivative_exponents(int n, const ExponentRational& p);

enum class Assumption { V1, V2 };

std::string to_string(Assumption assumption);
Assumption parse_assumption(const std::string& text);

struct ClassifyOptions {
  std::int64_t denominator = 100;
  /// Finite part of the p grid is [lower, max_p_factor * n] plus infinity.
  std::int64_t max_p_factor = 8;
};

struct FeasibilityReport {
  int n = 0;
  ExponentRational gamma;
  Assumption assumption = Assumption::V1;
  bool feasible = false;
  /// Smallest feasible p on the grid (the reported witness).
  std::optional<ExponentRational> witness;
  /// Extremes of the feasible set on the scanned grid; p_high = inf when the
  /// bounded (p = inf) point is feasible.
  std::optional<ExponentRational> p_low;
  std::optional<ExponentRational> p_high;
  std::size_t feasible_count = 0;
  std::size_t scanned_count = 0;
  /// V-1 only: the Ĩ^{inf, n/2} branch and the I^{a(p), p} branch separately.
  bool tilde_branch_feasible = false;
  std::optional<ExponentRational> weighted_branch_witness;
  /// V-2 only: companion exponents at the witness.
  std::optional<DerivativeExponents> witness_exponents;
};

/// Scans a rational p grid for exponents that make the truncated power
/// |x|^{-gamma} admissible under the chosen assumption. The V-2 check uses the
/// moving-center time derivative profile |x|^{-gamma-1}.
FeasibilityReport classify_power_potential(int n, const ExponentRational& gamma,
                                           Assumption assumption,
                                           const ClassifyOptions& options = {});

/// |x|^{-gamma} restricted to the unit ball lies in L^p(R^n) iff gamma p < n.
bool power_locally_integrable(int n, const ExponentRational& gamma, const ExponentRational& p);

struct ThresholdScan {
  ExponentRational last_feasible;
  ExponentRational first_infeasible;
  /// Midpoint of the bracketing pair, as a double.
  double boundary = 0.0;
  bool monotone = true;
};

/// Sweeps gamma = k / gamma_denominator over [0, gamma_max] and brackets the
/// feasibility boundary.
ThresholdScan scan_gamma_threshold(int n, Assumption assumption, std::int64_t gamma_denominator,
                                   const ExponentRational& gamma_max,
                                   const ClassifyOptions& options = {});

}  // namespace strichartz
