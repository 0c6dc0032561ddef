#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cas/states.hpp"

namespace cas {

enum class Status { Detected, NotDetected, Inapplicable };

const char* to_string(Status s);

struct CriterionVerdict {
  std::string name;
  Status status = Status::Inapplicable;
  std::map<std::string, double> computed;
  std::string reason;  // set when Inapplicable
};

struct CriterionReport {
  Dims dims;
  Spectrum spectrum;
  std::vector<CriterionVerdict> verdicts;

  const CriterionVerdict& find(const std::string& name) const;
};

enum class RatioMode { Cas, Separability };

// Every "Detected" comparison is widened by `tol` on the accepting side.
// Callers other than the CLI's --tol-override should leave it alone.

/// Detected iff lambda_max / lambda_min <= (d+1)/(d-1).
CriterionVerdict ratio_criterion(const Spectrum& s, int d, RatioMode mode,
                                 double tol = kBoundaryTol);

/// Detected iff Tr rho^2 <= 1/(D-1).
CriterionVerdict purity_ball(const Spectrum& s, const Dims& dims, double tol = kBoundaryTol);

/// Region A (rho >= 1/(D+2)) and region B (purity ball). Membership in
/// their convex hull is not decided here.
std::pair<CriterionVerdict, CriterionVerdict> region_checks(const Spectrum& s, const Dims& dims,
                                                            double tol = kBoundaryTol);

/// Necessary condition for absolute PPT:
///   lambda_1 <= lambda_{D-1} + 2 sqrt(lambda_D lambda_{D-2}).
/// NotDetected certifies the spectrum is not absolutely PPT.
CriterionVerdict appt_spectral_necessary(const Spectrum& s, double tol = kBoundaryTol);

/// CAS purity bound, AS purity bound and the Filippov condition, in that order.
std::vector<CriterionVerdict> purity_bound_report(const Spectrum& s, const Dims& dims,
                                                  double tol = kBoundaryTol);
std::vector<CriterionVerdict> purity_bound_report(double purity_value, const Dims& dims,
                                                  double tol = kBoundaryTol);

/// Filippov's inequality at a given purity, with k = ceil(1/purity).
/// Returns {lhs, rhs, k}; nullopt when purity is 1 (k = 1 is degenerate).
struct FilippovTerms {
  double lhs;
  double rhs;
  int k;
};
std::optional<FilippovTerms> filippov_terms(double purity_value, int total_dim);

struct Bipartition {
  std::vector<int> side_a;  // party indices
  std::vector<int> side_b;
  int dim_a = 1;
  int dim_b = 1;
  int min_side() const { return dim_a < dim_b ? dim_a : dim_b; }
  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

/// Every bipartition whose smaller side has dimension <= l, provided
/// R(s) <= (l+1)/(l-1); otherwise empty.
std::vector<Bipartition> multipartite_guarantee(const Spectrum& s, const std::vector<int>& locals,
                                                int l, double tol = kBoundaryTol);

/// T* = 2 ||H||_inf / (k_B ln((l+1)/(l-1))).
double gibbs_threshold(double h_inf_norm, int l, double k_b = 1.0);

/// Smallest integer n with n > ln(R + 2 sqrt R) / ln R.
int copy_bound(double ratio);
double copy_bound_real(double ratio);

/// Runs every registered criterion on a bipartite spectrum.
CriterionReport classify(const Spectrum& s, double tol = kBoundaryTol);

}  // namespace cas
