#pragma once

#include <cstdint>
#include <vector>

#include "cas/states.hpp"

namespace cas {

/// Hermitian operator on a bipartite space, used as an entanglement witness.
class Witness {
 public:
  Witness(Dims dims, Matrix entries);

  const Dims& dims() const noexcept { return dims_; }
  const Matrix& matrix() const noexcept { return entries_; }
  double trace() const noexcept { return trace_; }

 private:
  Dims dims_;
  Matrix entries_;
  double trace_;
};

/// Tr(W rho).
double evaluate(const Witness& w, const DensityMatrix& rho);
double evaluate(const Witness& w, const Matrix& rho);

/// |Phi+><Phi+| partially transposed on B.
Witness make_ppt_witness(const Dims& dims);

/// 1/D + sqrt((D-1)/D) Z/||Z||_2 with Z = P/p - (1-P)/q, where P projects onto
/// the first p = floor(D/2) computational basis states.
Witness make_separating_witness(int d_a, int d_b);

/// The inequality (R-1) sqrt((D-1) p q) > p + q R that makes the separating
/// witness negative on rho_tilde.
struct SeparationCondition {
  double lhs;
  double rhs;
  bool holds() const { return lhs > rhs; }
};
SeparationCondition separation_condition(int d_a, int d_b);

/// sigma^T_B; block positive for every state sigma.
Witness make_decomposable_witness(const DensityMatrix& sigma);

double trace_norm(const Witness& w);

/// Smallest <a (x) b| W |a (x) b> found by alternating minimization from
/// `restarts` random product starts. An upper bound on the true minimum.
double min_product_expectation(const Witness& w, int restarts = 32, int iters = 100,
                               std::uint64_t seed = 0);
// Serial reference of the above; identical result for identical arguments.
double min_product_expectation_serial(const Witness& w, int restarts = 32, int iters = 100,
                                      std::uint64_t seed = 0);

struct SeeSawRun {
  Vector a;
  Vector b;
  std::vector<double> objective;  // value after every half-step
};

/// A single alternating-minimization run from the given start vectors.
SeeSawRun see_saw(const Witness& w, Vector a, Vector b, int iters);

}  // namespace cas
