#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cas/channels.hpp"
#include "cas/states.hpp"

namespace cas {

/// Minimum eigenvalue of rho^T_B. Below -1e-9 certifies entanglement.
double ppt_min_eigenvalue(const DensityMatrix& rho);
double ppt_min_eigenvalue(const Matrix& rho, int d_a, int d_b);

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
/// diag(R) folded back into Q. Deterministic per seed.
Matrix haar_unitary(int dim, std::uint64_t seed);

struct FalsificationResult {
  bool found = false;
  std::uint64_t unitary_seed = 0;  // valid when found
  double min_pt_eigenvalue = 0.0;  // at the hit, or the minimum over all samples
  std::int64_t samples_used = 0;
};

/// Searches the unitary orbit of diag(s) for an NPT state. Sample i uses
/// haar_unitary(D, seed + i); the lowest-index hit is reported. Not-found is
/// inconclusive.
FalsificationResult as_falsify_search(const Spectrum& s, const Dims& dims, std::int64_t samples,
                                      std::uint64_t seed);
// Serial reference of the above; identical result for identical arguments.
FalsificationResult as_falsify_search_serial(const Spectrum& s, const Dims& dims,
                                             std::int64_t samples, std::uint64_t seed);

/// min over U of Tr[A U B U^dag] = sum_i a_i^(ascending) b_i^(descending).
double rearrangement_min(std::span<const double> a_eigs, std::span<const double> b_eigs);

/// {p_i} u {+-sqrt(p_i p_j) : i<j}, zero-padded to `ambient`, sorted descending.
std::vector<double> pure_state_pt_spectrum(std::span<const double> p, int ambient);

/// min over U of Tr[(rho (x) 1/d_B') U^dag (psi psi)^Gamma U] for psi maximally
/// entangled across d_a levels. Negative means rho (x) 1/d_B' is not
/// absolutely PPT across A : BB'.
double ancilla_appt_violation(const Spectrum& s, int d_a, int d_bprime);

/// True iff R(output) <= R(rho) + 1e-9 or the success probability is <= 1e-12.
bool verify_ratio_monotone(const MeasurePrepareMap& m, const DensityMatrix& rho);

}  // namespace cas
