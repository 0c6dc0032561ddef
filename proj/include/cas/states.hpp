#pragma once

#include <span>
#include <vector>

#include "cas/types.hpp"

namespace cas {

/// Hermitian, positive semidefinite, unit-trace matrix with subsystem
/// dimensions attached. Construction validates; instances are immutable.
class DensityMatrix {
 public:
  DensityMatrix(Dims dims, Matrix entries);

  const Dims& dims() const noexcept { return dims_; }
  const Matrix& matrix() const noexcept { return entries_; }
  int dim() const noexcept { return dims_.total(); }

  static DensityMatrix maximally_mixed(const Dims& dims);
  static DensityMatrix diagonal(const Dims& dims, std::span<const double> diag);
  static DensityMatrix pure(const Dims& dims, const Vector& psi);

 private:
  Dims dims_;
  Matrix entries_;
};

/// Eigenvalues sorted descending, tiny negatives clamped to zero.
class Spectrum {
 public:
  // Validates nonnegativity and unit sum; sorts a copy of the input.
  Spectrum(std::vector<double> values, Dims dims);

  const std::vector<double>& values() const noexcept { return values_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  double max() const { return values_.front(); }
  double min() const { return values_.back(); }

 private:
  std::vector<double> values_;
  Dims dims_;
};

Spectrum spectrum(const DensityMatrix& rho);

/// lambda_max / lambda_min; +infinity when lambda_min is zero.
double spectral_ratio(const Spectrum& s);
bool is_singular(const Spectrum& s);

double purity(const Spectrum& s);

/// Raw kernel: block-wise transpose of subsystem 0 (A) or 1 (B).
Matrix partial_transpose(const Matrix& m, int d_a, int d_b, int subsystem);
Matrix partial_transpose(const DensityMatrix& rho, int subsystem = 1);

enum class NamedState {
  MaximallyMixed,
  SeedState,      // diag(1/3,1/3,1/3,0) on two qubits
  Werner,         // |Psi-><Psi-|/2 + 1/8
  PhiPlus,        // maximally entangled over the smaller side
  OmegaT,         // (1 - t |Phi+><Phi+|^T_B) / (D - t)
  RhoTilde,       // two-level diagonal state with ratio (d_A+1)/(d_A-1)
  BoundaryState,  // (1 - |Phi+><Phi+|^T_B) / (D - 1), i.e. OmegaT at t = 1
};

struct NamedStateParams {
  int d_a = 2;
  int d_b = 2;
  double t = 0.0;
};

NamedState parse_named_state(const std::string& name);
const char* to_string(NamedState name);

DensityMatrix make_named_state(NamedState name, const NamedStateParams& params = {});

/// Kronecker product; dims are concatenated.
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// rho (x) 1/d_bprime regrouped as the bipartition A : BB'.
DensityMatrix attach_mixed_ancilla(const DensityMatrix& rho, int d_bprime);

/// Thermal spectrum exp(-E/(k_B T)) / Z. Dims default to a single party.
Spectrum gibbs_spectrum(std::span<const double> energies, double temperature,
                        double k_b = 1.0);
Spectrum gibbs_spectrum(std::span<const double> energies, double temperature,
                        double k_b, const Dims& dims);

/// Sorted pairwise products of two spectra; dims concatenated.
Spectrum product_spectrum(const Spectrum& a, const Spectrum& b);

/// Spectrum of n tensor copies.
Spectrum power_spectrum(const Spectrum& s, int copies);

/// Eigen-decomposition helpers used by several modules.
RealVector hermitian_eigenvalues(const Matrix& m);
double min_eigenvalue(const Matrix& m);
double max_eigenvalue(const Matrix& m);

// Maximally entangled vector over the first d = min(d_a, d_b) levels.
Vector phi_plus_vector(int d_a, int d_b);

}  // namespace cas
