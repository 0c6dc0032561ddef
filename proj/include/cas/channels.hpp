#pragma once

#include <optional>
#include <vector>

#include "cas/states.hpp"

namespace cas {

struct Branch {
  Matrix effect;         // E_i, PSD
  DensityMatrix output;  // phi_i
};

/// Measure-and-prepare instrument X -> sum_i Tr(E_i X) phi_i.
/// Construction does not validate; see validate_map.
class MeasurePrepareMap {
 public:
  MeasurePrepareMap(Dims dims, std::vector<Branch> branches);

  const Dims& dims() const noexcept { return dims_; }
  const std::vector<Branch>& branches() const noexcept { return branches_; }
  int dim() const noexcept { return dims_.total(); }

  Matrix effect_sum() const;

 private:
  Dims dims_;
  std::vector<Branch> branches_;
};

/// Checks the sub-POVM condition and stochastic unitality; returns q with
/// Lambda(1) = q 1. Throws SubPovmViolation or NotUnital.
double validate_map(const MeasurePrepareMap& m);

struct MapOutput {
  Matrix output;        // unnormalized
  double success_prob;  // trace of the output

  // Post-selected state; throws when success_prob <= 1e-12.
  DensityMatrix normalized(const Dims& dims) const;
};

MapOutput apply_map(const MeasurePrepareMap& m, const DensityMatrix& rho);
// Applies the map to an arbitrary operator (e.g. the identity).
MapOutput apply_map(const MeasurePrepareMap& m, const Matrix& x);

MeasurePrepareMap make_werner_example_map();

/// Parameters of a synthesized transformation rho -> sigma.
struct TransformPlan {
  double alpha = 1.0;
  double beta = 1.0;  // +inf on the singular-input branch (beta^-1 = 0)
  double k = 0.0;
  double c = 1.0;
  double theta = 0.0;  // angle of y between the top and bottom eigenvectors of rho
  bool singular_input = false;
  bool depolarizing = false;
  Vector x;
  Vector y;
  std::optional<DensityMatrix> phi1;
  std::optional<DensityMatrix> phi2;
};

struct Transformation {
  MeasurePrepareMap map;
  TransformPlan plan;
};

/// Two-branch stochastic unital map sending rho to sigma with nonzero
/// probability. Requires rho singular or R(rho) >= R(sigma); otherwise
/// throws RatioTooSmall. `c_choice` must lie in (0, 1/(1+k)].
Transformation construct_transformation(const DensityMatrix& rho, const DensityMatrix& sigma,
                                        std::optional<double> c_choice = std::nullopt);

struct EntanglementProtocol {
  MeasurePrepareMap map;
  TransformPlan plan;
  DensityMatrix target;  // omega_t
  double t;
};

/// Maps a state outside the CAS set onto omega_t with t > 1. Throws InputIsCas
/// when R(rho) <= (d+1)/(d-1).
EntanglementProtocol entangle_from(const DensityMatrix& rho);

/// Appends the failure effect 1 - sum E_i with the maximally mixed output.
MeasurePrepareMap complete_to_deterministic(const MeasurePrepareMap& m);

/// Depolarizing channel X -> Tr(X) 1/D.
MeasurePrepareMap depolarizing_map(const Dims& dims);

}  // namespace cas
