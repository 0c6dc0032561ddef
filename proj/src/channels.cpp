#include "cas/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace cas {

namespace {

constexpr double kUnitalTol = 1e-9;
constexpr double kSuccessFloor = 1e-12;
constexpr double kRatioSlack = 1e-12;

Matrix identity(int d) { return Matrix::Identity(d, d); }

}  // namespace

MeasurePrepareMap::MeasurePrepareMap(Dims dims, std::vector<Branch> branches)
    : dims_(std::move(dims)), branches_(std::move(branches)) {
  for (const auto& br : branches_) {
    if (br.effect.rows() != dims_.total() || br.effect.cols() != dims_.total() ||
        br.output.dim() != dims_.total())
      throw Error(ErrorCode::DimensionMismatch, "measure-prepare map: branch dimension mismatch");
  }
}

Matrix MeasurePrepareMap::effect_sum() const {
  Matrix sum = Matrix::Zero(dim(), dim());
  for (const auto& br : branches_) sum += br.effect;
  return sum;
}

double validate_map(const MeasurePrepareMap& m) {
  const int d = m.dim();
  for (std::size_t i = 0; i < m.branches().size(); ++i) {
    const Matrix& e = m.branches()[i].effect;
    const double scale = std::max(1.0, e.cwiseAbs().maxCoeff());
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * scale)
      throw Error(ErrorCode::SubPovmViolation,
                  "effect " + std::to_string(i) + " is not Hermitian");
    const double lo = min_eigenvalue(0.5 * (e + e.adjoint()));
    if (lo < -kPsdTol)
      throw Error(ErrorCode::SubPovmViolation,
                  "effect " + std::to_string(i) + " is not positive (min eigenvalue " +
                      std::to_string(lo) + ")");
  }
  const Matrix sum = m.effect_sum();
  const double top = max_eigenvalue(0.5 * (sum + sum.adjoint()));
  if (top > 1.0 + kPsdTol)
    throw Error(ErrorCode::SubPovmViolation,
                "effects sum above identity (max eigenvalue " + std::to_string(top) + ")");

  const MapOutput on_identity = apply_map(m, identity(d));
  const double q = on_identity.output.trace().real() / d;
  const double residual = (on_identity.output - q * identity(d)).cwiseAbs().maxCoeff();
  if (residual > kUnitalTol)
    throw Error(ErrorCode::NotUnital,
                "Lambda(1) is not proportional to 1 (residual " + std::to_string(residual) + ")");
  if (!(q > 0.0)) throw Error(ErrorCode::NotUnital, "Lambda(1) vanishes");
  return q;
}

DensityMatrix MapOutput::normalized(const Dims& dims) const {
  if (!(success_prob > kSuccessFloor))
    throw Error(ErrorCode::InvalidArgument, "post-selected output undefined: success probability " +
                                                std::to_string(success_prob));
  return DensityMatrix(dims, output / success_prob);
}

MapOutput apply_map(const MeasurePrepareMap& m, const Matrix& x) {
  if (x.rows() != m.dim() || x.cols() != m.dim())
    throw Error(ErrorCode::DimensionMismatch, "apply_map: operator dimension mismatch");
  MapOutput out{Matrix::Zero(m.dim(), m.dim()), 0.0};
  for (const auto& br : m.branches()) {
    // Tr(E X) = sum_ij E_ij X_ji
    const double weight = br.effect.cwiseProduct(x.transpose()).sum().real();
    out.output += weight * br.output.matrix();
    out.success_prob += weight;
  }
  return out;
}

MapOutput apply_map(const MeasurePrepareMap& m, const DensityMatrix& rho) {
  if (rho.dims().total() != m.dim())
    throw Error(ErrorCode::DimensionMismatch, "apply_map: state dimension mismatch");
  return apply_map(m, rho.matrix());
}

MeasurePrepareMap make_werner_example_map() {
  const Dims dims = Dims::bipartite(2, 2);
  const DensityMatrix werner = make_named_state(NamedState::Werner);
  const double lambda = 2.5;
  const Matrix sigma = lambda * identity(4) / 4.0 - werner.matrix();
  const DensityMatrix sigma_hat(dims, sigma / sigma.trace().real());

  Matrix e_sigma = Matrix::Zero(4, 4);
  e_sigma(3, 3) = 1.0;
  Matrix e_w = Matrix::Zero(4, 4);
  for (int i = 0; i < 3; ++i) e_w(i, i) = 2.0 / 9.0;

  return MeasurePrepareMap(dims, {Branch{e_sigma, sigma_hat}, Branch{e_w, werner}});
}

MeasurePrepareMap depolarizing_map(const Dims& dims) {
  return MeasurePrepareMap(dims, {Branch{identity(dims.total()), DensityMatrix::maximally_mixed(dims)}});
}

namespace {

double expectation(const Matrix& rho, const Vector& v) { return v.dot(rho * v).real(); }

// Finds theta in [0, pi/2] with <x|rho|x> / <y(theta)|rho|y(theta)> = target,
// y(theta) = cos(theta) v_max + sin(theta) v_min. The ratio increases with theta.
double bisect_theta(const Matrix& rho, const Vector& v_max, const Vector& v_min, double target) {
  const double top = expectation(rho, v_max);
  auto ratio_at = [&](double theta) {
    const Vector y = std::cos(theta) * v_max + std::sin(theta) * v_min;
    return top / expectation(rho, y);
  };
  double lo = 0.0;
  double hi = std::numbers::pi / 2;
  if (ratio_at(hi) <= target) return hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double r = ratio_at(mid);
    if (std::abs(r - target) <= 1e-12 * target) return mid;
    (r < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Transformation construct_transformation(const DensityMatrix& rho, const DensityMatrix& sigma,
                                        std::optional<double> c_choice) {
  if (!(rho.dims() == sigma.dims()))
    throw Error(ErrorCode::DimensionMismatch, "construct_transformation: rho and sigma dims differ");
  const Dims& dims = sigma.dims();
  const int d = dims.total();
  const Spectrum s_sigma = spectrum(sigma);

  if (s_sigma.max() - s_sigma.min() <= kClampTol) {
    TransformPlan plan;
    plan.depolarizing = true;
    return {depolarizing_map(dims), plan};
  }

  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.matrix());
  const Vector v_min = eig.eigenvectors().col(0);
  const Vector v_max = eig.eigenvectors().col(d - 1);
  const double rho_min = std::max(0.0, eig.eigenvalues()(0));
  const double rho_max = eig.eigenvalues()(d - 1);

  TransformPlan plan;
  plan.singular_input = rho_min <= kClampTol;
  plan.alpha = d * s_sigma.max();
  const Matrix mixed = identity(d) / static_cast<double>(d);

  if (plan.singular_input) {
    plan.beta = std::numeric_limits<double>::infinity();
    plan.k = plan.alpha - 1.0;
    plan.phi1 = sigma;
    plan.theta = std::numbers::pi / 2;
    plan.x = v_max;
    plan.y = v_min;
  } else {
    const double r_rho = rho_max / rho_min;
    const double r_sigma = spectral_ratio(s_sigma);
    if (!(r_rho >= r_sigma - kRatioSlack * std::max(1.0, r_sigma)))
      throw Error(ErrorCode::RatioTooSmall,
                  "R(rho) = " + std::to_string(r_rho) + " is smaller than R(sigma) = " +
                      std::to_string(r_sigma));
    plan.beta = 1.0 / (d * s_sigma.min());
    const double inv_beta = 1.0 / plan.beta;
    plan.k = (plan.alpha - 1.0) / (1.0 - inv_beta);
    plan.phi1 = DensityMatrix(dims, (sigma.matrix() - inv_beta * mixed) / (1.0 - inv_beta));
    plan.theta = bisect_theta(rho.matrix(), v_max, v_min, plan.alpha * plan.beta);
    plan.x = v_max;
    plan.y = std::cos(plan.theta) * v_max + std::sin(plan.theta) * v_min;
  }
  plan.phi2 = DensityMatrix(dims, (plan.alpha * mixed - sigma.matrix()) / (plan.alpha - 1.0));

  const double c_max = 1.0 / (1.0 + plan.k);
  plan.c = c_choice.value_or(c_max);
  if (!(plan.c > 0.0 && plan.c <= c_max * (1.0 + 1e-12)))
    throw Error(ErrorCode::InvalidArgument,
                "construct_transformation: c must lie in (0, " + std::to_string(c_max) + "]");

  Matrix m1 = plan.c * plan.x * plan.x.adjoint();
  Matrix m2 = plan.c * plan.k * plan.y * plan.y.adjoint();
  MeasurePrepareMap map(dims, {Branch{std::move(m1), *plan.phi1}, Branch{std::move(m2), *plan.phi2}});
  return {std::move(map), std::move(plan)};
}

EntanglementProtocol entangle_from(const DensityMatrix& rho) {
  rho.dims().require_bipartite();
  const int d = rho.dims().min_local();
  const Spectrum s = spectrum(rho);
  double t;
  if (s.min() <= kClampTol) {
    t = (1.0 + d) / 2.0;
  } else {
    const double r = spectral_ratio(s);
    const double threshold = static_cast<double>(d + 1) / (d - 1);
    if (r <= threshold + kBoundaryTol)
      throw Error(ErrorCode::InputIsCas,
                  "R(rho) = " + std::to_string(r) + " <= (d+1)/(d-1) = " +
                      std::to_string(threshold) + ": no stochastic unital map can entangle it");
    t = d * (r - 1.0) / (r + 1.0);
  }
  DensityMatrix target = make_named_state(
      NamedState::OmegaT, NamedStateParams{rho.dims()[0], rho.dims()[1], t});
  Transformation tr = construct_transformation(rho, target);
  return {std::move(tr.map), std::move(tr.plan), std::move(target), t};
}

MeasurePrepareMap complete_to_deterministic(const MeasurePrepareMap& m) {
  const double q = validate_map(m);
  if (q > 1.0 + kPsdTol)
    throw Error(ErrorCode::CannotComplete,
                "unitality factor q = " + std::to_string(q) + " exceeds 1");
  const int d = m.dim();
  Matrix fail = identity(d) - m.effect_sum();
  fail = (0.5 * (fail + fail.adjoint())).eval();
  std::vector<Branch> branches = m.branches();
  branches.push_back(Branch{std::move(fail), DensityMatrix::maximally_mixed(m.dims())});
  return MeasurePrepareMap(m.dims(), std::move(branches));
}

}  // namespace cas
