#include "cas/states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

namespace cas {

namespace {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

RealVector hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double min_eigenvalue(const Matrix& m) { return hermitian_eigenvalues(m).minCoeff(); }
double max_eigenvalue(const Matrix& m) { return hermitian_eigenvalues(m).maxCoeff(); }

DensityMatrix::DensityMatrix(Dims dims, Matrix entries)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
  const int d = dims_.total();
  if (entries_.rows() != d || entries_.cols() != d)
    throw Error(ErrorCode::DimensionMismatch,
                "density matrix: expected " + std::to_string(d) + "x" + std::to_string(d) +
                    " entries for dims " + dims_.to_string());
  if (!entries_.allFinite())
    throw Error(ErrorCode::InvalidState, "density matrix: non-finite entry");

  const double scale = max_abs(entries_);
  const double asym = max_abs(entries_ - entries_.adjoint());
  if (asym > kHermitianTol * scale)
    throw Error(ErrorCode::InvalidState,
                "density matrix: not Hermitian (max |M - M^dag| = " + std::to_string(asym) + ")");
  entries_ = (0.5 * (entries_ + entries_.adjoint())).eval();

  const double tr = entries_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw Error(ErrorCode::InvalidState,
                "density matrix: trace " + std::to_string(tr) + " differs from 1");

  const double lo = min_eigenvalue(entries_);
  if (lo < -kPsdTol)
    throw Error(ErrorCode::InvalidState,
                "density matrix: not positive semidefinite (min eigenvalue " +
                    std::to_string(lo) + ")");
}

DensityMatrix DensityMatrix::maximally_mixed(const Dims& dims) {
  const int d = dims.total();
  return DensityMatrix(dims, Matrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::diagonal(const Dims& dims, std::span<const double> diag) {
  if (static_cast<int>(diag.size()) != dims.total())
    throw Error(ErrorCode::DimensionMismatch, "diagonal state: length does not match dims");
  Matrix m = Matrix::Zero(dims.total(), dims.total());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return DensityMatrix(dims, std::move(m));
}

DensityMatrix DensityMatrix::pure(const Dims& dims, const Vector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw Error(ErrorCode::InvalidState, "pure state: zero vector");
  const Vector v = psi / n;
  return DensityMatrix(dims, v * v.adjoint());
}

Spectrum::Spectrum(std::vector<double> values, Dims dims)
    : values_(std::move(values)), dims_(std::move(dims)) {
  if (static_cast<int>(values_.size()) != dims_.total() || values_.empty())
    throw Error(ErrorCode::DimensionMismatch,
                "spectrum: " + std::to_string(values_.size()) + " values for dims " +
                    dims_.to_string());
  double sum = 0.0;
  for (double& v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidState, "spectrum: non-finite value");
    if (v < -kClampTol)
      throw Error(ErrorCode::InvalidState,
                  "spectrum: negative eigenvalue " + std::to_string(v));
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (std::abs(sum - 1.0) > kTraceTol)
    throw Error(ErrorCode::InvalidState, "spectrum: values sum to " + std::to_string(sum));
  std::sort(values_.begin(), values_.end(), std::greater<>());
}

Spectrum spectrum(const DensityMatrix& rho) {
  const RealVector ev = hermitian_eigenvalues(rho.matrix());
  std::vector<double> values(ev.data(), ev.data() + ev.size());
  // Anything the PSD check admitted is treated as numerical zero.
  for (double& v : values)
    if (v < 0.0 && v >= -kPsdTol) v = 0.0;
  return Spectrum(std::move(values), rho.dims());
}

double spectral_ratio(const Spectrum& s) {
  if (s.min() <= 0.0) return std::numeric_limits<double>::infinity();
  return s.max() / s.min();
}

bool is_singular(const Spectrum& s) { return s.min() <= 0.0; }

double purity(const Spectrum& s) {
  double p = 0.0;
  for (double v : s.values()) p += v * v;
  return p;
}

Matrix partial_transpose(const Matrix& m, int d_a, int d_b, int subsystem) {
  if (subsystem != 0 && subsystem != 1)
    throw Error(ErrorCode::InvalidArgument,
                "partial transpose: subsystem index " + std::to_string(subsystem) +
                    " out of range for a bipartite system");
  if (m.rows() != d_a * d_b || m.cols() != d_a * d_b)
    throw Error(ErrorCode::DimensionMismatch, "partial transpose: matrix does not match dims");
  Matrix out(m.rows(), m.cols());
  for (int a = 0; a < d_a; ++a)
    for (int b = 0; b < d_b; ++b)
      for (int ap = 0; ap < d_a; ++ap)
        for (int bp = 0; bp < d_b; ++bp) {
          const Complex v = m(a * d_b + b, ap * d_b + bp);
          if (subsystem == 1)
            out(a * d_b + bp, ap * d_b + b) = v;
          else
            out(ap * d_b + b, a * d_b + bp) = v;
        }
  return out;
}

Matrix partial_transpose(const DensityMatrix& rho, int subsystem) {
  rho.dims().require_bipartite();
  return partial_transpose(rho.matrix(), rho.dims()[0], rho.dims()[1], subsystem);
}

Vector phi_plus_vector(int d_a, int d_b) {
  const int d = std::min(d_a, d_b);
  Vector v = Vector::Zero(d_a * d_b);
  for (int i = 0; i < d; ++i) v(i * d_b + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return v;
}

NamedState parse_named_state(const std::string& name) {
  if (name == "maximally_mixed") return NamedState::MaximallyMixed;
  if (name == "seed_state") return NamedState::SeedState;
  if (name == "werner") return NamedState::Werner;
  if (name == "phi_plus") return NamedState::PhiPlus;
  if (name == "omega_t") return NamedState::OmegaT;
  if (name == "rho_tilde") return NamedState::RhoTilde;
  if (name == "boundary_state") return NamedState::BoundaryState;
  throw Error(ErrorCode::InvalidArgument, "unknown state name '" + name + "'");
}

const char* to_string(NamedState name) {
  switch (name) {
    case NamedState::MaximallyMixed: return "maximally_mixed";
    case NamedState::SeedState: return "seed_state";
    case NamedState::Werner: return "werner";
    case NamedState::PhiPlus: return "phi_plus";
    case NamedState::OmegaT: return "omega_t";
    case NamedState::RhoTilde: return "rho_tilde";
    case NamedState::BoundaryState: return "boundary_state";
  }
  return "unknown";
}

namespace {

DensityMatrix make_omega(int d_a, int d_b, double t) {
  const Dims dims = Dims::bipartite(d_a, d_b);
  dims.require_bipartite();
  const int d = std::min(d_a, d_b);
  if (!(t >= 0.0 && t < d))
    throw Error(ErrorCode::InvalidArgument,
                "omega_t: t must lie in [0, d) with d = " + std::to_string(d));
  const Vector phi = phi_plus_vector(d_a, d_b);
  const Matrix w = partial_transpose(phi * phi.adjoint(), d_a, d_b, 1);
  const int big_d = dims.total();
  Matrix m = (Matrix::Identity(big_d, big_d) - t * w) / (big_d - t);
  return DensityMatrix(dims, std::move(m));
}

DensityMatrix make_rho_tilde(int d_a, int d_b) {
  if (!(2 <= d_a && d_a < d_b))
    throw Error(ErrorCode::InvalidArgument, "rho_tilde: requires 2 <= d_A < d_B");
  const int big_d = d_a * d_b;
  const int p = big_d / 2;
  const int q = big_d - p;
  const double ratio = static_cast<double>(d_a + 1) / (d_a - 1);
  const double ell = 1.0 / (p + q * ratio);
  std::vector<double> diag(static_cast<std::size_t>(big_d), ratio * ell);
  std::fill(diag.begin(), diag.begin() + p, ell);
  return DensityMatrix::diagonal(Dims::bipartite(d_a, d_b), diag);
}

}  // namespace

DensityMatrix make_named_state(NamedState name, const NamedStateParams& params) {
  switch (name) {
    case NamedState::MaximallyMixed: {
      const Dims dims = Dims::bipartite(params.d_a, params.d_b);
      dims.require_bipartite();
      return DensityMatrix::maximally_mixed(dims);
    }
    case NamedState::SeedState: {
      const double third = 1.0 / 3.0;
      const std::vector<double> diag{third, third, third, 0.0};
      return DensityMatrix::diagonal(Dims::bipartite(2, 2), diag);
    }
    case NamedState::Werner: {
      Vector singlet = Vector::Zero(4);
      singlet(1) = 1.0 / std::sqrt(2.0);
      singlet(2) = -1.0 / std::sqrt(2.0);
      Matrix m = 0.5 * singlet * singlet.adjoint() + Matrix::Identity(4, 4) / 8.0;
      return DensityMatrix(Dims::bipartite(2, 2), std::move(m));
    }
    case NamedState::PhiPlus: {
      const Dims dims = Dims::bipartite(params.d_a, params.d_b);
      dims.require_bipartite();
      return DensityMatrix::pure(dims, phi_plus_vector(params.d_a, params.d_b));
    }
    case NamedState::OmegaT:
      return make_omega(params.d_a, params.d_b, params.t);
    case NamedState::BoundaryState:
      return make_omega(params.d_a, params.d_b, 1.0);
    case NamedState::RhoTilde:
      return make_rho_tilde(params.d_a, params.d_b);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown named state");
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<int> locals = a.dims().locals();
  locals.insert(locals.end(), b.dims().locals().begin(), b.dims().locals().end());
  const Matrix& ma = a.matrix();
  const Matrix& mb = b.matrix();
  Matrix out(ma.rows() * mb.rows(), ma.cols() * mb.cols());
  for (Eigen::Index i = 0; i < ma.rows(); ++i)
    for (Eigen::Index j = 0; j < ma.cols(); ++j)
      out.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) = ma(i, j) * mb;
  return DensityMatrix(Dims(std::move(locals)), std::move(out));
}

DensityMatrix attach_mixed_ancilla(const DensityMatrix& rho, int d_bprime) {
  rho.dims().require_bipartite();
  if (d_bprime < 1)
    throw Error(ErrorCode::InvalidArgument, "attach_mixed_ancilla: d_B' must be >= 1");
  if (d_bprime == 1) return rho;
  const DensityMatrix ancilla = DensityMatrix::maximally_mixed(Dims{d_bprime});
  const DensityMatrix joint = tensor_product(rho, ancilla);
  return DensityMatrix(Dims::bipartite(rho.dims()[0], rho.dims()[1] * d_bprime),
                       joint.matrix());
}

Spectrum gibbs_spectrum(std::span<const double> energies, double temperature, double k_b) {
  return gibbs_spectrum(energies, temperature, k_b, Dims{static_cast<int>(energies.size())});
}

Spectrum gibbs_spectrum(std::span<const double> energies, double temperature, double k_b,
                        const Dims& dims) {
  if (!(temperature > 0.0))
    throw Error(ErrorCode::InvalidArgument, "gibbs_spectrum: temperature must be positive");
  if (!(k_b > 0.0))
    throw Error(ErrorCode::InvalidArgument, "gibbs_spectrum: k_B must be positive");
  if (energies.empty()) throw Error(ErrorCode::InvalidArgument, "gibbs_spectrum: no energies");
  const double e_min = *std::min_element(energies.begin(), energies.end());
  std::vector<double> weights;
  weights.reserve(energies.size());
  for (double e : energies) weights.push_back(std::exp(-(e - e_min) / (k_b * temperature)));
  const double z = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= z;
  return Spectrum(std::move(weights), dims);
}

Spectrum product_spectrum(const Spectrum& a, const Spectrum& b) {
  std::vector<double> values;
  values.reserve(a.size() * b.size());
  for (double x : a.values())
    for (double y : b.values()) values.push_back(x * y);
  std::vector<int> locals = a.dims().locals();
  locals.insert(locals.end(), b.dims().locals().begin(), b.dims().locals().end());
  return Spectrum(std::move(values), Dims(std::move(locals)));
}

Spectrum power_spectrum(const Spectrum& s, int copies) {
  if (copies < 1) throw Error(ErrorCode::InvalidArgument, "power_spectrum: copies must be >= 1");
  Spectrum out = s;
  for (int i = 1; i < copies; ++i) out = product_spectrum(out, s);
  return out;
}

}  // namespace cas
