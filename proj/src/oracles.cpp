#include "cas/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "random.hpp"

namespace cas {

double ppt_min_eigenvalue(const Matrix& rho, int d_a, int d_b) {
  return min_eigenvalue(partial_transpose(rho, d_a, d_b, 1));
}

double ppt_min_eigenvalue(const DensityMatrix& rho) {
  rho.dims().require_bipartite();
  return ppt_min_eigenvalue(rho.matrix(), rho.dims()[0], rho.dims()[1]);
}

Matrix haar_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "haar_unitary: dim must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix z(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) z(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

namespace {

void check_search_args(const Spectrum& s, const Dims& dims, std::int64_t samples) {
  dims.require_bipartite();
  if (static_cast<int>(s.size()) != dims.total())
    throw Error(ErrorCode::DimensionMismatch, "falsify: spectrum length does not match dims");
  if (samples < 0) throw Error(ErrorCode::InvalidArgument, "falsify: negative sample count");
}

double sample_pt_min(const RealVector& diag, const Dims& dims, std::uint64_t seed) {
  const Matrix u = haar_unitary(dims.total(), seed);
  const Matrix rho = u * diag.cast<Complex>().asDiagonal() * u.adjoint();
  return ppt_min_eigenvalue(rho, dims[0], dims[1]);
}

RealVector as_vector(const Spectrum& s) {
  return Eigen::Map<const RealVector>(s.values().data(), static_cast<Eigen::Index>(s.size()));
}

}  // namespace

FalsificationResult as_falsify_search_serial(const Spectrum& s, const Dims& dims,
                                             std::int64_t samples, std::uint64_t seed) {
  check_search_args(s, dims, samples);
  const RealVector diag = as_vector(s);
  FalsificationResult res;
  res.min_pt_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < samples; ++i) {
    const std::uint64_t sample_seed = seed + static_cast<std::uint64_t>(i);
    const double v = sample_pt_min(diag, dims, sample_seed);
    res.samples_used = i + 1;
    if (v < -kNptTol) {
      res.found = true;
      res.unitary_seed = sample_seed;
      res.min_pt_eigenvalue = v;
      return res;
    }
    res.min_pt_eigenvalue = std::min(res.min_pt_eigenvalue, v);
  }
  return res;
}

FalsificationResult as_falsify_search(const Spectrum& s, const Dims& dims, std::int64_t samples,
                                      std::uint64_t seed) {
  check_search_args(s, dims, samples);
  const RealVector diag = as_vector(s);
  std::int64_t first_hit = samples;
  double overall_min = std::numeric_limits<double>::infinity();

#pragma omp parallel
  {
    double local_min = std::numeric_limits<double>::infinity();
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < samples; ++i) {
      std::int64_t current;
#pragma omp atomic read
      current = first_hit;
      if (i > current) continue;
      const double v = sample_pt_min(diag, dims, seed + static_cast<std::uint64_t>(i));
      local_min = std::min(local_min, v);
      if (v < -kNptTol) {
#pragma omp critical(cas_first_hit)
        first_hit = std::min(first_hit, i);
      }
    }
#pragma omp critical(cas_min_reduce)
    overall_min = std::min(overall_min, local_min);
  }

  FalsificationResult res;
  if (first_hit < samples) {
    res.found = true;
    res.unitary_seed = seed + static_cast<std::uint64_t>(first_hit);
    res.min_pt_eigenvalue = sample_pt_min(diag, dims, res.unitary_seed);
    res.samples_used = first_hit + 1;
  } else {
    res.min_pt_eigenvalue = overall_min;
    res.samples_used = samples;
  }
  return res;
}

double rearrangement_min(std::span<const double> a_eigs, std::span<const double> b_eigs) {
  if (a_eigs.size() != b_eigs.size())
    throw Error(ErrorCode::DimensionMismatch, "rearrangement_min: length mismatch");
  std::vector<double> a(a_eigs.begin(), a_eigs.end());
  std::vector<double> b(b_eigs.begin(), b_eigs.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end(), std::greater<>());
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

std::vector<double> pure_state_pt_spectrum(std::span<const double> p, int ambient) {
  const int n = static_cast<int>(p.size());
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Schmidt weights: empty list");
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= -kClampTol)) throw Error(ErrorCode::InvalidArgument, "Schmidt weights: negative entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kTraceTol)
    throw Error(ErrorCode::InvalidArgument, "Schmidt weights: do not sum to 1");
  if (ambient < n * n)
    throw Error(ErrorCode::InvalidArgument,
                "pure_state_pt_spectrum: ambient dimension below " + std::to_string(n * n));

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(ambient));
  for (double v : p) out.push_back(std::max(v, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double g = std::sqrt(std::max(p[i], 0.0) * std::max(p[j], 0.0));
      out.push_back(g);
      out.push_back(-g);
    }
  out.resize(static_cast<std::size_t>(ambient), 0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double ancilla_appt_violation(const Spectrum& s, int d_a, int d_bprime) {
  if (d_a < 2) throw Error(ErrorCode::InvalidArgument, "ancilla_appt_violation: d_A must be >= 2");
  if (2 * d_bprime < d_a * (d_a + 1))
    throw Error(ErrorCode::InvalidArgument,
                "ancilla_appt_violation: d_B' must be >= d_A(d_A+1)/2 = " + std::to_string(d_a * (d_a + 1) / 2));
  if (s.dims().is_bipartite() && s.dims().min_local() != d_a)
    throw Error(ErrorCode::InvalidArgument, "ancilla_appt_violation: d_A must be the smaller local dimension");
  if (static_cast<int>(s.size()) % d_a != 0)
    throw Error(ErrorCode::DimensionMismatch, "ancilla_appt_violation: spectrum length not divisible by d_A");

  std::vector<double> extended;
  extended.reserve(s.size() * static_cast<std::size_t>(d_bprime));
  for (double v : s.values())
    for (int k = 0; k < d_bprime; ++k) extended.push_back(v / d_bprime);

  const std::vector<double> weights(static_cast<std::size_t>(d_a), 1.0 / d_a);
  const std::vector<double> pt = pure_state_pt_spectrum(weights, static_cast<int>(extended.size()));
  return rearrangement_min(extended, pt);
}

bool verify_ratio_monotone(const MeasurePrepareMap& m, const DensityMatrix& rho) {
  const MapOutput out = apply_map(m, rho);
  if (out.success_prob <= 1e-12) return true;
  const double r_in = spectral_ratio(spectrum(rho));
  const double r_out = spectral_ratio(spectrum(out.normalized(m.dims())));
  return r_out <= r_in + 1e-9;
}

}  // namespace cas
