#include "cas/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "random.hpp"

namespace cas {

Witness::Witness(Dims dims, Matrix entries) : dims_(std::move(dims)), entries_(std::move(entries)) {
  dims_.require_bipartite();
  if (entries_.rows() != dims_.total() || entries_.cols() != dims_.total())
    throw Error(ErrorCode::DimensionMismatch, "witness: matrix does not match dims");
  const double scale = entries_.cwiseAbs().maxCoeff();
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * scale)
    throw Error(ErrorCode::InvalidArgument, "witness: operator is not Hermitian");
  entries_ = (0.5 * (entries_ + entries_.adjoint())).eval();
  trace_ = entries_.trace().real();
}

double evaluate(const Witness& w, const Matrix& rho) {
  if (rho.rows() != w.dims().total() || rho.cols() != w.dims().total())
    throw Error(ErrorCode::DimensionMismatch, "evaluate: state and witness dimensions differ");
  // Tr(W rho) = sum_ij W_ij rho_ji
  return (w.matrix().cwiseProduct(rho.transpose())).sum().real();
}

double evaluate(const Witness& w, const DensityMatrix& rho) {
  if (rho.dims().total() != w.dims().total())
    throw Error(ErrorCode::DimensionMismatch, "evaluate: state and witness dimensions differ");
  return evaluate(w, rho.matrix());
}

Witness make_ppt_witness(const Dims& dims) {
  dims.require_bipartite();
  const Vector phi = phi_plus_vector(dims[0], dims[1]);
  return Witness(dims, partial_transpose(phi * phi.adjoint(), dims[0], dims[1], 1));
}

SeparationCondition separation_condition(int d_a, int d_b) {
  const double big_d = static_cast<double>(d_a) * d_b;
  const double p = std::floor(big_d / 2);
  const double q = big_d - p;
  const double ratio = static_cast<double>(d_a + 1) / (d_a - 1);
  return {(ratio - 1.0) * std::sqrt((big_d - 1.0) * p * q), p + q * ratio};
}

Witness make_separating_witness(int d_a, int d_b) {
  if (!(2 <= d_a && d_a < d_b))
    throw Error(ErrorCode::InvalidArgument, "separating witness: requires 2 <= d_A < d_B");
  const int big_d = d_a * d_b;
  const int p = big_d / 2;
  const int q = big_d - p;
  Matrix z = Matrix::Zero(big_d, big_d);
  for (int i = 0; i < big_d; ++i) z(i, i) = i < p ? 1.0 / p : -1.0 / q;
  const double z_norm = std::sqrt(1.0 / p + 1.0 / q);
  const double scale = std::sqrt(static_cast<double>(big_d - 1) / big_d) / z_norm;
  Matrix w = Matrix::Identity(big_d, big_d) / static_cast<double>(big_d) + scale * z;
  return Witness(Dims::bipartite(d_a, d_b), std::move(w));
}

Witness make_decomposable_witness(const DensityMatrix& sigma) {
  return Witness(sigma.dims(), partial_transpose(sigma, 1));
}

double trace_norm(const Witness& w) {
  return hermitian_eigenvalues(w.matrix()).cwiseAbs().sum();
}

namespace {

struct MinEig {
  double value;
  Vector vec;
};

MinEig lowest(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  return {solver.eigenvalues()(0), solver.eigenvectors().col(0)};
}

// Contraction over B with b fixed: (M_A)_{aa'} = <b| W_{aa'} |b>.
Matrix contract_b(const Matrix& w, int d_a, int d_b, const Vector& b) {
  Matrix m(d_a, d_a);
  for (int i = 0; i < d_a; ++i)
    for (int j = 0; j < d_a; ++j)
      m(i, j) = b.dot(w.block(i * d_b, j * d_b, d_b, d_b) * b);
  return m;
}

// Contraction over A with a fixed: M_B = sum_{aa'} conj(a_a) a_a' W_{aa'}.
Matrix contract_a(const Matrix& w, int d_a, int d_b, const Vector& a) {
  Matrix m = Matrix::Zero(d_b, d_b);
  for (int i = 0; i < d_a; ++i)
    for (int j = 0; j < d_a; ++j)
      m += std::conj(a(i)) * a(j) * w.block(i * d_b, j * d_b, d_b, d_b);
  return m;
}

constexpr double kSeeSawConvergence = 1e-12;

double run_restart(const Witness& w, int iters, std::uint64_t seed, int restart) {
  auto rng = detail::stream(seed, static_cast<std::uint64_t>(restart));
  Vector a = detail::random_unit_vector(w.dims()[0], rng);
  Vector b = detail::random_unit_vector(w.dims()[1], rng);
  const SeeSawRun run = see_saw(w, std::move(a), std::move(b), iters);
  return run.objective.empty() ? std::numeric_limits<double>::infinity() : run.objective.back();
}

void check_seesaw_args(const Witness&, int restarts, int iters) {
  if (restarts < 1 || iters < 1)
    throw Error(ErrorCode::InvalidArgument, "see-saw: restarts and iterations must be >= 1");
}

}  // namespace

SeeSawRun see_saw(const Witness& w, Vector a, Vector b, int iters) {
  const int d_a = w.dims()[0];
  const int d_b = w.dims()[1];
  SeeSawRun run{std::move(a), std::move(b), {}};
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 0; it < iters; ++it) {
    MinEig ea = lowest(contract_b(w.matrix(), d_a, d_b, run.b));
    run.a = ea.vec;
    run.objective.push_back(ea.value);
    MinEig eb = lowest(contract_a(w.matrix(), d_a, d_b, run.a));
    run.b = eb.vec;
    run.objective.push_back(eb.value);
    if (previous - eb.value < kSeeSawConvergence) break;
    previous = eb.value;
  }
  return run;
}

double min_product_expectation_serial(const Witness& w, int restarts, int iters,
                                      std::uint64_t seed) {
  check_seesaw_args(w, restarts, iters);
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) best = std::min(best, run_restart(w, iters, seed, r));
  return best;
}

double min_product_expectation(const Witness& w, int restarts, int iters, std::uint64_t seed) {
  check_seesaw_args(w, restarts, iters);
  std::vector<double> values(static_cast<std::size_t>(restarts));
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < restarts; ++r) values[static_cast<std::size_t>(r)] = run_restart(w, iters, seed, r);
  return *std::min_element(values.begin(), values.end());
}

}  // namespace cas
