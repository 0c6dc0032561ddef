#include <doctest.h>

#include <cmath>

#include "cas/witnesses.hpp"
#include "support/generators.hpp"
#include "support/jacobi_oracle.hpp"

using namespace cas;

namespace {

Vector singlet() {
  Vector v = Vector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return v;
}

Vector random_unit(int n, test::Rng& rng) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v.normalized();
}

}  // namespace

TEST_CASE("evaluate") {
  const Witness ppt = make_ppt_witness(Dims{2, 2});
  CHECK(evaluate(ppt, DensityMatrix::maximally_mixed(Dims{2, 2})) == doctest::Approx(0.25));
  CHECK(evaluate(ppt, DensityMatrix::pure(Dims{2, 2}, singlet())) == doctest::Approx(-0.5).epsilon(1e-14));

  const Witness sep = make_separating_witness(2, 3);
  const double expected = (1.0 / 6) * (1 - 2 * std::sqrt(45.0) / 12);
  CHECK(std::abs(expected + 0.01967) < 1e-5);
  const DensityMatrix rt = make_named_state(NamedState::RhoTilde, {2, 3, 0});
  CHECK(std::abs(evaluate(sep, rt) - expected) < 1e-13);
  CHECK(evaluate(sep, DensityMatrix::maximally_mixed(Dims{2, 3})) == doctest::Approx(1.0 / 6).epsilon(1e-13));

  CHECK_THROWS_AS(evaluate(ppt, DensityMatrix::maximally_mixed(Dims{2, 3})), Error);
}

TEST_CASE("ppt witness") {
  const Witness w = make_ppt_witness(Dims{2, 2});
  const std::vector<double> ev = test::oracle_eigenvalues(w.matrix());
  const std::vector<double> expected{0.5, 0.5, 0.5, -0.5};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(ev[i] - expected[i]) < 1e-13);
  for (const Dims& dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}, Dims{3, 5}})
    CHECK(make_ppt_witness(dims).trace() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("separating witness") {
  const SeparationCondition c = separation_condition(2, 3);
  CHECK(c.lhs == doctest::Approx(2 * std::sqrt(45.0)).epsilon(1e-13));
  CHECK(c.rhs == doctest::Approx(12.0));
  CHECK(c.holds());
  const Witness w = make_separating_witness(2, 3);
  CHECK(w.trace() == doctest::Approx(1.0).epsilon(1e-13));
  // Z is traceless with unit-normalized Hilbert-Schmidt part.
  const Matrix z = w.matrix() - Matrix::Identity(6, 6) / 6.0;
  CHECK(std::abs(z.trace()) < 1e-13);
  CHECK(z.norm() == doctest::Approx(std::sqrt(5.0 / 6)).epsilon(1e-13));
  CHECK_THROWS_AS(make_separating_witness(3, 3), Error);
  CHECK_THROWS_AS(make_separating_witness(1, 3), Error);
  CHECK(separation_condition(2, 4).holds());
  CHECK(evaluate(make_separating_witness(2, 4), make_named_state(NamedState::RhoTilde, {2, 4, 0})) < -1e-6);
}

TEST_CASE("decomposable witness") {
  const Witness mm = make_decomposable_witness(DensityMatrix::maximally_mixed(Dims{2, 3}));
  CHECK((mm.matrix() - Matrix::Identity(6, 6) / 6.0).cwiseAbs().maxCoeff() < 1e-15);
  const Witness phi = make_decomposable_witness(make_named_state(NamedState::PhiPlus));
  CHECK((phi.matrix() - make_ppt_witness(Dims{2, 2}).matrix()).cwiseAbs().maxCoeff() < 1e-15);

  test::Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    const Witness w = make_decomposable_witness(test::random_state(Dims{2, 3}, rng));
    CHECK(trace_norm(w) <= 2.0 + 1e-9);
  }
}

TEST_CASE("trace norm") {
  CHECK(trace_norm(Witness(Dims{2, 2}, Matrix::Identity(4, 4) / 4.0)) == doctest::Approx(1.0));
  CHECK(trace_norm(make_ppt_witness(Dims{2, 2})) == doctest::Approx(2.0).epsilon(1e-13));
  // Independent check against the Jacobi oracle.
  const Witness sep = make_separating_witness(2, 3);
  double oracle = 0.0;
  for (double v : test::oracle_eigenvalues(sep.matrix())) oracle += std::abs(v);
  CHECK(trace_norm(sep) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("witness validation") {
  Matrix m = Matrix::Identity(4, 4);
  m(0, 1) = Complex(0.0, 1.0);
  CHECK_THROWS_AS(Witness(Dims{2, 2}, m), Error);
  CHECK_THROWS_AS(Witness(Dims{2, 2, 2}, Matrix::Identity(8, 8)), Error);
  CHECK_THROWS_AS(Witness(Dims{2, 3}, Matrix::Identity(4, 4)), Error);
}

TEST_CASE("min product expectation") {
  const Witness id(Dims{2, 3}, Matrix::Identity(6, 6) / 6.0);
  CHECK(min_product_expectation(id, 4, 20, 1) == doctest::Approx(1.0 / 6).epsilon(1e-12));

  const double ppt = min_product_expectation(make_ppt_witness(Dims{2, 2}));
  CHECK(std::abs(ppt) <= 1e-6);

  const Vector s = singlet();
  const Witness singlet_w(Dims{2, 2}, Matrix::Identity(4, 4) / 4.0 - 0.5 * s * s.adjoint());
  CHECK(std::abs(min_product_expectation(singlet_w)) <= 1e-6);

  SUBCASE("serial and parallel agree exactly") {
    for (std::uint64_t seed : {0u, 1u, 42u}) {
      const Witness w = make_separating_witness(2, 3);
      CHECK(min_product_expectation(w, 16, 50, seed) == min_product_expectation_serial(w, 16, 50, seed));
    }
  }
  SUBCASE("deterministic per seed") {
    const Witness w = make_ppt_witness(Dims{3, 3});
    CHECK(min_product_expectation(w, 8, 30, 5) == min_product_expectation(w, 8, 30, 5));
  }
}

TEST_CASE("property: see-saw is monotone") {
  test::Rng rng(21);
  for (const Dims& dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}, Dims{3, 4}}) {
    const std::vector<Witness> ws{make_ppt_witness(dims),
                                  make_decomposable_witness(test::random_state(dims, rng))};
    for (const Witness& w : ws)
      for (int r = 0; r < 5; ++r) {
        const SeeSawRun run = see_saw(w, random_unit(dims[0], rng), random_unit(dims[1], rng), 100);
        REQUIRE_FALSE(run.objective.empty());
        for (std::size_t i = 1; i < run.objective.size(); ++i)
          CHECK(run.objective[i] <= run.objective[i - 1] + 1e-12);
        CHECK(run.a.norm() == doctest::Approx(1.0));
        CHECK(run.b.norm() == doctest::Approx(1.0));
      }
  }
}

TEST_CASE("property: evaluate is linear") {
  test::Rng rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Witness w = make_separating_witness(2, 3);
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix a = test::random_state(Dims{2, 3}, rng);
    const DensityMatrix b = test::random_state(Dims{2, 3}, rng);
    const double mu = unit(rng);
    const DensityMatrix mix(Dims{2, 3}, mu * a.matrix() + (1 - mu) * b.matrix());
    CHECK(std::abs(evaluate(w, mix) - (mu * evaluate(w, a) + (1 - mu) * evaluate(w, b))) <= 1e-10);
  }
}

TEST_CASE("property: decomposable witnesses obey the trace norm bound") {
  test::Rng rng(17);
  for (const Dims& dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
    for (int i = 0; i < 100; ++i) {
      const DensityMatrix sigma = i % 2 ? test::random_state(dims, rng) : test::random_pure_state(dims, rng);
      CHECK(trace_norm(make_decomposable_witness(sigma)) <= dims.min_local() + 1e-9);
    }
  }
}
