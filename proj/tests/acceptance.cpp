// Acceptance suite: one line per criterion, with pinned tolerances and time limits.

#include <omp.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cas/channels.hpp"
#include "cas/criteria.hpp"
#include "cas/oracles.hpp"
#include "cas/witnesses.hpp"
#include "support/generators.hpp"
#include "support/jacobi_oracle.hpp"

using namespace cas;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "FAILED: " << what << "; ";
    pass = pass && ok;
  }
};

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<void(Outcome&)> body;
};

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix eye(int d) { return Matrix::Identity(d, d); }

void stochastic_map_example(Outcome& o) {
  const MeasurePrepareMap m = make_werner_example_map();
  const MapOutput on_id = apply_map(m, eye(4));
  const double id_res = max_abs(on_id.output - (5.0 / 12) * eye(4));
  o.require(id_res < 1e-12, "Lambda(1) = 5/12 1");

  const DensityMatrix werner = make_named_state(NamedState::Werner);
  const MapOutput out = apply_map(m, make_named_state(NamedState::SeedState));
  const double out_res = max_abs(out.output - (2.0 / 9) * werner.matrix());
  o.require(out_res < 1e-12, "output = (2/9) rho_W");
  o.require(std::abs(out.success_prob - 2.0 / 9) < 1e-12, "success probability 2/9");
  const double pt = ppt_min_eigenvalue(out.normalized(Dims{2, 2}));
  o.require(std::abs(pt + 0.125) < 1e-9, "normalized output PT eigenvalue -1/8");
  o.detail << "identity residual " << id_res << ", output residual " << out_res << ", p = " << out.success_prob
           << ", PT min " << pt;
}

void entanglement_generation(Outcome& o) {
  test::Rng rng(1001);
  int done = 0;
  double worst_gap = 0.0;
  double least_negative = -std::numeric_limits<double>::infinity();
  while (done < 100) {
    const std::vector<double> v = test::bounded_ratio_spectrum(4, 30.0, rng);
    const Spectrum s(v, Dims{2, 2});
    if (!(spectral_ratio(s) > 3.0)) continue;
    const DensityMatrix rho(Dims{2, 2}, test::rotate(v, rng()));
    const EntanglementProtocol p = entangle_from(rho);
    o.require(validate_map(p.map) > 0.0, "map validates");
    const DensityMatrix out = apply_map(p.map, rho).normalized(Dims{2, 2});
    const double expected = (1.0 - p.t) / (4.0 - p.t);
    const double computed = ppt_min_eigenvalue(out);
    const double oracle = test::oracle_eigenvalues(partial_transpose(out, 1)).back();
    worst_gap = std::max({worst_gap, std::abs(computed - expected), std::abs(oracle - expected)});
    least_negative = std::max(least_negative, computed);
    o.require(std::abs(computed - expected) <= 1e-9, "PT eigenvalue (1-t)/(D-t)");
    o.require(computed < -1e-9, "output is NPT");
    ++done;
  }
  o.detail << done << " spectra, max |PT - (1-t)/(D-t)| = " << worst_gap << ", largest PT min = " << least_negative;
}

void ratio_threshold_equivalence(Outcome& o) {
  test::Rng rng(2002);
  const Dims dims{2, 3};
  int above = 0;
  int below = 0;
  int skipped = 0;
  long long unitaries = 0;
  for (int i = 0; i < 10000; ++i) {
    const Spectrum s(test::bounded_ratio_spectrum(6, 6.0, rng), dims);
    const double r = spectral_ratio(s);
    if (std::abs(r - 3.0) <= 1e-9) {
      ++skipped;
      continue;
    }
    const bool violated = ancilla_appt_violation(s, 2, 3) < -1e-12;
    o.require(violated == (r > 3.0), "ancilla violation iff R > 3");
    if (r > 3.0) {
      ++above;
    } else {
      ++below;
      const FalsificationResult f = as_falsify_search(s, dims, 100, rng());
      unitaries += f.samples_used;
      o.require(!f.found, "no NPT rotation for R <= 3");
    }
  }
  o.detail << above << " above / " << below << " at or below threshold, " << skipped << " within 1e-9, " << unitaries
           << " unitaries searched";
}

void separating_witness(Outcome& o) {
  test::Rng rng(3003);
  for (int d_b : {3, 4}) {
    const Dims dims{2, d_b};
    const int big_d = dims.total();
    const DensityMatrix rt = make_named_state(NamedState::RhoTilde, {2, d_b, 0});
    const Spectrum s = spectrum(rt);
    o.require(purity(s) > 1.0 / (big_d - 1), "rho_tilde outside the purity ball");
    o.require(s.min() < 1.0 / (big_d + 2), "rho_tilde outside region A");
    const Witness w = make_separating_witness(2, d_b);
    const double value = evaluate(w, rt);
    o.require(value < -1e-6, "Tr(W rho_tilde) < -1e-6");
    if (d_b == 3) o.require(std::abs(value + 0.0197) <= 1e-4, "Tr(W rho_tilde) = -0.0197 on (2,3)");

    double min_a = std::numeric_limits<double>::infinity();
    double min_b = min_a;
    for (int i = 0; i < 10000; ++i) {
      const Matrix a = test::region_a_sample(big_d, rng);
      const Matrix b = test::region_b_sample(big_d, rng);
      o.require(min_eigenvalue(a) >= 1.0 / (big_d + 2) - 1e-12, "region A sample in region");
      o.require((b * b).trace().real() <= 1.0 / (big_d - 1) + 1e-12, "region B sample in region");
      min_a = std::min(min_a, evaluate(w, a));
      min_b = std::min(min_b, evaluate(w, b));
    }
    o.require(min_a >= -1e-9, "W >= 0 on region A");
    o.require(min_b >= -1e-9, "W >= 0 on region B");
    o.detail << dims.to_string() << ": Tr(W rho~) = " << value << ", min on A " << min_a << ", min on B " << min_b
             << "; ";
  }
}

void decomposable_trace_norm(Outcome& o) {
  test::Rng rng(4004);
  for (const Dims& dims : {Dims{2, 2}, Dims{2, 3}, Dims{2, 4}, Dims{3, 3}}) {
    const int d = dims.min_local();
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const DensityMatrix sigma = i % 2 ? test::random_state(dims, rng) : test::random_pure_state(dims, rng);
      const Witness w = make_decomposable_witness(sigma);
      o.require(std::abs(w.trace() - 1.0) <= 1e-12, "trace one");
      const double n = trace_norm(w);
      worst = std::max(worst, n);
      o.require(n <= d + 1e-9, "||W||_1 <= min(d_A, d_B)");
    }
    o.detail << dims.to_string() << " max " << worst << "; ";
  }
  for (int d : {2, 3}) {
    const double n = trace_norm(make_ppt_witness(Dims{d, d}));
    o.require(std::abs(n - d) <= 1e-10, "PPT witness saturates the bound");
    o.detail << "ppt(" << d << "," << d << ") " << n << "; ";
  }
}

void appt_purity_chain(Outcome& o) {
  test::Rng rng(5005);
  const std::vector<Dims> all{Dims{2, 3}, Dims{3, 3}, Dims{3, 4}, Dims{4, 4}};
  for (const Dims& dims : all) {
    const int big_d = dims.total();
    int passing = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 10000; ++i) {
      std::vector<double> v;
      switch (i % 3) {
        case 0: v = test::mixed_spectrum(big_d, rng); break;
        case 1: v = test::bounded_ratio_spectrum(big_d, 4.0, rng); break;
        default: v = test::appt_edge_spectrum(big_d, rng); break;
      }
      const Spectrum s(v, dims);
      if (appt_spectral_necessary(s).status != Status::Detected) {
        o.require(i % 3 != 2, "boundary spectra pass the APPT inequality");
        continue;
      }
      ++passing;
      worst = std::max(worst, purity(s) - 2.0 / big_d);
      o.require(purity(s) <= 2.0 / big_d + 1e-12, "APPT spectra have purity <= 2/D");
    }
    const auto terms = filippov_terms(2.0 / big_d, big_d);
    o.require(terms.has_value() && terms->lhs < terms->rhs, "Filippov condition strict at 2/D");
    o.detail << "D=" << big_d << ": " << passing << " pass, max purity - 2/D = " << worst;
    if (terms) o.detail << ", Filippov " << terms->lhs << " < " << terms->rhs;
    o.detail << "; ";
  }
}

void ratio_inside_purity_ball(Outcome& o) {
  test::Rng rng(6006);
  for (const Dims& dims : {Dims{2, 2}, Dims{3, 3}}) {
    const int d = dims[0];
    const int big_d = dims.total();
    const double threshold = static_cast<double>(d + 1) / (d - 1);
    const double cas_bound = (static_cast<double>(dims[0]) / dims[1]) / (d * d - 1.0);
    double worst = -std::numeric_limits<double>::infinity();
    int n = 0;
    while (n < 10000) {
      const Spectrum s(test::bounded_ratio_spectrum(big_d, threshold, rng), dims);
      if (spectral_ratio(s) > threshold) continue;
      ++n;
      const double p = purity(s);
      worst = std::max(worst, p - 1.0 / (big_d - 1));
      o.require(p <= 1.0 / (big_d - 1) + 1e-12, "purity <= 1/(D-1)");
      o.require(p <= cas_bound + 1e-12, "purity <= (d_A/d_B)/(d_A^2-1)");
    }
    o.detail << dims.to_string() << ": max purity - 1/(D-1) = " << worst << "; ";
  }
}

void copy_bound_check(Outcome& o) {
  for (double r : {2.0, 3.0, 5.0}) {
    const Spectrum s({r / (r + 3), 1 / (r + 3), 1 / (r + 3), 1 / (r + 3)}, Dims{2, 2});
    const int n = copy_bound(r);
    const double trigger = r + 2 * std::sqrt(r);
    const Spectrum many = power_spectrum(s, n);
    o.require(appt_spectral_necessary(many).status == Status::NotDetected, "n copies violate APPT");
    o.require(spectral_ratio(many) > trigger, "n copies trigger R^n > R + 2 sqrt R");
    double fewer_ratio = 1.0;
    if (n > 1) {
      fewer_ratio = spectral_ratio(power_spectrum(s, n - 1));
      o.require(fewer_ratio <= trigger, "n-1 copies do not trigger the bound");
    }
    o.detail << "R=" << r << ": n=" << n << ", R^(n-1)=" << fewer_ratio << " <= " << trigger << " < R^n="
             << spectral_ratio(many) << "; ";
  }
}

void transformation_round_trip(Outcome& o) {
  test::Rng rng(9009);
  const Dims dims{2, 2};
  double worst = 0.0;
  double min_prob = 1.0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> a = test::bounded_ratio_spectrum(4, 30.0, rng);
    std::vector<double> b = test::bounded_ratio_spectrum(4, 30.0, rng);
    if (spectral_ratio(Spectrum(a, dims)) < spectral_ratio(Spectrum(b, dims))) std::swap(a, b);
    const DensityMatrix rho(dims, test::rotate(a, rng()));
    const DensityMatrix sigma(dims, test::rotate(b, rng()));
    const Transformation t = construct_transformation(rho, sigma);
    o.require(validate_map(t.map) > 0.0, "map validates with q > 0");
    const MapOutput out = apply_map(t.map, rho);
    min_prob = std::min(min_prob, out.success_prob);
    const DensityMatrix produced = out.normalized(dims);
    const double res = max_abs(produced.matrix() - sigma.matrix());
    worst = std::max(worst, res);
    o.require(res < 1e-9, "output residual < 1e-9");
    o.require(spectral_ratio(spectrum(produced)) <= spectral_ratio(spectrum(rho)) + 1e-9, "ratio monotone");
  }
  o.detail << "1000 pairs, max residual " << worst << ", min success probability " << min_prob;
}

// Brute force over a 1-degree grid on both Bloch spheres. The product
// expectation is bilinear in the Bloch 4-vectors: sum_{mu,nu} T_{mu nu} a_mu b_nu.
double bloch_grid_minimum(const Witness& w) {
  const Complex i(0.0, 1.0);
  std::array<Matrix, 4> pauli;
  pauli[0] = eye(2);
  pauli[1] = Matrix::Zero(2, 2);
  pauli[1] << 0, 1, 1, 0;
  pauli[2] = Matrix::Zero(2, 2);
  pauli[2] << 0, -i, i, 0;
  pauli[3] = Matrix::Zero(2, 2);
  pauli[3] << 1, 0, 0, -1;
  double t[4][4];
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      Matrix k(4, 4);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) k.block(2 * r, 2 * c, 2, 2) = pauli[mu](r, c) * pauli[nu];
      t[mu][nu] = (w.matrix() * k).trace().real() / 4.0;
    }

  std::vector<std::array<double, 3>> grid;
  const double deg = std::acos(-1.0) / 180.0;
  for (int th = 0; th <= 180; ++th)
    for (int ph = 0; ph < 360; ++ph)
      grid.push_back({std::sin(th * deg) * std::cos(ph * deg), std::sin(th * deg) * std::sin(ph * deg),
                      std::cos(th * deg)});
  const auto n = static_cast<long>(grid.size());
  std::vector<double> bx(grid.size()), by(grid.size()), bz(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    bx[k] = grid[k][0];
    by[k] = grid[k][1];
    bz[k] = grid[k][2];
  }

  double best = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(min : best)
  for (long ia = 0; ia < n; ++ia) {
    const double a[4] = {1.0, grid[ia][0], grid[ia][1], grid[ia][2]};
    double c[4];
    for (int nu = 0; nu < 4; ++nu) c[nu] = t[0][nu] * a[0] + t[1][nu] * a[1] + t[2][nu] * a[2] + t[3][nu] * a[3];
    double local = std::numeric_limits<double>::infinity();
    for (long ib = 0; ib < n; ++ib) {
      const double v = c[0] + c[1] * bx[ib] + c[2] * by[ib] + c[3] * bz[ib];
      local = v < local ? v : local;
    }
    best = std::min(best, local);
  }
  return best;
}

void product_minimization(Outcome& o) {
  const Witness ppt = make_ppt_witness(Dims{2, 2});
  Vector singlet = Vector::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  const Witness singlet_w(Dims{2, 2}, eye(4) / 4.0 - 0.5 * singlet * singlet.adjoint());

  const double seesaw = min_product_expectation(ppt);
  o.require(std::abs(seesaw) <= 1e-6, "see-saw minimum of the PPT witness in [-1e-6, 1e-6]");
  const double grid = bloch_grid_minimum(ppt);
  o.require(std::abs(grid - seesaw) <= 1e-4, "grid agrees with see-saw");
  const double seesaw_s = min_product_expectation(singlet_w);
  const double grid_s = bloch_grid_minimum(singlet_w);
  o.require(std::abs(seesaw_s) <= 1e-6, "see-saw minimum of the singlet witness");
  o.require(std::abs(grid_s - seesaw_s) <= 1e-4, "grid agrees with see-saw (singlet witness)");
  o.detail << "ppt: see-saw " << seesaw << ", grid " << grid << "; singlet: see-saw " << seesaw_s << ", grid "
           << grid_s;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "measure-and-prepare example", 1.0, stochastic_map_example},
      {2, "entanglement generation above the ratio threshold", 10.0, entanglement_generation},
      {3, "ratio threshold vs ancilla APPT violation", 120.0, ratio_threshold_equivalence},
      {4, "separating witness on regions A and B", 60.0, separating_witness},
      {5, "decomposable witness trace norm", 30.0, decomposable_trace_norm},
      {6, "APPT inequality implies purity <= 2/D", 30.0, appt_purity_chain},
      {7, "ratio set inside the purity bounds", 30.0, ratio_inside_purity_ball},
      {8, "copy bound", 10.0, copy_bound_check},
      {9, "transformation round trip", 60.0, transformation_round_trip},
      {10, "product-state minimization oracle", 60.0, product_minimization},
  };

  std::printf("acceptance suite (%d OpenMP threads)\n", omp_get_max_threads());
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed < c.limit_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("%s  %2d  %-50s %8.3f s (limit %g s)%s\n      %s\n", pass ? "PASS" : "FAIL", c.id, c.title, elapsed,
                c.limit_s, in_time ? "" : "  OVER TIME LIMIT", o.detail.str().c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
