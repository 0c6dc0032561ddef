#include "cas/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cas {

const char* to_string(Status s) {
  switch (s) {
    case Status::Detected: return "detected";
    case Status::NotDetected: return "not-detected";
    case Status::Inapplicable: return "inapplicable";
  }
  return "unknown";
}

const CriterionVerdict& CriterionReport::find(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return v;
  throw Error(ErrorCode::InvalidArgument, "report has no verdict named '" + name + "'");
}

namespace {

CriterionVerdict inapplicable(std::string name, std::string reason) {
  CriterionVerdict v;
  v.name = std::move(name);
  v.status = Status::Inapplicable;
  v.reason = std::move(reason);
  return v;
}

Status detected_if(bool ok) { return ok ? Status::Detected : Status::NotDetected; }

void check_length(const Spectrum& s, const Dims& dims) {
  if (static_cast<int>(s.size()) != dims.total())
    throw Error(ErrorCode::DimensionMismatch,
                "spectrum length " + std::to_string(s.size()) + " does not match dims " +
                    dims.to_string());
}

}  // namespace

CriterionVerdict ratio_criterion(const Spectrum& s, int d, RatioMode mode, double tol) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "ratio criterion: d must be >= 2");
  const std::string name = mode == RatioMode::Cas ? "ratio_cas" : "ratio_separability";
  if (mode == RatioMode::Cas) {
    if (!s.dims().is_bipartite())
      return inapplicable(name, "CAS mode needs bipartite dims");
    if (d != s.dims().min_local())
      return inapplicable(name, "CAS mode needs d equal to the smaller local dimension");
  }

  CriterionVerdict v;
  v.name = name;
  const double threshold = static_cast<double>(d + 1) / (d - 1);
  const double ratio = spectral_ratio(s);
  v.computed["d"] = d;
  v.computed["threshold"] = threshold;
  v.computed["ratio"] = ratio;
  v.computed["lambda_max"] = s.max();
  v.computed["lambda_min"] = s.min();
  if (is_singular(s)) {
    // Rank-deficient states can always be driven to an entangled state.
    v.computed["singular"] = 1.0;
    v.status = Status::NotDetected;
    return v;
  }
  v.status = detected_if(ratio <= threshold + tol);
  return v;
}

CriterionVerdict purity_ball(const Spectrum& s, const Dims& dims, double tol) {
  if (!dims.is_bipartite()) return inapplicable("purity_ball", "needs bipartite dims");
  check_length(s, dims);
  const int big_d = dims.total();
  CriterionVerdict v;
  v.name = "purity_ball";
  const double p = purity(s);
  const double bound = 1.0 / (big_d - 1);
  v.computed["purity"] = p;
  v.computed["bound"] = bound;
  v.status = detected_if(p <= bound + tol);
  return v;
}

std::pair<CriterionVerdict, CriterionVerdict> region_checks(const Spectrum& s, const Dims& dims,
                                                            double tol) {
  CriterionVerdict b = purity_ball(s, dims, tol);
  b.name = "region_b";
  if (!dims.is_bipartite()) return {inapplicable("region_a", "needs bipartite dims"), b};
  CriterionVerdict a;
  a.name = "region_a";
  const double bound = 1.0 / (dims.total() + 2);
  a.computed["lambda_min"] = s.min();
  a.computed["bound"] = bound;
  a.status = detected_if(s.min() >= bound - tol);
  return {a, b};
}

CriterionVerdict appt_spectral_necessary(const Spectrum& s, double tol) {
  const std::size_t n = s.size();
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "APPT inequality needs D >= 3");
  CriterionVerdict v;
  v.name = "appt_spectral";
  const double lhs = s[0];
  const double rhs = s[n - 2] + 2.0 * std::sqrt(s[n - 1] * s[n - 3]);
  v.computed["lambda_1"] = lhs;
  v.computed["rhs"] = rhs;
  v.status = detected_if(lhs <= rhs + tol);
  return v;
}

std::optional<FilippovTerms> filippov_terms(double purity_value, int total_dim) {
  if (!(purity_value > 0.0)) return std::nullopt;
  const double inv = 1.0 / purity_value;
  const double nearest = std::round(inv);
  const int k = std::abs(inv - nearest) <= 1e-9 * inv ? static_cast<int>(nearest)
                                                      : static_cast<int>(std::ceil(inv));
  if (k <= 1) return std::nullopt;
  const double inner = std::max(0.0, (k * purity_value - 1.0) / (k - 1));
  FilippovTerms t;
  t.k = k;
  t.lhs = 1.0 + std::sqrt(inner);
  t.rhs = 3.0 * k * std::sqrt(purity_value / (total_dim + 8));
  return t;
}

std::vector<CriterionVerdict> purity_bound_report(double p, const Dims& dims, double tol) {
  dims.require_bipartite();
  const int d_a = std::min(dims[0], dims[1]);
  const int d_b = std::max(dims[0], dims[1]);
  const int big_d = dims.total();
  std::vector<CriterionVerdict> out;

  CriterionVerdict cas;
  cas.name = "cas_purity";
  const double cas_bound = (static_cast<double>(d_a) / d_b) / (d_a * d_a - 1.0);
  cas.computed["purity"] = p;
  cas.computed["bound"] = cas_bound;
  cas.status = detected_if(p <= cas_bound + tol);
  out.push_back(cas);

  CriterionVerdict as;
  as.name = "as_purity";
  const double as_bound = big_d == 4 ? 3.0 / 8.0 : 2.0 / big_d;
  as.computed["purity"] = p;
  as.computed["bound"] = as_bound;
  as.status = detected_if(p <= as_bound + tol);
  out.push_back(as);

  const auto terms = filippov_terms(p, big_d);
  if (!terms) {
    out.push_back(inapplicable("filippov", "purity 1 leaves no admissible k"));
  } else {
    CriterionVerdict f;
    f.name = "filippov";
    f.computed["purity"] = p;
    f.computed["k"] = terms->k;
    f.computed["lhs"] = terms->lhs;
    f.computed["rhs"] = terms->rhs;
    f.status = detected_if(terms->lhs <= terms->rhs + tol);
    out.push_back(f);
  }
  return out;
}

std::vector<CriterionVerdict> purity_bound_report(const Spectrum& s, const Dims& dims,
                                                  double tol) {
  check_length(s, dims);
  return purity_bound_report(purity(s), dims, tol);
}

std::vector<Bipartition> multipartite_guarantee(const Spectrum& s, const std::vector<int>& locals,
                                                int l, double tol) {
  if (l < 2) throw Error(ErrorCode::InvalidArgument, "multipartite guarantee: l must be >= 2");
  const Dims dims(locals);
  check_length(s, dims);
  std::vector<Bipartition> out;
  const double threshold = static_cast<double>(l + 1) / (l - 1);
  if (is_singular(s) || spectral_ratio(s) > threshold + tol) return out;

  const int n = dims.parties();
  if (n < 2 || n > 30) return out;
  const unsigned full = (1u << n) - 1u;
  for (unsigned mask = 1; mask < full; ++mask) {
    const unsigned rest = full & ~mask;
    if (mask > rest) continue;  // each unordered split once
    Bipartition b;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        b.side_a.push_back(i);
        b.dim_a *= locals[static_cast<std::size_t>(i)];
      } else {
        b.side_b.push_back(i);
        b.dim_b *= locals[static_cast<std::size_t>(i)];
      }
    }
    if (b.min_side() <= l) out.push_back(std::move(b));
  }
  return out;
}

double gibbs_threshold(double h_inf_norm, int l, double k_b) {
  if (l < 2) throw Error(ErrorCode::InvalidArgument, "gibbs threshold: l must be >= 2");
  if (!(h_inf_norm >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "gibbs threshold: ||H|| must be >= 0");
  if (!(k_b > 0.0)) throw Error(ErrorCode::InvalidArgument, "gibbs threshold: k_B must be > 0");
  return 2.0 * h_inf_norm / (k_b * std::log(static_cast<double>(l + 1) / (l - 1)));
}

double copy_bound_real(double ratio) {
  if (!std::isfinite(ratio) || !(ratio > 1.0))
    throw Error(ErrorCode::Inapplicable,
                "copy bound: ratio must be finite and > 1 (the maximally mixed state stays "
                "absolutely separable)");
  return std::log(ratio + 2.0 * std::sqrt(ratio)) / std::log(ratio);
}

int copy_bound(double ratio) {
  return static_cast<int>(std::floor(copy_bound_real(ratio))) + 1;
}

CriterionReport classify(const Spectrum& s, double tol) {
  const Dims& dims = s.dims();
  dims.require_bipartite();
  const int d = dims.min_local();
  CriterionReport r{dims, s, {}};
  r.verdicts.push_back(ratio_criterion(s, d, RatioMode::Cas, tol));
  r.verdicts.push_back(ratio_criterion(s, d, RatioMode::Separability, tol));
  r.verdicts.push_back(purity_ball(s, dims, tol));
  auto [a, b] = region_checks(s, dims, tol);
  r.verdicts.push_back(std::move(a));
  r.verdicts.push_back(std::move(b));
  r.verdicts.push_back(appt_spectral_necessary(s, tol));
  for (auto& v : purity_bound_report(s, dims, tol)) r.verdicts.push_back(std::move(v));
  return r;
}

}  // namespace cas
