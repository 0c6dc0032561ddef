#include "cas/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cas::io {

Spectrum StateFile::eigenvalues() const {
  if (spectrum) return *spectrum;
  return cas::spectrum(*matrix);
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw Error(ErrorCode::InvalidArgument, "matrix: expected a non-empty list of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw Error(ErrorCode::InvalidArgument, "matrix: rows must form a square matrix");
    for (Eigen::Index k = 0; k < n; ++k) {
      const json& e = row[static_cast<std::size_t>(k)];
      if (e.is_number()) {
        m(i, k) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw Error(ErrorCode::InvalidArgument, "matrix: entries must be (re, im) pairs");
      }
    }
  }
  return m;
}

namespace {

Dims dims_from_json(const json& j) {
  if (j.contains("dims")) {
    const json& d = j.at("dims");
    if (!d.is_array() || d.empty())
      throw Error(ErrorCode::InvalidArgument, "state file: 'dims' must be a list of integers");
    std::vector<int> locals;
    for (const auto& v : d) {
      if (!v.is_number_integer())
        throw Error(ErrorCode::InvalidArgument, "state file: 'dims' must be a list of integers");
      locals.push_back(v.get<int>());
    }
    return Dims(std::move(locals));
  }
  if (j.contains("d_a") && j.contains("d_b")) {
    if (!j["d_a"].is_number_integer() || !j["d_b"].is_number_integer())
      throw Error(ErrorCode::InvalidArgument, "state file: d_a and d_b must be integers");
    return Dims::bipartite(j["d_a"].get<int>(), j["d_b"].get<int>());
  }
  throw Error(ErrorCode::InvalidArgument, "state file: missing 'dims' (or 'd_a'/'d_b')");
}

json dims_to_json(const Dims& d) { return json(d.locals()); }

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

}  // namespace

json state_to_json(const DensityMatrix& rho) {
  return json{{"dims", dims_to_json(rho.dims())}, {"matrix", matrix_to_json(rho.matrix())}};
}

json spectrum_to_json(const Spectrum& s) {
  return json{{"dims", dims_to_json(s.dims())}, {"spectrum", s.values()}};
}

StateFile state_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "state file: expected a JSON object");
  const bool has_matrix = j.contains("matrix");
  const bool has_spectrum = j.contains("spectrum");
  if (has_matrix == has_spectrum)
    throw Error(ErrorCode::InvalidArgument,
                "state file: exactly one of 'matrix' or 'spectrum' must be present");
  StateFile f{dims_from_json(j), std::nullopt, std::nullopt};
  if (has_matrix) {
    f.matrix.emplace(f.dims, matrix_from_json(j.at("matrix")));
  } else {
    const json& s = j.at("spectrum");
    if (!s.is_array()) throw Error(ErrorCode::InvalidArgument, "state file: 'spectrum' must be a list");
    std::vector<double> values;
    for (const auto& v : s) {
      if (!v.is_number()) throw Error(ErrorCode::InvalidArgument, "state file: spectrum entries must be numbers");
      values.push_back(v.get<double>());
    }
    f.spectrum.emplace(std::move(values), f.dims);
  }
  return f;
}

json verdict_to_json(const CriterionVerdict& v) {
  json j{{"name", v.name}, {"status", to_string(v.status)}, {"computed", json::object()}};
  for (const auto& [k, x] : v.computed) j["computed"][k] = x;
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

json report_to_json(const CriterionReport& r) {
  json verdicts = json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(verdict_to_json(v));
  return json{{"dims", dims_to_json(r.dims)},
              {"spectrum", r.spectrum.values()},
              {"purity", purity(r.spectrum)},
              {"spectral_ratio", spectral_ratio(r.spectrum)},
              {"verdicts", std::move(verdicts)}};
}

json witness_to_json(const Witness& w, std::string_view kind) {
  return json{{"kind", std::string(kind)},
              {"dims", dims_to_json(w.dims())},
              {"trace", w.trace()},
              {"matrix", matrix_to_json(w.matrix())}};
}

Witness witness_from_json(const json& j) {
  if (!j.is_object() || !j.contains("matrix"))
    throw Error(ErrorCode::InvalidArgument, "witness file: expected an object with 'matrix'");
  Witness w(dims_from_json(j), matrix_from_json(j.at("matrix")));
  if (j.contains("trace") && j["trace"].is_number() &&
      std::abs(j["trace"].get<double>() - w.trace()) > kBoundaryTol)
    throw Error(ErrorCode::InvalidArgument, "witness file: recorded trace does not match matrix");
  return w;
}

json plan_to_json(const TransformPlan& p) {
  json j{{"alpha", p.alpha},
         {"beta", p.beta},
         {"k", p.k},
         {"c", p.c},
         {"theta", p.theta},
         {"singular_input", p.singular_input},
         {"depolarizing", p.depolarizing}};
  if (p.x.size()) j["x"] = vector_to_json(p.x);
  if (p.y.size()) j["y"] = vector_to_json(p.y);
  if (p.phi1) j["phi1"] = matrix_to_json(p.phi1->matrix());
  if (p.phi2) j["phi2"] = matrix_to_json(p.phi2->matrix());
  return j;
}

json map_to_json(const MeasurePrepareMap& m) {
  json branches = json::array();
  for (const auto& br : m.branches())
    branches.push_back({{"effect", matrix_to_json(br.effect)},
                        {"output", matrix_to_json(br.output.matrix())}});
  return json{{"dims", dims_to_json(m.dims())}, {"branches", std::move(branches)}};
}

json falsification_to_json(const FalsificationResult& r, std::uint64_t seed, std::int64_t samples) {
  json j{{"found", r.found},
         {"min_pt_eigenvalue", r.min_pt_eigenvalue},
         {"samples_used", r.samples_used},
         {"samples", samples},
         {"seed", seed}};
  if (r.found) j["unitary_seed"] = r.unitary_seed;
  return j;
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << contents;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace cas::io
