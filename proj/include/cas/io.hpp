#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cas/channels.hpp"
#include "cas/criteria.hpp"
#include "cas/oracles.hpp"
#include "cas/witnesses.hpp"

namespace cas::io {

using nlohmann::json;

inline constexpr const char* kToolName = "cas";
inline constexpr const char* kToolVersion = "1.0.0";

/// Either a full density matrix or a bare spectrum, as read from a state file.
struct StateFile {
  Dims dims;
  std::optional<DensityMatrix> matrix;
  std::optional<Spectrum> spectrum;

  // The file's spectrum, or the eigenvalues of its matrix.
  Spectrum eigenvalues() const;
};

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json state_to_json(const DensityMatrix& rho);
json spectrum_to_json(const Spectrum& s);
// Throws cas::Error(InvalidState/InvalidArgument) naming the violated invariant.
StateFile state_from_json(const json& j);

json verdict_to_json(const CriterionVerdict& v);
json report_to_json(const CriterionReport& r);
json witness_to_json(const Witness& w, std::string_view kind);
Witness witness_from_json(const json& j);
json plan_to_json(const TransformPlan& p);
json map_to_json(const MeasurePrepareMap& m);
json falsification_to_json(const FalsificationResult& r, std::uint64_t seed,
                           std::int64_t samples);

/// 64-bit FNV-1a of a byte string, as "fnv1a64:<hex>".
std::string digest(std::string_view bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

// Serialized form used for every file this tool writes.
std::string dump(const json& j);

}  // namespace cas::io
