#include "cas/types.hpp"

#include <algorithm>
#include <sstream>

namespace cas {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidState: return "invalid-state";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::SubPovmViolation: return "sub-povm-violation";
    case ErrorCode::NotUnital: return "not-unital";
    case ErrorCode::RatioTooSmall: return "ratio-too-small";
    case ErrorCode::InputIsCas: return "input-is-cas";
    case ErrorCode::CannotComplete: return "cannot-complete";
    case ErrorCode::Inapplicable: return "inapplicable";
  }
  return "unknown";
}

Dims::Dims(std::initializer_list<int> locals) : Dims(std::vector<int>(locals)) {}

Dims::Dims(std::vector<int> locals) : locals_(std::move(locals)) {
  if (locals_.empty()) throw Error(ErrorCode::InvalidArgument, "dims: empty local dimension list");
  total_ = 1;
  for (int d : locals_) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "dims: local dimension must be positive");
    total_ *= d;
  }
}

int Dims::min_local() const {
  require_bipartite();
  return std::min(locals_[0], locals_[1]);
}

void Dims::require_bipartite() const {
  if (locals_.size() != 2 || locals_[0] < 2 || locals_[1] < 2)
    throw Error(ErrorCode::InvalidArgument,
                "expected bipartite dims with both sides >= 2, got " + to_string());
}

std::string Dims::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < locals_.size(); ++i) {
    if (i) os << ',';
    os << locals_[i];
  }
  os << ')';
  return os.str();
}

}  // namespace cas
