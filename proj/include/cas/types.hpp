#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cas {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Numerical tolerances shared across modules.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kClampTol = 1e-12;
inline constexpr double kBoundaryTol = 1e-12;
inline constexpr double kNptTol = 1e-9;

enum class ErrorCode {
  InvalidState,
  InvalidArgument,
  DimensionMismatch,
  SubPovmViolation,
  NotUnital,
  RatioTooSmall,
  InputIsCas,
  CannotComplete,
  Inapplicable,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Local dimensions of a (multi)partite system.
class Dims {
 public:
  Dims() = default;
  Dims(std::initializer_list<int> locals);
  explicit Dims(std::vector<int> locals);

  static Dims bipartite(int d_a, int d_b) { return Dims{d_a, d_b}; }

  const std::vector<int>& locals() const noexcept { return locals_; }
  int parties() const noexcept { return static_cast<int>(locals_.size()); }
  int operator[](int i) const { return locals_.at(static_cast<std::size_t>(i)); }
  int total() const noexcept { return total_; }

  bool is_bipartite() const noexcept { return locals_.size() == 2; }
  // Smaller local dimension of a bipartite system.
  int min_local() const;

  // Throws unless two parties with both local dimensions >= 2.
  void require_bipartite() const;

  std::string to_string() const;

  friend bool operator==(const Dims&, const Dims&) = default;

 private:
  std::vector<int> locals_;
  int total_ = 1;
};

}  // namespace cas
