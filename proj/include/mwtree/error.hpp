#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mwtree {

enum class ErrorCode {
  SingularMatrix,
  NotSymmetric,
  NotSPD,
  NotATree,
  NotConnected,
  SameVertex,
  SingularWeight,
  NotInvertible,
  IsATree,
  NoBridgelessEdge,
  InvalidGraph,
  BadConfig,
  TooLarge,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotSPD: return "NotSPD";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::SameVertex: return "SameVertex";
    case ErrorCode::SingularWeight: return "SingularWeight";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::IsATree: return "IsATree";
    case ErrorCode::NoBridgelessEdge: return "NoBridgelessEdge";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::TooLarge: return "TooLarge";
  }
  return "Unknown";
}

/// Every failure raised by the library. `edge()` is set when the failure is
/// attributable to a single edge (0-based index into the graph's edge list).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> edge = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        edge_(edge) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> edge() const noexcept { return edge_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> edge_;
};

}  // namespace mwtree
