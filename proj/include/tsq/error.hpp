#ifndef TSQ_ERROR_HPP_
#define TSQ_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tsq {

  enum class ErrorCode {
    // core
    OpenBoundaryWord,
    BadFaceLength,
    UnknownLabel,
    DuplicateLabel,
    UnknownVertex,
    // specio
    SyntaxError,
    // links
    NotTriangleComplex,
    // flats
    BadParameter,
    // cellmaps
    IncidenceViolation,
    NoMatchingTargetFace,
    KindMismatch,
    PatchTooSmall,
    // developer
    PreconditionFailed,
    ResourceLimit,
    BallTooSmall,
    AnchorMismatch,
    // geodesics
    Disconnected,
    UnclassifiableFirstEdgeSet,
    NoConfigurationFound,
  };

  constexpr std::string_view to_string(ErrorCode c) noexcept {
    switch (c) {
      case ErrorCode::OpenBoundaryWord: return "OpenBoundaryWord";
      case ErrorCode::BadFaceLength: return "BadFaceLength";
      case ErrorCode::UnknownLabel: return "UnknownLabel";
      case ErrorCode::DuplicateLabel: return "DuplicateLabel";
      case ErrorCode::UnknownVertex: return "UnknownVertex";
      case ErrorCode::SyntaxError: return "SyntaxError";
      case ErrorCode::NotTriangleComplex: return "NotTriangleComplex";
      case ErrorCode::BadParameter: return "BadParameter";
      case ErrorCode::IncidenceViolation: return "IncidenceViolation";
      case ErrorCode::NoMatchingTargetFace: return "NoMatchingTargetFace";
      case ErrorCode::KindMismatch: return "KindMismatch";
      case ErrorCode::PatchTooSmall: return "PatchTooSmall";
      case ErrorCode::PreconditionFailed: return "PreconditionFailed";
      case ErrorCode::ResourceLimit: return "ResourceLimit";
      case ErrorCode::BallTooSmall: return "BallTooSmall";
      case ErrorCode::AnchorMismatch: return "AnchorMismatch";
      case ErrorCode::Disconnected: return "Disconnected";
      case ErrorCode::UnclassifiableFirstEdgeSet:
        return "UnclassifiableFirstEdgeSet";
      case ErrorCode::NoConfigurationFound: return "NoConfigurationFound";
    }
    return "Unknown";
  }

  // All library failures are reported through this one exception type; the
  // code says which contract was violated. Errors raised while reading a
  // document carry a 1-based source position (0 when not applicable).
  class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, std::string const& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what),
          _code(code) {}

    Error(ErrorCode code, size_t line, size_t column, std::string const& what)
        : std::runtime_error(std::string(to_string(code)) + " at "
                             + std::to_string(line) + ":"
                             + std::to_string(column) + ": " + what),
          _code(code),
          _line(line),
          _column(column) {}

    ErrorCode code() const noexcept {
      return _code;
    }
    size_t line() const noexcept {
      return _line;
    }
    size_t column() const noexcept {
      return _column;
    }

   private:
    ErrorCode _code;
    size_t    _line   = 0;
    size_t    _column = 0;
  };

}  // namespace tsq

#endif  // TSQ_ERROR_HPP_
