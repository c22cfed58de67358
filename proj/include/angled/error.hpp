#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace angled {

enum class ErrorKind {
  ParseError,
  MismatchedGroup,
  RankTooLarge,
  NoSuchEdge,
  NoSuchVertex,
  NoSuchFace,
  LabelInUse,
  ApexesAdjacent,
  ShapeMismatch,
  PreconditionFailed,
  GroupHasEvenTorsion,
  NotAngled,
  NotInLink,
  PathInconsistency,
  NotConstantOverTriangles,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MismatchedGroup: return "MismatchedGroup";
    case ErrorKind::RankTooLarge: return "RankTooLarge";
    case ErrorKind::NoSuchEdge: return "NoSuchEdge";
    case ErrorKind::NoSuchVertex: return "NoSuchVertex";
    case ErrorKind::NoSuchFace: return "NoSuchFace";
    case ErrorKind::LabelInUse: return "LabelInUse";
    case ErrorKind::ApexesAdjacent: return "ApexesAdjacent";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::GroupHasEvenTorsion: return "GroupHasEvenTorsion";
    case ErrorKind::NotAngled: return "NotAngled";
    case ErrorKind::NotInLink: return "NotInLink";
    case ErrorKind::PathInconsistency: return "PathInconsistency";
    case ErrorKind::NotConstantOverTriangles: return "NotConstantOverTriangles";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace angled
