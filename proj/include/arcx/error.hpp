#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arcx {

enum class ErrorKind {
  NotTriangulable,
  IndexOutOfRange,
  NotFlippable,
  InvalidCoordinates,
  NonTermination,
  ResourceLimit,
  NotFinite,
  ParseError,
  ValidationError,
  UndefinedVertex,
  NotRealizable,
  SignatureMismatch,
  NotConnectedWithinSlice,
  InvalidHomeo,
  VertexOutsideDomain,
  WitnessNotFound,
  ClassMismatch,
  OrientationUnsatisfiable,
  AmbiguousCorrespondence,
  Disagreement,
  ChainLeavesSlice,
  Internal,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotTriangulable: return "NotTriangulable";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotFlippable: return "NotFlippable";
    case ErrorKind::InvalidCoordinates: return "InvalidCoordinates";
    case ErrorKind::NonTermination: return "NonTermination";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::NotFinite: return "NotFinite";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UndefinedVertex: return "UndefinedVertex";
    case ErrorKind::NotRealizable: return "NotRealizable";
    case ErrorKind::SignatureMismatch: return "SignatureMismatch";
    case ErrorKind::NotConnectedWithinSlice: return "NotConnectedWithinSlice";
    case ErrorKind::InvalidHomeo: return "InvalidHomeo";
    case ErrorKind::VertexOutsideDomain: return "VertexOutsideDomain";
    case ErrorKind::WitnessNotFound: return "WitnessNotFound";
    case ErrorKind::ClassMismatch: return "ClassMismatch";
    case ErrorKind::OrientationUnsatisfiable: return "OrientationUnsatisfiable";
    case ErrorKind::AmbiguousCorrespondence: return "AmbiguousCorrespondence";
    case ErrorKind::Disagreement: return "Disagreement";
    case ErrorKind::ChainLeavesSlice: return "ChainLeavesSlice";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace arcx
