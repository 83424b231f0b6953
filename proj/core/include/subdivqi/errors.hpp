#pragma once

#include <stdexcept>
#include <string>

namespace subdivqi {

enum class ErrorCode {
  MixedArity,
  NonManifold,
  BadIndex,
  IncompleteRing,
  MaskMissing,
  SingularSystem,
  UnsupportedBoundary,
  DegenerateFunction,
  UnsupportedValence,
  InvalidMesh,
  InvalidMasks,
  Io,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MixedArity: return "MixedArity";
    case ErrorCode::NonManifold: return "NonManifold";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::IncompleteRing: return "IncompleteRing";
    case ErrorCode::MaskMissing: return "MaskMissing";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::UnsupportedBoundary: return "UnsupportedBoundary";
    case ErrorCode::DegenerateFunction: return "DegenerateFunction";
    case ErrorCode::UnsupportedValence: return "UnsupportedValence";
    case ErrorCode::InvalidMesh: return "InvalidMesh";
    case ErrorCode::InvalidMasks: return "InvalidMasks";
    case ErrorCode::Io: return "Io";
  }
  return "Error";
}

}  // namespace subdivqi
