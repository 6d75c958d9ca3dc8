#pragma once

#include <stdexcept>
#include <string>

namespace tripod {

/// Base of every error raised by the library. Carries a short kind tag that
/// the CLI prints verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define TRIPOD_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(#Name, what) {}     \
  };

TRIPOD_DEFINE_ERROR(OrthogonalityViolation)
TRIPOD_DEFINE_ERROR(DegenerateCoupling)
TRIPOD_DEFINE_ERROR(InvalidKappa)
TRIPOD_DEFINE_ERROR(StepTooSmall)
TRIPOD_DEFINE_ERROR(PotentialPresent)
TRIPOD_DEFINE_ERROR(GridTooCoarse)
TRIPOD_DEFINE_ERROR(InvalidGrid)
TRIPOD_DEFINE_ERROR(UnstableStep)
TRIPOD_DEFINE_ERROR(PacketTooNarrow)
TRIPOD_DEFINE_ERROR(PacketTouchesBoundary)
TRIPOD_DEFINE_ERROR(ConfigError)
TRIPOD_DEFINE_ERROR(IoError)

#undef TRIPOD_DEFINE_ERROR

}  // namespace tripod
