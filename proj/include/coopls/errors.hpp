#pragma once

#include <stdexcept>
#include <string>

namespace coopls {

/// Machine-readable failure categories. The CLI maps these to exit codes:
/// input/validation problems exit with 2, size-cap refusals with 3.
enum class Errc {
  NegativeDemand,
  NegativeCost,
  ShapeMismatch,
  EmptyCoalition,
  MalformedLP,
  CapExceeded,
  InconsistentPlan,
  LengthMismatch,
  NotInCore,
  NotInSurplusCore,
  EmptyCore,
  BadInput,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace coopls
