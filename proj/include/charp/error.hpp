#pragma once

#include <stdexcept>
#include <string>

namespace charp {

enum class Errc {
  Parse,
  UnknownVariable,
  RingMismatch,
  TableMismatch,
  DivisionByZero,
  Multivariate,
  Overflow,
  ResourceExceeded,
  UncoveredFactor,
  NonIntegral,
  NonMonogenic,
  ZeroTrace,
  NeedTestElement,
  Inconclusive,
  Unsupported,
  Domain,
  Internal,
};

/// All library failures are reported through this exception type; the
/// code distinguishes user errors (bad input) from resource exhaustion,
/// which the CLI maps to distinct exit codes.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void check(bool ok, Errc code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

}  // namespace charp
