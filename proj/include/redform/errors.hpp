#ifndef REDFORM_ERRORS_HPP
#define REDFORM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace redform {

// Error taxonomy. Everything derives from Error so callers can catch the
// whole family; the CLI maps the subclasses onto distinct exit codes.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// exact-series
struct ZeroSeries : Error {
  explicit ZeroSeries(const std::string& m = "inverse of zero series") : Error(m) {}
};
struct PrecisionExceeded : Error {
  explicit PrecisionExceeded(const std::string& m) : Error(m) {}
};

// space / integrality
struct InsufficientPrecision : Error {
  explicit InsufficientPrecision(const std::string& m) : Error(m) {}
};
struct NotWeaklyHolomorphicHypothesis : Error {
  explicit NotWeaklyHolomorphicHypothesis(const std::string& m) : Error(m) {}
};

// reduced-basis
struct PoolDeficient : Error {
  explicit PoolDeficient(const std::string& m) : Error(m) {}
};
struct NonexistentForm : Error {
  explicit NonexistentForm(const std::string& m) : Error(m) {}
};
struct UnsupportedExponent : Error {
  explicit UnsupportedExponent(const std::string& m) : Error(m) {}
};

// hecke / theorems
struct BadPrime : Error {
  explicit BadPrime(const std::string& m) : Error(m) {}
};
struct HypothesisViolated : Error {
  explicit HypothesisViolated(const std::string& m) : Error(m) {}
};
struct HypothesisUnverified : Error {
  explicit HypothesisUnverified(const std::string& m) : Error(m) {}
};

struct UsageError : Error {
  explicit UsageError(const std::string& m) : Error(m) {}
};

}  // namespace redform

#endif
