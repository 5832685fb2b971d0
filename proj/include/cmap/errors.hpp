#pragma once

#include <stdexcept>
#include <string>

namespace cmap {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed configuration or out-of-range parameters.
struct ConfigError : Error {
  using Error::Error;
};

// Evaluation hit a singular locus (e.g. X^1 = 0 for a cubic model).
// `index` is the offending coordinate in 1-based labelling, 0 if unknown.
struct SingularEvaluation : Error {
  int index;
  explicit SingularEvaluation(const std::string& msg, int idx = 0)
      : Error(msg), index(idx) {}
};

struct DegeneratePoint : Error {
  using Error::Error;
};

// A point failed one of the positivity-domain verdicts; `verdict` names it.
struct OutsideDomain : Error {
  std::string verdict;
  explicit OutsideDomain(const std::string& which)
      : Error("point outside positivity domain: " + which), verdict(which) {}
};

struct PoleError : Error {
  using Error::Error;
};

struct OutsideCone : Error {
  using Error::Error;
};

struct NumericalError : Error {
  double residual;
  explicit NumericalError(const std::string& msg, double res = 0.0)
      : Error(msg), residual(res) {}
};

// An internal cross-check between two routes to the same quantity failed.
struct ConsistencyError : Error {
  using Error::Error;
};

struct ContourPlacement : Error {
  using Error::Error;
};

}  // namespace cmap
