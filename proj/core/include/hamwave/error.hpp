#pragma once

#include <stdexcept>
#include <string>

namespace hamwave {

enum class ErrorKind {
  Config,
  DegenerateParametrization,
  NotAGraph,
  Geometry,
  Solver,
  ChartViolation,
  Convergence,
  Io,
};

/// Single exception type for the library; `kind()` distinguishes the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Message carried by every not-a-graph failure; also the graph-chart halt reason.
inline constexpr const char* kOverturnedMessage = "overturned: not a graph";

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace hamwave
