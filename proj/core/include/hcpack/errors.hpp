#pragma once

#include <stdexcept>
#include <string>

namespace hcpack {

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
  int line;
};

// no s-t walk for some ordered pair
struct NotConnectedError : std::runtime_error {
  NotConnectedError(int s, int t)
      : std::runtime_error("no walk from " + std::to_string(s) + " to " + std::to_string(t)), s(s), t(t) {}
  int s, t;
};

struct BalanceError : std::runtime_error {
  BalanceError(int edge, const std::string& msg) : std::runtime_error(msg), edge(edge) {}
  int edge;
};

struct StuckWalkError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a named pipeline stage gave up
struct StageFailure : std::runtime_error {
  StageFailure(std::string stage, const std::string& msg)
      : std::runtime_error(stage + ": " + msg), stage(std::move(stage)) {}
  std::string stage;
};

}  // namespace hcpack
