#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mimicnet {

// Root of every error thrown by the library. The CLI maps these to exit
// status 1; UsageError is the only one that maps to 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::string token, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what + " near '" + token + "'"),
        line_(line),
        token_(std::move(token)) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::size_t line_;
  std::string token_;
};

class CycleError : public Error {
 public:
  explicit CycleError(std::vector<std::string> cycle)
      : Error("combinational cycle through " + join(cycle)), cycle_(std::move(cycle)) {}
  const std::vector<std::string>& cycle() const noexcept { return cycle_; }

 private:
  static std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
      if (!out.empty()) out += " -> ";
      out += n;
    }
    return out;
  }
  std::vector<std::string> cycle_;
};

#define MIMICNET_SIMPLE_ERROR(Name)      \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  };

MIMICNET_SIMPLE_ERROR(ArityError)
MIMICNET_SIMPLE_ERROR(DanglingRef)
MIMICNET_SIMPLE_ERROR(MissingInput)
MIMICNET_SIMPLE_ERROR(UnknownNode)
MIMICNET_SIMPLE_ERROR(InvalidRole)
MIMICNET_SIMPLE_ERROR(DummyDrivesOutput)
MIMICNET_SIMPLE_ERROR(UnknownSBox)
MIMICNET_SIMPLE_ERROR(TooManyInputs)
MIMICNET_SIMPLE_ERROR(PreconditionError)
MIMICNET_SIMPLE_ERROR(ShapeError)
MIMICNET_SIMPLE_ERROR(UnmatchedPredecessor)
MIMICNET_SIMPLE_ERROR(UnrealizableMatch)
MIMICNET_SIMPLE_ERROR(InconsistentMatching)
MIMICNET_SIMPLE_ERROR(RoleConflict)
MIMICNET_SIMPLE_ERROR(IoMapError)
MIMICNET_SIMPLE_ERROR(IndexError)
MIMICNET_SIMPLE_ERROR(WidthMismatch)
MIMICNET_SIMPLE_ERROR(RangeError)
MIMICNET_SIMPLE_ERROR(EmptyClass)
MIMICNET_SIMPLE_ERROR(DimensionMismatch)
MIMICNET_SIMPLE_ERROR(ConfigError)
MIMICNET_SIMPLE_ERROR(UsageError)

#undef MIMICNET_SIMPLE_ERROR

class LayerOverfull : public Error {
 public:
  LayerOverfull(std::size_t level, std::size_t functional, std::size_t appearance)
      : Error("layer " + std::to_string(level) + " overfull: " + std::to_string(functional) +
              " functional nodes vs " + std::to_string(appearance) + " appearance nodes"),
        level_(level) {}
  std::size_t level() const noexcept { return level_; }

 private:
  std::size_t level_;
};

class Infeasible : public Error {
 public:
  Infeasible(std::size_t level, std::size_t deficit)
      : Error("cannot pad layer " + std::to_string(level) + ": " + std::to_string(deficit) +
              " node(s) over capacity"),
        level_(level),
        deficit_(deficit) {}
  std::size_t level() const noexcept { return level_; }
  std::size_t deficit() const noexcept { return deficit_; }

 private:
  std::size_t level_;
  std::size_t deficit_;
};

}  // namespace mimicnet
