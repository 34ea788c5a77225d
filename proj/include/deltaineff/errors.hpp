#pragma once

#include <stdexcept>
#include <string>

namespace deltaineff {

/// Invalid configuration or parameters (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Request outside the modeled physical regime (CLI exit code 3).
class DomainRejection : public std::runtime_error {
 public:
  explicit DomainRejection(const std::string& msg) : std::runtime_error(msg) {}
};

/// Attractive contact coupling in D >= 2: Hamiltonian unbounded below.
class CollapseError : public DomainRejection {
 public:
  explicit CollapseError(const std::string& msg) : DomainRejection(msg) {}
};

/// Solver failure: bad bracket, pole hit, branch out of regime (exit code 4).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

class PoleError : public NumericalError {
 public:
  explicit PoleError(const std::string& msg) : NumericalError(msg) {}
};

class BracketError : public NumericalError {
 public:
  explicit BracketError(const std::string& msg) : NumericalError(msg) {}
};

class BranchError : public NumericalError {
 public:
  explicit BranchError(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace deltaineff
