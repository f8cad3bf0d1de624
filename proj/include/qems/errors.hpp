// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qems {

/// Base class for all qems errors. `kind()` is the machine-readable class
/// that the CLI maps to exit codes (config/parameter/model -> 2,
/// solver -> 3, regime/truncation -> 4).
class Error : public std::runtime_error {
 public:
  enum class Kind { config, parameter, model, solver, regime, truncation };

  Error(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }
  const char* kind_name() const {
    switch (kind_) {
      case Kind::config: return "config";
      case Kind::parameter: return "parameter";
      case Kind::model: return "model";
      case Kind::solver: return "solver";
      case Kind::regime: return "regime";
      case Kind::truncation: return "truncation";
    }
    return "unknown";
  }
  int exit_code() const {
    switch (kind_) {
      case Kind::config:
      case Kind::parameter:
      case Kind::model: return 2;
      case Kind::solver: return 3;
      case Kind::regime:
      case Kind::truncation: return 4;
    }
    return 1;
  }

 private:
  Kind kind_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& m) : Error(Kind::config, m) {}
};
struct ParameterError : Error {
  explicit ParameterError(const std::string& m) : Error(Kind::parameter, m) {}
};
struct ModelError : Error {
  explicit ModelError(const std::string& m) : Error(Kind::model, m) {}
};
struct SolverError : Error {
  explicit SolverError(const std::string& m) : Error(Kind::solver, m) {}
};
struct RegimeError : Error {
  explicit RegimeError(const std::string& m) : Error(Kind::regime, m) {}
};
struct TruncationError : Error {
  explicit TruncationError(const std::string& m) : Error(Kind::truncation, m) {}
};

/// Non-fatal diagnostics accumulated by operations that can proceed under
/// violated soft assumptions. Pass nullptr to ignore.
struct Warnings {
  std::vector<std::string> messages;
  void add(std::string msg) { messages.push_back(std::move(msg)); }
  bool empty() const { return messages.empty(); }
};

inline void warn(Warnings* w, std::string msg) {
  if (w) w->add(std::move(msg));
}

}  // namespace qems
