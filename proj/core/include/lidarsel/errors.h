// Copyright 2026 The lidarsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LIDARSEL_ERRORS_H_
#define LIDARSEL_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lidarsel {

// Coarse failure classes. The CLI maps each one to a distinct exit code.
enum class ErrorKind {
  kParse,
  kValidation,
  kInfeasible,
  kNumeric,
  kInput,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorKind::kValidation, what) {}
};

// Exhaustive enumeration was requested beyond the player cap.
class EnumerationLimitError : public Error {
 public:
  EnumerationLimitError(int requested, int limit)
      : Error(ErrorKind::kValidation,
              "enumeration limit exceeded: " + std::to_string(requested) +
                  " players requested, at most " + std::to_string(limit) +
                  " supported"),
        requested_(requested),
        limit_(limit) {}

  int requested() const noexcept { return requested_; }
  int limit() const noexcept { return limit_; }

 private:
  int requested_;
  int limit_;
};

// Weighted least-squares system without a unique solution. `null_direction`
// holds the coefficient-space direction (intercept first, when present)
// along which the objective is flat.
class RankDeficiencyError : public Error {
 public:
  RankDeficiencyError(const std::string& what,
                      std::vector<double> null_direction)
      : Error(ErrorKind::kNumeric, what),
        null_direction_(std::move(null_direction)) {}

  const std::vector<double>& null_direction() const noexcept {
    return null_direction_;
  }

 private:
  std::vector<double> null_direction_;
};

// A selection constraint cannot be satisfied. `shortfall` is the number of
// lines still missing when the selection procedure gave up.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, int shortfall)
      : Error(ErrorKind::kInfeasible, what), shortfall_(shortfall) {}

  int shortfall() const noexcept { return shortfall_; }

 private:
  int shortfall_;
};

// Depth completion was asked to work from zero valid measurements.
class EmptyInputError : public Error {
 public:
  explicit EmptyInputError(const std::string& what)
      : Error(ErrorKind::kNumeric, what) {}
};

class ValidationError : public Error {
 public:
  ValidationError(const std::string& field, const std::string& what)
      : Error(ErrorKind::kValidation, field + ": " + what), field_(field) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& token, const std::string& what)
      : Error(ErrorKind::kParse, what + " (at '" + token + "')"),
        token_(token) {}

  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

// The characteristic function failed on a coalition. `coalition` is the
// member bit string, lowest line first.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& coalition, const std::string& what)
      : Error(ErrorKind::kNumeric,
              "evaluation failed on coalition " + coalition + ": " + what),
        coalition_(coalition) {}

  const std::string& coalition() const noexcept { return coalition_; }

 private:
  std::string coalition_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what)
      : Error(ErrorKind::kInput, what) {}
};

}  // namespace lidarsel

#endif  // LIDARSEL_ERRORS_H_
