// Copyright 2026 The TIC Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TIC_ERRORS_HPP_
#define TIC_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace tic {

// Root of every error raised by the library. `kind()` is a stable,
// machine-readable name used in reports and CLI output.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define TIC_DEFINE_ERROR(Name)                                 \
  class Name : public Error {                                  \
   public:                                                     \
    explicit Name(const std::string& message)                  \
        : Error(#Name, message) {}                             \
                                                               \
   protected:                                                  \
    Name(std::string kind, const std::string& message)         \
        : Error(std::move(kind), message) {}                   \
  };

// ir-core
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, std::string expected,
              const std::string& detail = {});

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

class UnsafeRule : public Error {
 public:
  UnsafeRule(std::size_t line, std::string variable);

  std::size_t line() const { return line_; }
  const std::string& variable() const { return variable_; }

 private:
  std::size_t line_;
  std::string variable_;
};

// inference
TIC_DEFINE_ERROR(Unstratifiable)
TIC_DEFINE_ERROR(MapArityMismatch)
TIC_DEFINE_ERROR(BuiltinError)

class CardinalityViolation : public Error {
 public:
  CardinalityViolation(std::string type, std::size_t named,
                       std::size_t required);

  const std::string& type() const { return type_; }
  std::size_t named() const { return named_; }
  std::size_t required() const { return required_; }

 private:
  std::string type_;
  std::size_t named_;
  std::size_t required_;
};

class BuiltinArity : public BuiltinError {
 public:
  explicit BuiltinArity(const std::string& message)
      : BuiltinError("BuiltinArity", message) {}
};

class NonGroundBuiltin : public BuiltinError {
 public:
  explicit NonGroundBuiltin(const std::string& message)
      : BuiltinError("NonGroundBuiltin", message) {}
};

// domain-packs
TIC_DEFINE_ERROR(MissingFile)
TIC_DEFINE_ERROR(PackError)

// pddl
TIC_DEFINE_ERROR(SExprError)
TIC_DEFINE_ERROR(UndeclaredObject)
TIC_DEFINE_ERROR(EmptyGoal)
TIC_DEFINE_ERROR(TypeConflict)
TIC_DEFINE_ERROR(CompileError)

// equivalence
TIC_DEFINE_ERROR(DomainMismatch)
TIC_DEFINE_ERROR(SearchSpaceTooLarge)

// translate
TIC_DEFINE_ERROR(MissingExample)
TIC_DEFINE_ERROR(MissingUpstream)
TIC_DEFINE_ERROR(CassetteMiss)
TIC_DEFINE_ERROR(UnparseableMap)
TIC_DEFINE_ERROR(ConfigError)

class ProviderError : public Error {
 public:
  ProviderError(int status, std::string body);

  int status() const { return status_; }
  const std::string& body() const { return body_; }

 private:
  int status_;
  std::string body_;
};

// Wraps an error raised inside a named pipeline or translation stage.
class StageError : public Error {
 public:
  StageError(std::string stage, std::string cause_kind,
             const std::string& message);

  const std::string& stage() const { return stage_; }
  const std::string& cause_kind() const { return cause_kind_; }

 private:
  std::string stage_;
  std::string cause_kind_;
};

// cli-harness
TIC_DEFINE_ERROR(DatasetLayoutError)
TIC_DEFINE_ERROR(PlannerTimeout)
TIC_DEFINE_ERROR(PlannerError)

class PlannerNonzeroExit : public Error {
 public:
  PlannerNonzeroExit(int exit_code, std::string output);

  int exit_code() const { return exit_code_; }
  const std::string& output() const { return output_; }

 private:
  int exit_code_;
  std::string output_;
};

#undef TIC_DEFINE_ERROR

}  // namespace tic

#endif  // TIC_ERRORS_HPP_
