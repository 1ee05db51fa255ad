/*
   Copyright 2026 The nullstellensatz-lab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef NSLAB_ERRORS_HPP
#define NSLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nslab {

/// Failure categories surfaced by the library. Each maps 1:1 onto a
/// documented error condition of some operation.
enum class Err {
    NotPrime,
    Reducible,
    DivByZero,
    InfiniteField,
    ArityMismatch,
    EmptySubset,
    BudgetExceeded,
    PreconditionViolated,
    BadParams,
    NotFound,
    KTooLarge,
    TooManyValues,
    HypothesisUnmet,
    TheoremViolated,
    Infeasible,
    BadPartition,
    CorruptFile,
    Counterexample,
    ParseError,
};

const char* err_name(Err e);

class LabError : public std::runtime_error {
  public:
    LabError(Err code, const std::string& msg)
        : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}

    Err code() const noexcept { return code_; }

  private:
    Err code_;
};

[[noreturn]] inline void throw_err(Err code, const std::string& msg) { throw LabError(code, msg); }

}  // namespace nslab

#endif
