/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace sqh {

enum class Errc {
  NonPrime,
  ReducibleModulus,
  SizeOverflow,
  DivisionByZero,
  NonDivisor,
  EvenCharacteristic,
  ZeroInput,
  ContextMismatch,
  BadRepresentatives,
  ZeroA,
  NotHomogeneous,
  ZeroVector,
  MethodDisagreement,
  SigmaIdentity,
  DegreeOverflow,
  UnsupportedExponent,
  ZeroDivisors,
  SizeGuardrail,
  NotASemifield,
  NonFieldSolutionSpace,
  ExhaustedCoset,
  IdentityFailure,
  NotBB,
  BadEncoding,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool cond, Errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace sqh
