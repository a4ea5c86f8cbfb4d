/**
 * Copyright 2026 The symcov Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef SYMCOV_ERROR_HPP
#define SYMCOV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace symcov {

/// Malformed input: bad limits, non-finite values, broken CSV/JSON, violated
/// preconditions. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The request is well formed but statistically infeasible (too few usable
/// weights, excessive rejection in a sampler). The CLI maps this to exit 3.
class InfeasibleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void fail_input(const std::string& what) {
  throw InputError(what);
}

[[noreturn]] inline void fail_infeasible(const std::string& what) {
  throw InfeasibleError(what);
}

} // namespace detail
} // namespace symcov

#endif // SYMCOV_ERROR_HPP
