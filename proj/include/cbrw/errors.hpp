// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#ifndef CBRW_ERRORS_HPP
#define CBRW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cbrw {

enum class ErrorCode {
  invalid_argument,  // bad configuration or parameter
  domain,            // input outside the mathematical domain
  parse,             // malformed law / displacement / config spec
  budget,            // node, particle or trial budget exceeded
  truncation,        // tail bound not certifiable at the requested tolerance
  integrity,         // internal consistency or anchor check failed
  unavailable,       // requested route has no exact form and no fallback enabled
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cbrw

#endif
