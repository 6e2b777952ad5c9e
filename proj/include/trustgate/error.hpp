// Copyright 2026 The TrustGate Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trustgate {

enum class ErrorCode {
  kRange,
  kOverlap,
  kAccessDenied,
  kAllocation,
  kUnsupportedWidth,
  kMalformedStream,
  kUnderflow,
  kMalformedBlock,
  kMalformedMessage,
  kMissingPayload,
  kDegenerateCorpus,
  kModelFormat,
  kNotConnected,
  kConnect,
  kTransport,
  kBind,
  kParse,
  kUnbalancedTrace,
  kMismatchedExit,
  kUnknownTask,
  kUnknownFunction,
  kConfig,
  kIo,
};

std::string_view to_string(ErrorCode code);

/// Every module reports failures by throwing an Error tagged with the
/// condition that caused it; callers that care branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the leading code name.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace trustgate
