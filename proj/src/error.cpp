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

#include "trustgate/error.hpp"

namespace trustgate {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kRange: return "RangeError";
    case ErrorCode::kOverlap: return "OverlapError";
    case ErrorCode::kAccessDenied: return "AccessDenied";
    case ErrorCode::kAllocation: return "AllocationError";
    case ErrorCode::kUnsupportedWidth: return "UnsupportedWidth";
    case ErrorCode::kMalformedStream: return "MalformedStream";
    case ErrorCode::kUnderflow: return "Underflow";
    case ErrorCode::kMalformedBlock: return "MalformedBlock";
    case ErrorCode::kMalformedMessage: return "MalformedMessage";
    case ErrorCode::kMissingPayload: return "MissingPayload";
    case ErrorCode::kDegenerateCorpus: return "DegenerateCorpus";
    case ErrorCode::kModelFormat: return "ModelFormatError";
    case ErrorCode::kNotConnected: return "NotConnected";
    case ErrorCode::kConnect: return "ConnectError";
    case ErrorCode::kTransport: return "TransportError";
    case ErrorCode::kBind: return "BindError";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kUnbalancedTrace: return "UnbalancedTrace";
    case ErrorCode::kMismatchedExit: return "MismatchedExit";
    case ErrorCode::kUnknownTask: return "UnknownTask";
    case ErrorCode::kUnknownFunction: return "UnknownFunction";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kIo: return "IoError";
  }
  return "Error";
}

}  // namespace trustgate
