// Copyright 2026 The sgeq Authors.
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

#ifndef SGEQ_ERROR_HPP_
#define SGEQ_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace sgeq {

// Error taxonomy shared by the library and the command-line tool.
// The tool maps these onto process exit codes (see tools/).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration: bad window geometry, impossible quantizer setup,
// model/config disagreement. Exit code 2.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Invalid call arguments (empty signal, out-of-domain value, size mismatch).
// Exit code 3.
class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& msg) : Error(msg) {}
};

// Bad input data: unreadable corpus files, unsupported formats, training
// sets too small. Exit code 3.
class DataError : public Error {
 public:
  explicit DataError(const std::string& msg) : Error(msg) {}
};

// Malformed serialized stream or model file. The message names the field
// that failed validation. Exit code 4.
class CorruptStreamError : public Error {
 public:
  explicit CorruptStreamError(const std::string& msg) : Error(msg) {}
};

// Filesystem failure. Exit code 3.
class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace sgeq

#endif  // SGEQ_ERROR_HPP_
