/*
 * Copyright 2026 The icurisk Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef ICURISK_COMMON_ERROR_H_
#define ICURISK_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace icurisk {

enum class ErrorCode {
  kInvalidArgument,
  kData,
  kConfig,
  kIo,
  kLeakage,
  kNotFound,
};

// Base of every exception thrown by the library. The code drives CLI exit
// statuses and HTTP status mapping.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& message)
      : Error(ErrorCode::kInvalidArgument, message) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& message)
      : Error(ErrorCode::kData, message) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message)
      : Error(ErrorCode::kConfig, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ErrorCode::kIo, message) {}
};

// Raised when a fit-time step would see rows reserved for evaluation.
class LeakageError : public Error {
 public:
  explicit LeakageError(const std::string& message)
      : Error(ErrorCode::kLeakage, message) {}
};

class NotFoundError : public Error {
 public:
  explicit NotFoundError(const std::string& message)
      : Error(ErrorCode::kNotFound, message) {}
};

}  // namespace icurisk

#endif  // ICURISK_COMMON_ERROR_H_
