// Copyright 2026 The Spacetime-GR Authors.
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

#ifndef STGR_COMMON_ERROR_H_
#define STGR_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace stgr {

// Process exit codes shared by the CLI and the service.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitData = 3,
  kExitNumeric = 4,
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual int exit_code() const { return kExitData; }
};

// Bad flags, bad config keys, invalid plans.
class UsageError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return kExitUsage; }
};

// Malformed or inconsistent inputs: files, records, catalog references.
class DataError : public Error {
 public:
  using Error::Error;
};

// Lookup failure in the hierarchical index.
class LookupError : public DataError {
 public:
  enum class Kind { kUnknownPoi, kBadBlock, kBadInner };
  LookupError(Kind kind, const std::string& what)
      : DataError(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// NaN/Inf produced anywhere in the numeric core.
class NumericError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return kExitNumeric; }
};

}  // namespace stgr

#endif  // STGR_COMMON_ERROR_H_
