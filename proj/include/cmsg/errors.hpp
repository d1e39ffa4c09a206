// Copyright 2026 The cmsg Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cmsg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  // Short machine-readable tag stored in run records.
  virtual const char* kind() const noexcept { return "error"; }
};

class IoError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "io"; }
};

class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }
  const char* kind() const noexcept override { return "parse"; }

 private:
  std::string file_;
  std::size_t line_;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_input"; }
};

/// Transport failure or an error body returned by a model service.
class BackendError : public Error {
 public:
  BackendError(const std::string& what, int attempts = 1)
      : Error(what), attempts_(attempts) {}
  int attempts() const noexcept { return attempts_; }
  const char* kind() const noexcept override { return "backend"; }

 private:
  int attempts_;
};

/// A response that does not satisfy the service schema. Never retried.
class ProtocolError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "protocol"; }
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "degenerate_input"; }
};

class GenerationFailed : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "generation_failed"; }
};

class ConsequenceUnavailable : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "consequence_unavailable"; }
};

}  // namespace cmsg
