// Copyright 2026 The patrolnet Authors
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

#ifndef PATROLNET_ERRORS_HPP
#define PATROLNET_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace patrolnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based; 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line), detail_(what) {}
  std::size_t line() const { return line_; }
  /// The message without the line prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

/// A query outside the span a trajectory covers.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Caller-supplied parameters violate a documented bound.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Clustering could not keep the discard fraction under trash_max even at
/// the largest permitted radius.
class InfeasibleAnonymity : public Error {
 public:
  InfeasibleAnonymity(const std::string& what, double trash_fraction)
      : Error(what), trash_fraction_(trash_fraction) {}
  double trash_fraction() const { return trash_fraction_; }

 private:
  double trash_fraction_;
};

class InsufficientShares : public Error {
 public:
  using Error::Error;
};

class MalformedShares : public Error {
 public:
  using Error::Error;
};

class TopologyError : public Error {
 public:
  using Error::Error;
};

class InjectionError : public Error {
 public:
  using Error::Error;
};

/// A report was submitted to a zone it does not belong to.
class ForeignZoneError : public Error {
 public:
  using Error::Error;
};

/// The repository file could not be written; in-memory state is unchanged.
class PersistenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace patrolnet

#endif  // PATROLNET_ERRORS_HPP
