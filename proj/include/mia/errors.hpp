// Copyright 2026 The mia-llr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MIA_ERRORS_HPP
#define MIA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mia {

/* All library failures derive from Error so callers can catch one type at
   the CLI boundary and still dispatch on the concrete class in tests. */
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* A value lies outside its statistic's domain, or an input is non-finite. */
class DomainError : public Error {
 public:
  using Error::Error;
};

/* Malformed input text: bad header, wrong field count, unparseable number.
   Message carries the 1-based line number. */
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/* Points disagree on their shadow count, or a duplicate/missing record. */
class RaggedRecordError : public Error {
 public:
  using Error::Error;
};

/* Too few samples for the requested estimator. */
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/* Samples carry no usable variation (e.g. all equal where spread is needed). */
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

/* An iterative solver failed to converge or produced a non-finite value. */
class NumericalError : public Error {
 public:
  using Error::Error;
};

/* Parameters violate a documented constraint of the chosen formula. */
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/* Incompatible method/option/statistic-kind combination. */
class ConfigError : public Error {
 public:
  using Error::Error;
};

/* A per-point class (IN or OUT) required by the scorer is empty. */
class MissingClassError : public Error {
 public:
  MissingClassError(const std::string& msg, std::string point_id)
      : Error(msg + " [point_id=" + point_id + "]"),
        point_id_(std::move(point_id)) {}
  const std::string& point_id() const { return point_id_; }

 private:
  std::string point_id_;
};

/* Lookup by an unknown key (e.g. point_id absent from a truth table). */
class KeyError : public Error {
 public:
  using Error::Error;
};

}  // namespace mia

#endif  // MIA_ERRORS_HPP
