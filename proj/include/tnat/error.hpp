/*
 *   Copyright 2026 The tnat Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TNAT_ERROR_HPP_
#define TNAT_ERROR_HPP_

#include <cstddef>    // for size_t
#include <stdexcept>  // for runtime_error
#include <string>     // for string

namespace tnat {

  //! Base class of every exception thrown by tnat.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  //! A value violates a structural invariant of the type being built.
  class InvalidArgument : public Error {
   public:
    using Error::Error;
  };

  //! 64-bit arithmetic would overflow. All supported inputs stay far below
  //! 2^63, so hitting this means the input is out of the supported range.
  class OverflowError : public Error {
   public:
    using Error::Error;
  };

  class IndexBeyondCardinality : public Error {
   public:
    using Error::Error;
  };

  //! An input does not belong to the class a construction requires.
  class PreconditionViolation : public Error {
   public:
    using Error::Error;
  };

  //! The input has no infinite kernel class, so it is not a product of two
  //! maps with infinitely many infinite fibers.
  class NoInfiniteClass : public PreconditionViolation {
   public:
    using PreconditionViolation::PreconditionViolation;
  };

  //! The construction exists mathematically but the input term does not
  //! expose the structure (fiber enumeration, decidable K-membership) it needs.
  class UnsupportedStructure : public Error {
   public:
    using Error::Error;
  };

  class UniverseTooLarge : public Error {
   public:
    using Error::Error;
  };

  class CapTooLarge : public Error {
   public:
    using Error::Error;
  };

  //! The sequential H-construction exhausted every tie-break choice.
  class NoResult : public Error {
   public:
    using Error::Error;
  };

  class HypothesisViolation : public Error {
   public:
    HypothesisViolation(std::string which, std::string witness)
        : Error("hypothesis violated: " + which + " (witness " + witness
                + ")"),
          _which(std::move(which)),
          _witness(std::move(witness)) {}

    std::string const& which() const noexcept {
      return _which;
    }

    std::string const& witness() const noexcept {
      return _witness;
    }

   private:
    std::string _which;
    std::string _witness;
  };

  class ParseError : public Error {
   public:
    ParseError(std::size_t offset, std::string reason)
        : Error("parse error at byte " + std::to_string(offset) + ": "
                + reason),
          _offset(offset),
          _reason(std::move(reason)) {}

    std::size_t offset() const noexcept {
      return _offset;
    }

    std::string const& reason() const noexcept {
      return _reason;
    }

   private:
    std::size_t _offset;
    std::string _reason;
  };

}  // namespace tnat

#endif  // TNAT_ERROR_HPP_
