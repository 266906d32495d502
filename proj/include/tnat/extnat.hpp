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

#ifndef TNAT_EXTNAT_HPP_
#define TNAT_EXTNAT_HPP_

#include <compare>  // for strong_ordering
#include <ostream>  // for ostream
#include <string>   // for string

#include "tnat/detail/arith.hpp"

namespace tnat {

  //! An element of N u {aleph_0}: the value domain of defect, collapse,
  //! infinite contractive index and rank.
  class ExtNat {
   public:
    constexpr ExtNat() noexcept = default;

    static ExtNat fin(Int n) {
      if (n < 0) {
        throw InvalidArgument("ExtNat::fin requires n >= 0, got "
                              + std::to_string(n));
      }
      ExtNat x;
      x._value = n;
      return x;
    }

    static constexpr ExtNat inf() noexcept {
      ExtNat x;
      x._inf = true;
      return x;
    }

    constexpr bool is_finite() const noexcept {
      return !_inf;
    }

    constexpr bool is_inf() const noexcept {
      return _inf;
    }

    Int value() const {
      if (_inf) {
        throw InvalidArgument("ExtNat::value called on aleph_0");
      }
      return _value;
    }

    constexpr std::strong_ordering operator<=>(ExtNat const& that) const
        noexcept {
      if (_inf || that._inf) {
        return _inf <=> that._inf;
      }
      return _value <=> that._value;
    }

    constexpr bool operator==(ExtNat const&) const noexcept = default;

    std::string to_string() const {
      return _inf ? std::string("inf") : std::to_string(_value);
    }

   private:
    bool _inf   = false;
    Int  _value = 0;
  };

  inline ExtNat operator+(ExtNat a, ExtNat b) {
    if (a.is_inf() || b.is_inf()) {
      return ExtNat::inf();
    }
    return ExtNat::fin(detail::add(a.value(), b.value()));
  }

  inline ExtNat ext_add(ExtNat a, ExtNat b) {
    return a + b;
  }

  inline ExtNat ext_min(ExtNat a, ExtNat b) {
    return a < b ? a : b;
  }

  inline ExtNat ext_max(ExtNat a, ExtNat b) {
    return a < b ? b : a;
  }

  inline std::ostream& operator<<(std::ostream& os, ExtNat const& x) {
    return os << x.to_string();
  }

}  // namespace tnat

#endif  // TNAT_EXTNAT_HPP_
