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

#ifndef TNAT_PAIRING_HPP_
#define TNAT_PAIRING_HPP_

#include <cmath>    // for sqrt
#include <utility>  // for pair

#include "tnat/detail/arith.hpp"

namespace tnat {

  //! The Cantor pairing pi(i, j) = (i + j)(i + j + 1) / 2 + j.
  inline Int pair(Int i, Int j) {
    Int const s = detail::add(i, j);
    return detail::add(detail::mul(s, s + 1) / 2, j);
  }

  //! Inverse of pair: returns (i, j) with pair(i, j) = n.
  inline std::pair<Int, Int> unpair(Int n) {
    // w = floor((sqrt(8n + 1) - 1) / 2), corrected for rounding
    Int w = static_cast<Int>((std::sqrt(8.0 * static_cast<double>(n) + 1.0) - 1.0) / 2.0);
    while (w * (w + 1) / 2 > n) {
      --w;
    }
    while ((w + 1) * (w + 2) / 2 <= n) {
      ++w;
    }
    Int const j = n - w * (w + 1) / 2;
    return {w - j, j};
  }

  //! The column of n, i.e. the first coordinate of unpair(n).
  inline Int column_of(Int n) {
    return unpair(n).first;
  }

}  // namespace tnat

#endif  // TNAT_PAIRING_HPP_
