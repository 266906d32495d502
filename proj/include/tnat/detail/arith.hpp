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

#ifndef TNAT_DETAIL_ARITH_HPP_
#define TNAT_DETAIL_ARITH_HPP_

#include <cstdint>  // for int64_t
#include <numeric>  // for gcd
#include <vector>   // for vector

#include "tnat/error.hpp"

namespace tnat {

  //! Every natural number, residue, coefficient and image value.
  using Int = std::int64_t;

  namespace detail {

    inline Int add(Int a, Int b) {
      Int r;
      if (__builtin_add_overflow(a, b, &r)) {
        throw OverflowError("integer overflow in addition");
      }
      return r;
    }

    inline Int sub(Int a, Int b) {
      Int r;
      if (__builtin_sub_overflow(a, b, &r)) {
        throw OverflowError("integer overflow in subtraction");
      }
      return r;
    }

    inline Int mul(Int a, Int b) {
      Int r;
      if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowError("integer overflow in multiplication");
      }
      return r;
    }

    // b > 0 in all of the following
    inline Int floor_div(Int a, Int b) {
      Int q = a / b;
      if ((a % b != 0) && (a < 0)) {
        --q;
      }
      return q;
    }

    inline Int ceil_div(Int a, Int b) {
      return -floor_div(-a, b);
    }

    inline Int mod(Int a, Int b) {
      Int r = a % b;
      return r < 0 ? r + b : r;
    }

    inline Int lcm(Int a, Int b) {
      return mul(a / std::gcd(a, b), b);
    }

    //! Smallest multiple of \p m that is >= \p n (n >= 0, m > 0).
    inline Int round_up(Int n, Int m) {
      return mul(ceil_div(n, m), m);
    }

    inline std::vector<Int> divisors(Int m) {
      std::vector<Int> small, large;
      for (Int d = 1; d * d <= m; ++d) {
        if (m % d == 0) {
          small.push_back(d);
          if (d != m / d) {
            large.push_back(m / d);
          }
        }
      }
      small.insert(small.end(), large.rbegin(), large.rend());
      return small;
    }

  }  // namespace detail
}  // namespace tnat

#endif  // TNAT_DETAIL_ARITH_HPP_
