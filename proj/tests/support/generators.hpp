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

// Seeded random terms for the property tests and the acceptance suite.

#ifndef TNAT_TESTS_GENERATORS_HPP_
#define TNAT_TESTS_GENERATORS_HPP_

#include <algorithm>
#include <random>
#include <vector>

#include "tnat/tnat.hpp"

namespace tnat::testing {

  class Generator {
   public:
    explicit Generator(std::uint64_t seed) : _rng(seed) {}

    Int uniform(Int lo, Int hi) {
      return std::uniform_int_distribution<Int>(lo, hi)(_rng);
    }

    bool chance(double p) {
      return std::bernoulli_distribution(p)(_rng);
    }

    // m <= 3, N <= 2m, patch values below N, affine slopes <= 3 and offsets
    // in [-2, 5], so every collision involving the patch happens below
    // 10 N m.
    RcaMap rca(double const_tail_probability = 0.25) {
      Int const             m  = uniform(1, 3);
      Int const             q0 = uniform(0, 2);
      Int const             N  = m * q0;
      std::vector<Int>      patch;
      for (Int n = 0; n < N; ++n) {
        patch.push_back(uniform(0, N - 1));
      }
      std::vector<TailRule> tails;
      for (Int r = 0; r < m; ++r) {
        if (chance(const_tail_probability)) {
          tails.push_back(TailRule::constant(uniform(0, 5)));
        } else {
          Int const a = uniform(1, 3);
          tails.push_back(TailRule::affine(a, std::max(uniform(-2, 5), -a * q0)));
        }
      }
      return RcaMap(N, m, std::move(patch), std::move(tails));
    }

    // Injective, non-surjective Rca maps n -> a n + b with a >= 2 or b >= 1.
    RcaMap injective() {
      Int const a = uniform(1, 3);
      Int const b = a == 1 ? uniform(1, 4) : uniform(0, 4);
      return RcaMap::affine(a, b);
    }

    // A term of depth <= depth with at most one ColEmbed leaf, which keeps
    // every value on [0, 10^4) far below 2^63.
    Term term(int depth) {
      bool embed_used = false;
      return term(depth, embed_used);
    }

    // A term with at least one ColProj leaf.
    Term term_with_colproj(int depth) {
      bool embed_used = false;
      Term t          = term(depth, embed_used);
      return chance(0.5) ? compose(Term::colproj(), t) : compose(t, Term::colproj());
    }

   private:
    Term term(int depth, bool& embed_used) {
      if (depth == 0 || chance(0.35)) {
        Int const roll = uniform(0, 9);
        if (roll == 0) {
          return Term::colproj();
        }
        if (roll == 1 && !embed_used) {
          embed_used = true;
          return Term::colembed();
        }
        return Term::rca(rca());
      }
      Term first = term(depth - 1, embed_used);
      return compose(std::move(first), term(depth - 1, embed_used));
    }

    std::mt19937_64 _rng;
  };

  inline Term succ() {
    return Term::rca(RcaMap::affine(1, 1));
  }
  inline Term dbl() {
    return Term::rca(RcaMap::affine(2, 0));
  }
  inline Term half() {
    return Term::rca(RcaMap(0, 2, {}, {TailRule::affine(1, 0), TailRule::affine(1, 0)}));
  }
  inline Term pred() {
    return Term::rca(RcaMap(1, 1, {0}, {TailRule::affine(1, -1)}));
  }
  inline Term cst0() {
    return Term::rca(RcaMap::constant(0));
  }
  inline Term mix() {
    return Term::rca(RcaMap(0, 2, {}, {TailRule::constant(5), TailRule::affine(1, 0)}));
  }
  inline Term identity() {
    return Term::rca(RcaMap::identity());
  }

}  // namespace tnat::testing

#endif  // TNAT_TESTS_GENERATORS_HPP_
