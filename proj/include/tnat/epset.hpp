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

#ifndef TNAT_EPSET_HPP_
#define TNAT_EPSET_HPP_

#include <algorithm>  // for binary_search, lower_bound, sort, unique
#include <string>     // for string
#include <vector>     // for vector

#include "tnat/detail/arith.hpp"
#include "tnat/extnat.hpp"

namespace tnat {

  //! An eventually periodic subset of N.
  //!
  //! Membership of n is decided by the finite patch when n < threshold() and
  //! by the residue of n modulo modulus() otherwise. Residues are absolute
  //! (n mod m), not relative to the threshold.
  //!
  //! Every instance is kept in canonical form: the modulus is the least
  //! period of the tail and the threshold is the least value for which the
  //! patch is needed. Two sets are therefore equal iff their fields are.
  class EPSet {
   public:
    //! The empty set.
    EPSet() = default;

    //! Builds and canonicalizes. Throws InvalidArgument when modulus < 1,
    //! threshold < 0, a residue lies outside [0, modulus) or a patch element
    //! outside [0, threshold).
    static EPSet make(Int                threshold,
                      Int                modulus,
                      std::vector<Int>   residues,
                      std::vector<Int>   patch) {
      if (modulus < 1) {
        throw InvalidArgument("EPSet modulus must be >= 1");
      }
      if (threshold < 0) {
        throw InvalidArgument("EPSet threshold must be >= 0");
      }
      std::sort(residues.begin(), residues.end());
      residues.erase(std::unique(residues.begin(), residues.end()),
                     residues.end());
      std::sort(patch.begin(), patch.end());
      patch.erase(std::unique(patch.begin(), patch.end()), patch.end());
      for (Int r : residues) {
        if (r < 0 || r >= modulus) {
          throw InvalidArgument("EPSet residue " + std::to_string(r)
                                + " outside [0, " + std::to_string(modulus)
                                + ")");
        }
      }
      for (Int f : patch) {
        if (f < 0 || f >= threshold) {
          throw InvalidArgument("EPSet patch element " + std::to_string(f)
                                + " outside [0, " + std::to_string(threshold)
                                + ")");
        }
      }
      EPSet s;
      s._threshold = threshold;
      s._modulus   = modulus;
      s._residues  = std::move(residues);
      s._patch     = std::move(patch);
      s.canonicalize();
      return s;
    }

    static EPSet empty() {
      return EPSet();
    }

    static EPSet naturals() {
      return make(0, 1, {0}, {});
    }

    static EPSet finite(std::vector<Int> elements) {
      Int top = 0;
      for (Int x : elements) {
        if (x < 0) {
          throw InvalidArgument("EPSet elements must be nonnegative");
        }
        top = std::max(top, detail::add(x, 1));
      }
      return make(top, 1, {}, std::move(elements));
    }

    //! {start, start + step, start + 2 step, ...}
    static EPSet progression(Int start, Int step) {
      if (start < 0 || step < 1) {
        throw InvalidArgument("EPSet::progression needs start >= 0, step >= 1");
      }
      return make(start, step, {detail::mod(start, step)}, {});
    }

    //! {n >= from : n = residue mod modulus}
    static EPSet residue_class(Int from, Int modulus, Int residue) {
      return make(from, modulus, {detail::mod(residue, modulus)}, {});
    }

    //! [lo, hi)
    static EPSet interval(Int lo, Int hi) {
      std::vector<Int> xs;
      for (Int x = lo; x < hi; ++x) {
        xs.push_back(x);
      }
      return finite(std::move(xs));
    }

    Int threshold() const noexcept {
      return _threshold;
    }

    Int modulus() const noexcept {
      return _modulus;
    }

    std::vector<Int> const& residues() const noexcept {
      return _residues;
    }

    std::vector<Int> const& patch() const noexcept {
      return _patch;
    }

    bool contains(Int n) const {
      if (n < 0) {
        return false;
      }
      if (n < _threshold) {
        return std::binary_search(_patch.begin(), _patch.end(), n);
      }
      return in_tail(n);
    }

    //! Membership according to the periodic rule alone, ignoring the patch.
    bool in_tail(Int n) const {
      return std::binary_search(
          _residues.begin(), _residues.end(), detail::mod(n, _modulus));
    }

    bool is_finite() const noexcept {
      return _residues.empty();
    }

    bool is_empty() const noexcept {
      return _residues.empty() && _patch.empty();
    }

    ExtNat card() const {
      if (!_residues.empty()) {
        return ExtNat::inf();
      }
      return ExtNat::fin(static_cast<Int>(_patch.size()));
    }

    //! The k-th smallest member (k = 0 is the minimum).
    Int kth(Int k) const {
      if (k < 0) {
        throw InvalidArgument("EPSet::kth requires k >= 0");
      }
      Int const f = static_cast<Int>(_patch.size());
      if (k < f) {
        return _patch[k];
      }
      if (_residues.empty()) {
        throw IndexBeyondCardinality("index " + std::to_string(k)
                                     + " is beyond the cardinality "
                                     + std::to_string(f));
      }
      auto const first = first_period();
      Int const  r     = static_cast<Int>(first.size());
      Int const  kk    = k - f;
      return detail::add(first[kk % r], detail::mul(_modulus, kk / r));
    }

    //! |{s in S : s < x}|; for members this is the position used by kth.
    Int count_below(Int x) const {
      if (x <= _threshold) {
        return std::lower_bound(_patch.begin(), _patch.end(), std::max<Int>(x, 0))
               - _patch.begin();
      }
      Int const f = static_cast<Int>(_patch.size());
      if (_residues.empty()) {
        return f;
      }
      auto const first   = first_period();
      Int const  periods = (x - _threshold) / _modulus;
      Int        count   = detail::add(
          f, detail::mul(periods, static_cast<Int>(first.size())));
      Int const base = _threshold + periods * _modulus;
      for (Int t : first) {
        if (t - _threshold + base < x) {
          ++count;
        }
      }
      return count;
    }

    //! Least member; throws IndexBeyondCardinality when empty.
    Int min() const {
      return kth(0);
    }

    //! The tail members in [threshold, threshold + modulus), ascending.
    std::vector<Int> first_period() const {
      std::vector<Int> out;
      for (Int n = _threshold; n < _threshold + _modulus; ++n) {
        if (in_tail(n)) {
          out.push_back(n);
        }
      }
      return out;
    }

    //! All members below \p bound, ascending.
    std::vector<Int> members_below(Int bound) const {
      std::vector<Int> out;
      for (Int x : _patch) {
        if (x < bound) {
          out.push_back(x);
        }
      }
      if (!_residues.empty()) {
        for (Int n = _threshold; n < bound; ++n) {
          if (in_tail(n)) {
            out.push_back(n);
          }
        }
      }
      return out;
    }

    bool operator==(EPSet const&) const = default;

   private:
    void canonicalize() {
      // least period of the tail: some divisor of the current modulus
      std::vector<char> bits(static_cast<std::size_t>(_modulus), 0);
      for (Int r : _residues) {
        bits[r] = 1;
      }
      for (Int d : detail::divisors(_modulus)) {
        bool periodic = true;
        for (Int r = 0; r < _modulus && periodic; ++r) {
          periodic = bits[r] == bits[r % d];
        }
        if (periodic) {
          std::vector<Int> reduced;
          for (Int r = 0; r < d; ++r) {
            if (bits[r]) {
              reduced.push_back(r);
            }
          }
          _modulus  = d;
          _residues = std::move(reduced);
          break;
        }
      }
      // least threshold
      while (_threshold > 0) {
        Int const  n       = _threshold - 1;
        bool const patched = !_patch.empty() && _patch.back() == n;
        if (patched != in_tail(n)) {
          break;
        }
        if (patched) {
          _patch.pop_back();
        }
        --_threshold;
      }
    }

    Int              _threshold = 0;
    Int              _modulus   = 1;
    std::vector<Int> _residues;
    std::vector<Int> _patch;
  };

  enum class SetOp { Union, Intersect, Difference };

  //! Pointwise set operation. Tails are combined over the least common
  //! modulus, which is where the Chinese remainder theorem does its work: a
  //! residue class mod lcm(m, m') lies in both tails iff its reductions mod
  //! m and m' do.
  inline EPSet eps_combine(SetOp op, EPSet const& s, EPSet const& t) {
    auto apply = [op](bool x, bool y) {
      switch (op) {
        case SetOp::Union:
          return x || y;
        case SetOp::Intersect:
          return x && y;
        case SetOp::Difference:
        default:
          return x && !y;
      }
    };
    Int const        modulus   = detail::lcm(s.modulus(), t.modulus());
    Int const        threshold = std::max(s.threshold(), t.threshold());
    std::vector<Int> residues;
    for (Int r = 0; r < modulus; ++r) {
      if (apply(s.in_tail(r), t.in_tail(r))) {
        residues.push_back(r);
      }
    }
    std::vector<Int> patch;
    for (Int n = 0; n < threshold; ++n) {
      if (apply(s.contains(n), t.contains(n))) {
        patch.push_back(n);
      }
    }
    return EPSet::make(threshold, modulus, std::move(residues), std::move(patch));
  }

  inline EPSet eps_union(EPSet const& s, EPSet const& t) {
    return eps_combine(SetOp::Union, s, t);
  }

  inline EPSet eps_intersect(EPSet const& s, EPSet const& t) {
    return eps_combine(SetOp::Intersect, s, t);
  }

  inline EPSet eps_difference(EPSet const& s, EPSet const& t) {
    return eps_combine(SetOp::Difference, s, t);
  }

  inline EPSet complement(EPSet const& s) {
    return eps_difference(EPSet::naturals(), s);
  }

  inline ExtNat eps_card(EPSet const& s) {
    return s.card();
  }

  inline Int eps_kth(EPSet const& s, Int k) {
    return s.kth(k);
  }

}  // namespace tnat

#endif  // TNAT_EPSET_HPP_
