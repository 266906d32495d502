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

#ifndef TNAT_TRANSVERSAL_HPP_
#define TNAT_TRANSVERSAL_HPP_

#include <algorithm>  // for sort, unique, includes, set_union, binary_search
#include <bit>        // for popcount, countr_zero
#include <cstdint>    // for uint32_t
#include <optional>   // for optional
#include <string>     // for string, to_string
#include <vector>     // for vector

#include "tnat/detail/arith.hpp"
#include "tnat/error.hpp"

namespace tnat {

  //! A finite set of element ids, kept sorted and duplicate free.
  using ElementSet = std::vector<Int>;

  inline ElementSet make_set(std::vector<Int> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    return elements;
  }

  //! Size first, then lexicographic.
  inline bool canonical_less(ElementSet const& x, ElementSet const& y) {
    if (x.size() != y.size()) {
      return x.size() < y.size();
    }
    return x < y;
  }

  //! An ordered list of non-empty finite sets over a finite universe. The
  //! order matters to construct_h and to nothing else.
  class SetFamily {
   public:
    SetFamily() = default;

    explicit SetFamily(std::vector<ElementSet> members) {
      ElementSet all;
      for (auto& m : members) {
        m = make_set(std::move(m));
        all.insert(all.end(), m.begin(), m.end());
      }
      _universe = make_set(std::move(all));
      _members  = std::move(members);
      validate();
    }

    SetFamily(ElementSet universe, std::vector<ElementSet> members)
        : _universe(make_set(std::move(universe))) {
      for (auto& m : members) {
        m = make_set(std::move(m));
      }
      _members = std::move(members);
      validate();
    }

    ElementSet const& universe() const noexcept {
      return _universe;
    }

    std::vector<ElementSet> const& members() const noexcept {
      return _members;
    }

    std::size_t size() const noexcept {
      return _members.size();
    }

   private:
    void validate() const {
      for (auto const& m : _members) {
        if (m.empty()) {
          throw InvalidArgument("family members must be non-empty");
        }
        if (!std::includes(_universe.begin(), _universe.end(), m.begin(), m.end())) {
          throw InvalidArgument("family member outside the universe");
        }
      }
    }

    ElementSet              _universe;
    std::vector<ElementSet> _members;
  };

  namespace detail {
    inline bool meets(ElementSet const& x, ElementSet const& y) {
      auto i = x.begin();
      auto j = y.begin();
      while (i != x.end() && j != y.end()) {
        if (*i == *j) {
          return true;
        }
        *i < *j ? ++i : ++j;
      }
      return false;
    }

    inline bool contains(ElementSet const& s, Int x) {
      return std::binary_search(s.begin(), s.end(), x);
    }
  }  // namespace detail

  //! True iff H lies in the union of M, meets every member, and every
  //! element of H is the only element of H in some member.
  inline bool is_in_j(ElementSet const& H, SetFamily const& M) {
    ElementSet const h = make_set(H);
    ElementSet       all;
    for (auto const& m : M.members()) {
      all.insert(all.end(), m.begin(), m.end());
    }
    all = make_set(std::move(all));
    if (!std::includes(all.begin(), all.end(), h.begin(), h.end())) {
      return false;
    }
    ElementSet unique_hits;
    for (auto const& m : M.members()) {
      std::optional<Int> hit;
      std::size_t        count = 0;
      for (Int x : m) {
        if (detail::contains(h, x)) {
          hit = x;
          ++count;
        }
      }
      if (count == 0) {
        return false;
      }
      if (count == 1) {
        unique_hits.push_back(*hit);
      }
    }
    return make_set(std::move(unique_hits)) == h;
  }

  //! Largest universe enumerate_j scans exhaustively, after forced elements
  //! (those forming a singleton member) have been split off.
  inline constexpr std::size_t max_enumeration_universe = 20;

  //! All H with is_in_j(H, M), sorted by size then lexicographically.
  //!
  //! Elements forming a singleton member belong to every such H; they are
  //! taken out first and the remaining universe (the union of the members
  //! they miss) is scanned subset by subset.
  inline std::vector<ElementSet> enumerate_j(SetFamily const& M) {
    ElementSet forced;
    for (auto const& m : M.members()) {
      if (m.size() == 1) {
        forced.push_back(m.front());
      }
    }
    forced = make_set(std::move(forced));

    std::vector<ElementSet> rest;
    ElementSet              residual;
    for (auto const& m : M.members()) {
      if (!detail::meets(m, forced)) {
        rest.push_back(m);
        residual.insert(residual.end(), m.begin(), m.end());
      }
    }
    residual = make_set(std::move(residual));
    if (residual.size() > max_enumeration_universe) {
      throw UniverseTooLarge("universe of " + std::to_string(residual.size())
                             + " elements left after removing forced elements"
                               ", the limit is "
                             + std::to_string(max_enumeration_universe));
    }

    std::vector<std::uint32_t> masks;
    for (auto const& m : rest) {
      std::uint32_t mask = 0;
      for (Int x : m) {
        auto at = std::lower_bound(residual.begin(), residual.end(), x);
        mask |= std::uint32_t(1) << (at - residual.begin());
      }
      masks.push_back(mask);
    }
    std::uint32_t const     limit = std::uint32_t(1) << residual.size();
    std::vector<ElementSet> out;
    for (std::uint32_t h = 0; h < limit; ++h) {
      std::uint32_t unique = 0;
      bool          hits   = true;
      for (auto m : masks) {
        std::uint32_t const common = m & h;
        if (common == 0) {
          hits = false;
          break;
        }
        if (std::popcount(common) == 1) {
          unique |= common;
        }
      }
      if (!hits || unique != h) {
        continue;
      }
      ElementSet H = forced;
      for (std::uint32_t bits = h; bits != 0; bits &= bits - 1) {
        H.push_back(residual[static_cast<std::size_t>(std::countr_zero(bits))]);
      }
      out.push_back(make_set(std::move(H)));
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
  }

  //! The members of enumerate_j(M) disjoint from \p avoid.
  inline std::vector<ElementSet> filter_h(SetFamily const& M, ElementSet const& avoid) {
    ElementSet const        w = make_set(avoid);
    std::vector<ElementSet> out;
    for (auto& H : enumerate_j(M)) {
      if (!detail::meets(H, w)) {
        out.push_back(std::move(H));
      }
    }
    return out;
  }

  namespace detail {
    struct HState {
      ElementSet H;
      ElementSet closed;  // elements that may no longer be added
    };

    inline bool subset_minus(ElementSet const& x,
                             ElementSet const& minus,
                             ElementSet const& of) {
      for (Int e : x) {
        if (!contains(minus, e) && !contains(of, e)) {
          return false;
        }
      }
      return true;
    }

    inline std::optional<ElementSet> construct_from(SetFamily const& M,
                                                    std::size_t      i,
                                                    HState const&    state) {
      auto const& A = M.members();
      if (i == A.size()) {
        return is_in_j(state.H, M) ? std::optional<ElementSet>(state.H)
                                   : std::nullopt;
      }
      if (meets(A[i], state.H)) {
        return construct_from(M, i + 1, state);
      }
      for (std::size_t j = i + 1; j < A.size(); ++j) {
        if (subset_minus(A[j], state.closed, A[i])) {
          return construct_from(M, i + 1, state);
        }
      }
      for (Int a : A[i]) {
        if (contains(state.closed, a)) {
          continue;
        }
        HState next = state;
        next.H.insert(std::upper_bound(next.H.begin(), next.H.end(), a), a);
        next.closed.insert(next.closed.end(), A[i].begin(), A[i].end());
        next.closed = make_set(std::move(next.closed));
        next.closed.erase(std::lower_bound(next.closed.begin(), next.closed.end(), a));
        if (auto found = construct_from(M, i + 1, next)) {
          return found;
        }
      }
      return std::nullopt;
    }
  }  // namespace detail

  //! The sequential construction over the members in order. Member A_i is
  //! skipped when H already meets it, or when some later A_j satisfies
  //! A_j \ closed within A_i; otherwise the smallest a in A_i \ closed is
  //! added to H and closed becomes (closed + A_i) - {a}. Dead ends and final
  //! results failing is_in_j backtrack to the next choice of a. Throws
  //! NoResult when every choice fails.
  inline ElementSet construct_h(SetFamily const& M) {
    if (auto found = detail::construct_from(M, 0, detail::HState{})) {
      return *found;
    }
    throw NoResult("every choice in the sequential construction fails");
  }

}  // namespace tnat

#endif  // TNAT_TRANSVERSAL_HPP_
