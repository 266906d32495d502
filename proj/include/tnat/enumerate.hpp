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

#ifndef TNAT_ENUMERATE_HPP_
#define TNAT_ENUMERATE_HPP_

#include <algorithm>      // for sort, min
#include <cstdint>        // for uint32_t
#include <memory>         // for unique_ptr, make_unique
#include <mutex>          // for mutex, lock_guard
#include <optional>       // for optional
#include <queue>          // for priority_queue
#include <unordered_map>  // for unordered_map
#include <utility>        // for pair
#include <vector>         // for vector

#include "tnat/term.hpp"

namespace tnat {

  //! A strictly increasing, lazily extended enumeration of a fiber
  //! {n : t(n) = y}.
  class FiberStream {
   public:
    virtual ~FiberStream() = default;

    //! The next member, or nullopt once the fiber is exhausted (or, for
    //! streams that fall back to scanning, once the scan budget is spent).
    virtual std::optional<Int> next() = 0;

    //! The total size when it is known in advance.
    virtual std::optional<ExtNat> size() const {
      return std::nullopt;
    }
  };

  //! Default number of points a scanning stream inspects before giving up.
  inline constexpr Int default_scan_budget = Int(1) << 22;

  namespace detail {

    class SetStream final : public FiberStream {
     public:
      explicit SetStream(EPSet set) : _set(std::move(set)) {}

      std::optional<Int> next() override {
        if (ExtNat::fin(_k) >= _set.card()) {
          return std::nullopt;
        }
        return _set.kth(_k++);
      }

      std::optional<ExtNat> size() const override {
        return _set.card();
      }

     private:
      EPSet _set;
      Int   _k = 0;
    };

    class ColumnStream final : public FiberStream {
     public:
      explicit ColumnStream(Int column) : _column(column) {}

      std::optional<Int> next() override {
        return pair(_column, _j++);
      }

      std::optional<ExtNat> size() const override {
        return ExtNat::inf();
      }

     private:
      Int _column;
      Int _j = 0;
    };

    class ScanStream final : public FiberStream {
     public:
      ScanStream(Term t, Int y, Int budget)
          : _term(std::move(t)), _y(y), _budget(budget) {}

      std::optional<Int> next() override {
        while (_n < _budget) {
          Int const n = _n++;
          if (_term(n) == _y) {
            return n;
          }
        }
        return std::nullopt;
      }

     private:
      Term _term;
      Int  _y;
      Int  _budget;
      Int  _n = 0;
    };

    //! The union of the pairing columns indexed by an EPSet, in increasing
    //! order. Diagonal w = i + j holds pair(i, w - i) for i = w, ..., 0 in
    //! increasing order, so it is enough to walk the diagonals.
    class ColumnUnionStream final : public FiberStream {
     public:
      explicit ColumnUnionStream(EPSet columns) : _columns(std::move(columns)) {}

      std::optional<Int> next() override {
        if (_columns.is_empty()) {
          return std::nullopt;
        }
        while (_cursor < 0) {
          ++_diagonal;
          Int const seen = static_cast<Int>(_known.size());
          if (ExtNat::fin(seen) < _columns.card()
              && _columns.kth(seen) <= _diagonal) {
            _known.push_back(_columns.kth(seen));
          }
          _cursor = static_cast<Int>(_known.size()) - 1;
        }
        Int const i = _known[static_cast<std::size_t>(_cursor--)];
        return pair(i, _diagonal - i);
      }

      std::optional<ExtNat> size() const override {
        return _columns.is_empty() ? ExtNat::fin(0) : ExtNat::inf();
      }

     private:
      EPSet            _columns;
      std::vector<Int> _known;
      Int              _diagonal = -1;
      Int              _cursor   = -1;
    };

    //! Ordered merge of finitely many increasing streams.
    class MergeStream final : public FiberStream {
     public:
      explicit MergeStream(std::vector<std::unique_ptr<FiberStream>> parts)
          : _parts(std::move(parts)) {
        for (std::size_t i = 0; i < _parts.size(); ++i) {
          advance(i);
        }
      }

      std::optional<Int> next() override {
        if (_heap.empty()) {
          return std::nullopt;
        }
        auto [value, i] = _heap.top();
        _heap.pop();
        advance(i);
        return value;
      }

     private:
      void advance(std::size_t i) {
        if (auto v = _parts[i]->next()) {
          _heap.emplace(*v, i);
        }
      }

      using Entry = std::pair<Int, std::size_t>;
      std::vector<std::unique_ptr<FiberStream>> _parts;
      std::priority_queue<Entry, std::vector<Entry>, std::greater<>> _heap;
    };

  }  // namespace detail

  //! Enumerates {n : t(n) = y} in increasing order.
  //!
  //! Rca, ColProj and ColEmbed fibers are enumerated exactly, and so is
  //! Compose(ColProj, g) for g built from Rca leaves. A composite whose outer
  //! fiber is known to be finite is the ordered merge of the
  //! inner fibers; anything else falls back to scanning n = 0, 1, ... for at
  //! most \p scan_budget points.
  inline std::unique_ptr<FiberStream>
  fiber_stream(Term const& t, Int y, Int scan_budget = default_scan_budget) {
    switch (t.kind()) {
      case Term::Kind::Rca:
        return std::make_unique<detail::SetStream>(rca_preimage(t.rca_map(), y));
      case Term::Kind::ColProj:
        return std::make_unique<detail::ColumnStream>(y);
      case Term::Kind::ColEmbed: {
        auto [i, j] = unpair(y);
        return std::make_unique<detail::SetStream>(
            j == 0 ? EPSet::finite({i}) : EPSet::empty());
      }
      case Term::Kind::Compose: {
        if (t.first().is(Term::Kind::ColProj)) {
          if (auto g = as_rca(t.second())) {
            return std::make_unique<detail::ColumnUnionStream>(rca_preimage(*g, y));
          }
        }
        auto outer = fiber_stream(t.second(), y, scan_budget);
        auto size  = outer->size();
        if (size && size->is_finite()) {
          std::vector<std::unique_ptr<FiberStream>> parts;
          while (auto z = outer->next()) {
            parts.push_back(fiber_stream(t.first(), *z, scan_budget));
          }
          return std::make_unique<detail::MergeStream>(std::move(parts));
        }
        break;
      }
      case Term::Kind::Lazy:
      default:
        break;
    }
    return std::make_unique<detail::ScanStream>(t, y, scan_budget);
  }

  //! The first \p count members of the fiber (fewer if it is exhausted).
  inline std::vector<Int> fiber_prefix(Term const& t, Int y, std::size_t count) {
    std::vector<Int> out;
    auto             stream = fiber_stream(t, y);
    while (out.size() < count) {
      auto v = stream->next();
      if (!v) {
        break;
      }
      out.push_back(*v);
    }
    return out;
  }

  //! Kernel classes of a term numbered by order of first appearance while
  //! scanning n = 0, 1, 2, ...; the scan is memoized and thread-safe.
  class ClassIndex {
   public:
    explicit ClassIndex(Term t) : _term(std::move(t)) {}

    //! Id of the class of n.
    Int index_of(Int n) const {
      std::lock_guard<std::mutex> lock(_mutex);
      scan_to(n);
      return _ids[static_cast<std::size_t>(n)];
    }

    //! Number of m < n in the same class as n.
    Int rank_in_class(Int n) const {
      std::lock_guard<std::mutex> lock(_mutex);
      scan_to(n);
      return _ranks[static_cast<std::size_t>(n)];
    }

    //! The least element of class \p id. Scans at most \p budget points.
    Int representative(Int id, Int budget = default_scan_budget) const {
      std::lock_guard<std::mutex> lock(_mutex);
      while (static_cast<Int>(_reps.size()) <= id) {
        if (static_cast<Int>(_ids.size()) >= budget) {
          throw UnsupportedStructure("class " + std::to_string(id)
                                     + " not found within the scan budget");
        }
        scan_to(static_cast<Int>(_ids.size()));
      }
      return _reps[id];
    }

    Term const& term() const noexcept {
      return _term;
    }

   private:
    void scan_to(Int n) const {
      while (static_cast<Int>(_ids.size()) <= n) {
        Int const m     = static_cast<Int>(_ids.size());
        Int const value = _term(m);
        auto [it, fresh] = _id_of_value.try_emplace(value, static_cast<Int>(_reps.size()));
        if (fresh) {
          _reps.push_back(m);
          _sizes.push_back(0);
        }
        _ids.push_back(static_cast<std::uint32_t>(it->second));
        _ranks.push_back(static_cast<std::uint32_t>(_sizes[it->second]++));
      }
    }

    Term                                 _term;
    mutable std::mutex                   _mutex;
    mutable std::unordered_map<Int, Int> _id_of_value;
    mutable std::vector<std::uint32_t>   _ids;
    mutable std::vector<std::uint32_t>   _ranks;
    mutable std::vector<Int>             _reps;
    mutable std::vector<Int>             _sizes;
  };

  inline Int class_index(Term const& t, Int n) {
    return ClassIndex(t).index_of(n);
  }

  //! What evaluating a term on [0, W) shows. Nothing here claims
  //! infinitude; collisions is a lower bound for the collapse.
  struct WindowReport {
    Int                             window     = 0;
    Int                             collisions = 0;
    Int                             distinct   = 0;
    std::vector<std::pair<Int, Int>> largest_fibers;  // (value, size)
    Int                             max_value        = 0;
    Int                             missing_below_max = 0;
    std::vector<Int>                first_missing;
  };

  inline WindowReport window_report(Term const& t, Int window, std::size_t top = 5) {
    if (window < 1) {
      throw InvalidArgument("window must be >= 1");
    }
    std::unordered_map<Int, Int> sizes;
    WindowReport                 out;
    out.window = window;
    for (Int n = 0; n < window; ++n) {
      Int const v = t(n);
      ++sizes[v];
      out.max_value = std::max(out.max_value, v);
    }
    out.distinct   = static_cast<Int>(sizes.size());
    out.collisions = window - out.distinct;
    std::vector<std::pair<Int, Int>> fibers(sizes.begin(), sizes.end());
    std::sort(fibers.begin(), fibers.end(), [](auto const& x, auto const& y) {
      return x.second != y.second ? x.second > y.second : x.first < y.first;
    });
    fibers.resize(std::min(fibers.size(), top));
    out.largest_fibers = std::move(fibers);
    // every value is at most max_value, which is itself taken
    out.missing_below_max = out.max_value - (out.distinct - 1);
    std::vector<Int> values;
    values.reserve(sizes.size());
    for (auto const& [v, size] : sizes) {
      values.push_back(v);
    }
    std::sort(values.begin(), values.end());
    Int expected = 0;
    for (Int v : values) {
      for (; expected < v && out.first_missing.size() < top; ++expected) {
        out.first_missing.push_back(expected);
      }
      if (out.first_missing.size() == top) {
        break;
      }
      expected = v + 1;
    }
    return out;
  }

  //! Number of distinct values taken on [0, W) whose fiber within the
  //! window has at least \p min_size members.
  inline Int count_fibers_at_least(Term const& t, Int window, Int min_size) {
    std::unordered_map<Int, Int> sizes;
    for (Int n = 0; n < window; ++n) {
      ++sizes[t(n)];
    }
    Int count = 0;
    for (auto const& [v, size] : sizes) {
      if (size >= min_size) {
        ++count;
      }
    }
    return count;
  }

  //! False when the window exhibits more collisions or more distinct values
  //! than the report allows.
  inline bool consistent(InvariantReport const& r, WindowReport const& w) {
    return ExtNat::fin(w.collisions) <= r.collapse.hi
           && ExtNat::fin(w.distinct) <= r.rank.hi;
  }

}  // namespace tnat

#endif  // TNAT_ENUMERATE_HPP_
