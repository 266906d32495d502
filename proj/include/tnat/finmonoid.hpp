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

#ifndef TNAT_FINMONOID_HPP_
#define TNAT_FINMONOID_HPP_

#include <bitset>     // for bitset
#include <cstdint>    // for uint8_t, uint16_t
#include <optional>   // for optional
#include <string>     // for string
#include <vector>     // for vector

#include "tnat/error.hpp"
#include "tnat/transversal.hpp"

namespace tnat {

  //! Largest n for which T_n is handled; T_5 already has 3125 elements.
  inline constexpr int max_points = 4;

  //! A total map on {0, ..., n - 1}. Its id reads the images as a base-n
  //! number with images[0] most significant.
  class FinMap {
   public:
    FinMap(int n, std::vector<int> images) : _n(n), _images(std::move(images)) {
      if (n < 1 || n > max_points) {
        throw InvalidArgument("maps on " + std::to_string(n)
                              + " points are not supported (1 <= n <= 4)");
      }
      if (static_cast<int>(_images.size()) != n) {
        throw InvalidArgument("a map on n points needs n images");
      }
      for (int v : _images) {
        if (v < 0 || v >= n) {
          throw InvalidArgument("image " + std::to_string(v) + " out of range");
        }
      }
    }

    static FinMap from_id(int n, Int id) {
      std::vector<int> images(static_cast<std::size_t>(n));
      for (int i = n - 1; i >= 0; --i) {
        images[static_cast<std::size_t>(i)] = static_cast<int>(id % n);
        id /= n;
      }
      return FinMap(n, std::move(images));
    }

    int points() const noexcept {
      return _n;
    }

    std::vector<int> const& images() const noexcept {
      return _images;
    }

    int operator()(int x) const {
      return _images[static_cast<std::size_t>(x)];
    }

    Int id() const {
      Int id = 0;
      for (int v : _images) {
        id = id * _n + v;
      }
      return id;
    }

    int rank() const {
      std::bitset<max_points> seen;
      for (int v : _images) {
        seen.set(static_cast<std::size_t>(v));
      }
      return static_cast<int>(seen.count());
    }

    std::string to_string() const {
      std::string out = "[";
      for (std::size_t i = 0; i < _images.size(); ++i) {
        out += (i == 0 ? "" : ",") + std::to_string(_images[i]);
      }
      return out + "]";
    }

    bool operator==(FinMap const&) const = default;

   private:
    int              _n;
    std::vector<int> _images;
  };

  //! Apply f first, then g.
  inline FinMap then(FinMap const& f, FinMap const& g) {
    std::vector<int> images;
    for (int v : f.images()) {
      images.push_back(g(v));
    }
    return FinMap(f.points(), std::move(images));
  }

  //! Sets of elements of T_n, indexed by id.
  using MapSet = std::bitset<256>;

  //! The full transformation monoid T_n with a precomputed product table.
  class FullTransformationMonoid {
   public:
    explicit FullTransformationMonoid(int n) : _n(n) {
      if (n < 1 || n > max_points) {
        throw InvalidArgument("T_n is supported for 1 <= n <= 4 only");
      }
      _size = 1;
      for (int i = 0; i < n; ++i) {
        _size *= n;
      }
      _table.resize(static_cast<std::size_t>(_size * _size));
      for (Int f = 0; f < _size; ++f) {
        FinMap const a = FinMap::from_id(n, f);
        for (Int g = 0; g < _size; ++g) {
          _table[static_cast<std::size_t>(f * _size + g)]
              = static_cast<std::uint16_t>(then(a, FinMap::from_id(n, g)).id());
        }
      }
    }

    int points() const noexcept {
      return _n;
    }

    Int size() const noexcept {
      return _size;
    }

    //! The id of f-then-g.
    Int product(Int f, Int g) const {
      return _table[static_cast<std::size_t>(f * _size + g)];
    }

    FinMap element(Int id) const {
      return FinMap::from_id(_n, id);
    }

    MapSet all() const {
      MapSet s;
      for (Int i = 0; i < _size; ++i) {
        s.set(static_cast<std::size_t>(i));
      }
      return s;
    }

    MapSet with_rank(int r) const {
      MapSet s;
      for (Int i = 0; i < _size; ++i) {
        if (element(i).rank() == r) {
          s.set(static_cast<std::size_t>(i));
        }
      }
      return s;
    }

    MapSet permutations() const {
      return with_rank(_n);
    }

    MapSet constants() const {
      return with_rank(1);
    }

    //! The subsemigroup generated by \p gens (the identity only if it is a
    //! product of generators).
    MapSet closure(MapSet const& gens) const {
      std::vector<Int> generators = ids(gens);
      MapSet           out        = gens;
      std::vector<Int> queue      = generators;
      while (!queue.empty()) {
        Int const x = queue.back();
        queue.pop_back();
        for (Int g : generators) {
          Int const y = product(x, g);
          if (!out.test(static_cast<std::size_t>(y))) {
            out.set(static_cast<std::size_t>(y));
            queue.push_back(y);
          }
        }
      }
      return out;
    }

    bool is_closed(MapSet const& s) const {
      auto const members = ids(s);
      for (Int f : members) {
        for (Int g : members) {
          if (!s.test(static_cast<std::size_t>(product(f, g)))) {
            return false;
          }
        }
      }
      return true;
    }

    std::vector<Int> ids(MapSet const& s) const {
      std::vector<Int> out;
      for (Int i = 0; i < _size; ++i) {
        if (s.test(static_cast<std::size_t>(i))) {
          out.push_back(i);
        }
      }
      return out;
    }

   private:
    int                        _n;
    Int                        _size;
    std::vector<std::uint16_t> _table;
  };

  struct SubsemigroupReport {
    MapSet elements;
    bool   closed  = false;
    bool   proper  = false;
    bool   maximal = false;
  };

  //! Brute force: S is maximal iff it is closed, proper, and adjoining any
  //! single outside element generates all of T_n.
  inline SubsemigroupReport is_maximal(FullTransformationMonoid const& T, MapSet const& S) {
    SubsemigroupReport r;
    r.elements = S;
    r.closed   = T.is_closed(S);
    r.proper   = S != T.all();
    r.maximal  = r.closed && r.proper;
    for (Int x = 0; r.maximal && x < T.size(); ++x) {
      if (!S.test(static_cast<std::size_t>(x))) {
        MapSet g = S;
        g.set(static_cast<std::size_t>(x));
        r.maximal = T.closure(g) == T.all();
      }
    }
    return r;
  }

  //! Largest generating-set size gen_family accepts on n points.
  inline int max_gen_cap(int n) {
    return n <= 2 ? 4 : (n == 3 ? 2 : 1);
  }

  //! All A in T_n with |A| <= cap whose generated subsemigroup meets U,
  //! ordered by size and then by the sorted ids.
  inline SetFamily gen_family(FullTransformationMonoid const& T, MapSet const& U, int cap) {
    if (cap < 0 || cap > max_gen_cap(T.points())) {
      throw CapTooLarge("cap " + std::to_string(cap) + " exceeds the limit "
                        + std::to_string(max_gen_cap(T.points())) + " for n = "
                        + std::to_string(T.points()));
    }
    std::vector<ElementSet> members;
    std::vector<Int>        chosen;
    auto                    extend = [&](auto&& self, Int from, int size) -> void {
      if (static_cast<int>(chosen.size()) == size) {
        MapSet gens;
        for (Int x : chosen) {
          gens.set(static_cast<std::size_t>(x));
        }
        if ((T.closure(gens) & U).any()) {
          members.push_back(chosen);
        }
        return;
      }
      for (Int x = from; x < T.size(); ++x) {
        chosen.push_back(x);
        self(self, x + 1, size);
        chosen.pop_back();
      }
    };
    for (int size = 1; size <= cap; ++size) {
      extend(extend, 0, size);
    }
    return SetFamily(std::move(members));
  }

  inline ElementSet to_element_set(FullTransformationMonoid const& T, MapSet const& s) {
    return T.ids(s);
  }

  inline MapSet to_map_set(ElementSet const& s) {
    MapSet out;
    for (Int x : s) {
      if (x < 0 || x >= 256) {
        throw InvalidArgument("map id out of range");
      }
      out.set(static_cast<std::size_t>(x));
    }
    return out;
  }

  struct CandidateReport {
    ElementSet H;
    Int        complement_size = 0;
    bool       closed          = false;
    bool       maximal         = false;
    //! Every constant map lies in T_n \ H.
    bool contains_constants = false;
    //! Elements h of H with closure((T_n \ H) + h) = T_n.
    Int regenerating = 0;
  };

  struct PipelineReport {
    int                          n           = 0;
    Int                          monoid_size = 0;
    Int                          w_size      = 0;
    Int                          u_size      = 0;
    int                          cap         = 0;
    Int                          family_size = 0;
    std::vector<CandidateReport> candidates;
    std::optional<ElementSet>    spot_witness;
    bool                         spot_in_j = false;
    //! "preset" for the named presets, where the singletons {u} already
    //! force every candidate; "experimental" for anything else.
    std::string label = "experimental";
  };

  //! Checks that W is a subsemigroup disjoint from U and that each u in U
  //! generates T_n together with W, then computes the candidates H among
  //! the members of J(Gen(U)) avoiding W (Gen truncated to |A| <= cap), and
  //! for each one whether T_n \ H is a maximal subsemigroup.
  inline PipelineReport theorem1_pipeline(FullTransformationMonoid const& T,
                                          MapSet const&                   W,
                                          MapSet const&                   U,
                                          int                             cap) {
    if (!T.is_closed(W)) {
      throw HypothesisViolation("W is a subsemigroup", "W");
    }
    if ((U & W).any()) {
      Int const x = T.ids(U & W).front();
      throw HypothesisViolation("U and W are disjoint", T.element(x).to_string());
    }
    for (Int u : T.ids(U)) {
      MapSet g = W;
      g.set(static_cast<std::size_t>(u));
      if (T.closure(g) != T.all()) {
        throw HypothesisViolation("every u in U generates T_n together with W",
                                  T.element(u).to_string());
      }
    }
    PipelineReport r;
    r.n           = T.points();
    r.monoid_size = T.size();
    r.w_size      = static_cast<Int>(W.count());
    r.u_size      = static_cast<Int>(U.count());
    r.cap         = cap;
    SetFamily const M = gen_family(T, U, cap);
    r.family_size     = static_cast<Int>(M.size());
    if (M.size() > 0) {
      try {
        r.spot_witness = construct_h(M);
        r.spot_in_j    = is_in_j(*r.spot_witness, M);
      } catch (NoResult const&) {
        r.spot_witness.reset();
      }
    }
    MapSet const constants = T.constants();
    for (auto& H : filter_h(M, to_element_set(T, W))) {
      CandidateReport c;
      MapSet const    S  = T.all() & ~to_map_set(H);
      auto const      mr = is_maximal(T, S);
      c.complement_size  = static_cast<Int>(S.count());
      c.closed           = mr.closed;
      c.maximal          = mr.maximal;
      c.contains_constants = (constants & ~S).none();
      for (Int h : H) {
        MapSet g = S;
        g.set(static_cast<std::size_t>(h));
        if (T.closure(g) == T.all()) {
          ++c.regenerating;
        }
      }
      c.H = std::move(H);
      r.candidates.push_back(std::move(c));
    }
    return r;
  }

  struct Preset {
    int    n;
    MapSet W;
    MapSet U;
    int    cap;
  };

  //! sym3: W = Sym_3, U = rank-2 maps of T_3; sym4: W = Sym_4, U = rank-3
  //! maps of T_4. Both with cap 1.
  inline std::optional<Preset> preset(std::string const& name) {
    if (name == "sym3" || name == "sym4") {
      int const                      n = name == "sym3" ? 3 : 4;
      FullTransformationMonoid const T(n);
      return Preset{n, T.permutations(), T.with_rank(n - 1), 1};
    }
    return std::nullopt;
  }

  inline PipelineReport run_preset(std::string const& name) {
    auto p = preset(name);
    if (!p) {
      throw InvalidArgument("unknown preset " + name);
    }
    FullTransformationMonoid const T(p->n);
    auto r  = theorem1_pipeline(T, p->W, p->U, p->cap);
    r.label = "preset";
    return r;
  }

}  // namespace tnat

#endif  // TNAT_FINMONOID_HPP_
