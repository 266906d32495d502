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

#ifndef TNAT_TERM_HPP_
#define TNAT_TERM_HPP_

#include <array>        // for array
#include <memory>       // for shared_ptr, make_shared
#include <optional>     // for optional
#include <string>       // for string
#include <string_view>  // for string_view
#include <utility>      // for move
#include <variant>      // for variant, get, holds_alternative

#include "json.hpp"

#include "tnat/epset.hpp"
#include "tnat/extnat.hpp"
#include "tnat/pairing.hpp"
#include "tnat/rca.hpp"

namespace tnat {

  enum class Tri { No, Yes, Unknown };

  inline std::string_view to_string(Tri t) {
    switch (t) {
      case Tri::No:
        return "No";
      case Tri::Yes:
        return "Yes";
      case Tri::Unknown:
      default:
        return "Unknown";
    }
  }

  inline Tri tri_and(Tri x, Tri y) {
    if (x == Tri::No || y == Tri::No) {
      return Tri::No;
    }
    if (x == Tri::Yes && y == Tri::Yes) {
      return Tri::Yes;
    }
    return Tri::Unknown;
  }

  inline Tri tri_not(Tri x) {
    return x == Tri::Yes ? Tri::No : (x == Tri::No ? Tri::Yes : Tri::Unknown);
  }

  //! A closed interval [lo, hi] of ExtNat; lo == hi means the value is exact.
  struct Bounds {
    ExtNat lo = ExtNat::fin(0);
    ExtNat hi = ExtNat::inf();

    static Bounds exactly(ExtNat v) {
      return Bounds{v, v};
    }

    bool is_exact() const noexcept {
      return lo == hi;
    }

    void intersect(Bounds const& that) {
      lo = ext_max(lo, that.lo);
      hi = ext_min(hi, that.hi);
    }

    std::string to_string() const {
      return is_exact() ? lo.to_string()
                        : "[" + lo.to_string() + ", " + hi.to_string() + "]";
    }

    bool operator==(Bounds const&) const = default;
  };

  //! Computed values are derived exactly or by sound rules; asserted values
  //! come from the metadata of a lazy construction.
  enum class Source { Computed, Asserted };

  struct InvariantReport {
    Bounds               defect;
    Bounds               collapse;
    Bounds               contractive;
    Bounds               rank;
    std::optional<EPSet> image;
    Tri                  infinite_kernel_class = Tri::Unknown;
    Source               source                = Source::Computed;
  };

  //! Closes a report under the relations that hold for every map N -> N:
  //! k <= rank, finite rank forces an infinite fiber and infinite defect, an
  //! infinite fiber forces infinite collapse, and so on. Throws when the
  //! report is contradictory.
  inline void tighten(InvariantReport& r) {
    auto const inf  = ExtNat::inf();
    auto const zero = ExtNat::fin(0);
    auto       set_ikc = [&r](Tri t) {
      if (r.infinite_kernel_class != Tri::Unknown
          && r.infinite_kernel_class != t) {
        throw Error("contradictory invariant report (infinite kernel class)");
      }
      r.infinite_kernel_class = t;
    };
    if (r.image) {
      r.rank.intersect(Bounds::exactly(r.image->card()));
      r.defect.intersect(Bounds::exactly(complement(*r.image).card()));
    }
    for (int round = 0; round < 3; ++round) {
      r.rank.lo        = ext_max(r.rank.lo, ExtNat::fin(1));
      r.contractive.hi = ext_min(r.contractive.hi, r.rank.hi);
      r.rank.lo        = ext_max(r.rank.lo, r.contractive.lo);
      if (r.rank.hi.is_finite()) {
        set_ikc(Tri::Yes);
        r.defect.lo = inf;
      }
      if (r.defect.hi.is_finite()) {
        r.rank.lo = inf;
      }
      if (r.contractive.lo > zero) {
        set_ikc(Tri::Yes);
      }
      if (r.contractive.hi == zero || r.collapse.hi.is_finite()) {
        set_ikc(Tri::No);
      }
      if (r.infinite_kernel_class == Tri::Yes) {
        r.contractive.lo = ext_max(r.contractive.lo, ExtNat::fin(1));
        r.collapse.lo    = inf;
      } else if (r.infinite_kernel_class == Tri::No) {
        r.contractive.hi = zero;
      }
    }
    for (Bounds const* b : {&r.defect, &r.collapse, &r.contractive, &r.rank}) {
      if (b->hi < b->lo) {
        throw Error("contradictory invariant report (empty bounds)");
      }
    }
  }

  //! The evaluation behind a Lazy term.
  class LazyConstruction {
   public:
    virtual ~LazyConstruction() = default;
    virtual Int eval(Int n) const = 0;
  };

  //! A transformation of N in the closed term algebra
  //! Rca | ColProj | ColEmbed | Compose | Lazy.
  //!
  //! Composition is a right action: Compose(f, g) applies f first, then g.
  //! ColProj sends pair(i, j) to i and ColEmbed sends i to pair(i, 0), so
  //! Compose(ColEmbed, ColProj) is the identity.
  //!
  //! Terms are immutable and share their subterms.
  class Term {
   public:
    enum class Kind { Rca, ColProj, ColEmbed, Compose, Lazy };

    struct LazyData {
      std::string                             name;
      nlohmann::json                          params;
      InvariantReport                         metadata;
      std::shared_ptr<LazyConstruction const> impl;
    };

    static Term rca(RcaMap map);
    static Term colproj();
    static Term colembed();
    static Term compose(Term first, Term second);
    static Term lazy(LazyData data);

    Kind kind() const noexcept;

    bool is(Kind k) const noexcept {
      return kind() == k;
    }

    RcaMap const&   rca_map() const;
    Term const&     first() const;
    Term const&     second() const;
    LazyData const& lazy_data() const;

    Int operator()(Int n) const;

   private:
    struct Node;

    explicit Term(std::shared_ptr<Node const> node) : _node(std::move(node)) {}

    std::shared_ptr<Node const> _node;
  };

  struct Term::Node {
    struct ColProjTag {};
    struct ColEmbedTag {};
    struct Composite {
      Term first;
      Term second;
    };

    std::variant<RcaMap, ColProjTag, ColEmbedTag, Composite, LazyData> payload;
  };

  inline Term Term::rca(RcaMap map) {
    return Term(std::make_shared<Node const>(
        Node{decltype(Node::payload)(std::in_place_index<0>, std::move(map))}));
  }

  inline Term Term::colproj() {
    return Term(std::make_shared<Node const>(
        Node{decltype(Node::payload)(std::in_place_index<1>)}));
  }

  inline Term Term::colembed() {
    return Term(std::make_shared<Node const>(
        Node{decltype(Node::payload)(std::in_place_index<2>)}));
  }

  inline Term Term::compose(Term first, Term second) {
    return Term(std::make_shared<Node const>(Node{decltype(Node::payload)(
        std::in_place_index<3>,
        Node::Composite{std::move(first), std::move(second)})}));
  }

  inline Term Term::lazy(LazyData data) {
    if (!data.impl) {
      throw InvalidArgument("lazy term without an evaluator");
    }
    data.metadata.source = Source::Asserted;
    return Term(std::make_shared<Node const>(
        Node{decltype(Node::payload)(std::in_place_index<4>, std::move(data))}));
  }

  inline Term::Kind Term::kind() const noexcept {
    return static_cast<Kind>(_node->payload.index());
  }

  inline RcaMap const& Term::rca_map() const {
    return std::get<0>(_node->payload);
  }

  inline Term const& Term::first() const {
    return std::get<3>(_node->payload).first;
  }

  inline Term const& Term::second() const {
    return std::get<3>(_node->payload).second;
  }

  inline Term::LazyData const& Term::lazy_data() const {
    return std::get<4>(_node->payload);
  }

  inline Int Term::operator()(Int n) const {
    switch (kind()) {
      case Kind::Rca:
        return rca_map()(n);
      case Kind::ColProj:
        return column_of(n);
      case Kind::ColEmbed:
        return pair(n, 0);
      case Kind::Compose:
        return second()(first()(n));
      case Kind::Lazy:
      default:
        return lazy_data().impl->eval(n);
    }
  }

  inline Int term_eval(Term const& t, Int n) {
    return t(n);
  }

  inline Term compose(Term first, Term second) {
    return Term::compose(std::move(first), std::move(second));
  }

  //! The RcaMap denoted by \p t when t is built from Rca leaves only.
  inline std::optional<RcaMap> as_rca(Term const& t) {
    if (t.is(Term::Kind::Rca)) {
      return t.rca_map();
    }
    if (t.is(Term::Kind::Compose)) {
      auto f = as_rca(t.first());
      if (!f) {
        return std::nullopt;
      }
      auto g = as_rca(t.second());
      if (!g) {
        return std::nullopt;
      }
      return rca_compose(*f, *g);
    }
    return std::nullopt;
  }

  inline InvariantReport to_report(RcaInvariants const& inv) {
    InvariantReport r;
    r.defect                = Bounds::exactly(inv.defect);
    r.collapse              = Bounds::exactly(inv.collapse);
    r.contractive           = Bounds::exactly(inv.contractive);
    r.rank                  = Bounds::exactly(inv.rank);
    r.image                 = inv.image;
    r.infinite_kernel_class = inv.has_infinite_kernel_class ? Tri::Yes : Tri::No;
    return r;
  }

  inline InvariantReport colproj_report() {
    auto const      inf = Bounds::exactly(ExtNat::inf());
    InvariantReport r;
    r.defect                = Bounds::exactly(ExtNat::fin(0));
    r.collapse              = inf;
    r.contractive           = inf;
    r.rank                  = inf;
    r.image                 = EPSet::naturals();
    r.infinite_kernel_class = Tri::Yes;
    return r;
  }

  inline InvariantReport colembed_report() {
    auto const      inf  = Bounds::exactly(ExtNat::inf());
    auto const      zero = Bounds::exactly(ExtNat::fin(0));
    InvariantReport r;
    r.defect                = inf;
    r.collapse              = zero;
    r.contractive           = zero;
    r.rank                  = inf;
    r.infinite_kernel_class = Tri::No;
    return r;
  }

  //! Bounds for first-then-second from bounds on the factors.
  //!
  //!   R1  d >= d(second)               R2  d <= d(first) + d(second)
  //!   R3  c >= c(first)                R4  c <= c(first) + c(second)
  //!   R5  k <= k(first) + k(second)
  //!   R6  k = inf if k(first) = inf and second has no infinite fiber
  //!   R7  rank <= min(rank(first), rank(second))
  //!   R8  second injective: c, k, rank as first, d = d(first) + d(second)
  //!   R9  first surjective: rank, d and image as second
  //!
  //! plus d = inf when d(first) = inf and c(second) < inf, c = inf when
  //! d(first) < inf and c(second) = inf, and, when first is ColProj (every
  //! fiber infinite), k = rank(second).
  inline InvariantReport compose_reports(InvariantReport const& f,
                                         InvariantReport const& g,
                                         bool first_is_colproj = false) {
    auto const      inf  = ExtNat::inf();
    auto const      zero = ExtNat::fin(0);
    InvariantReport h;
    h.defect.lo      = g.defect.lo;
    h.defect.hi      = f.defect.hi + g.defect.hi;
    h.collapse.lo    = f.collapse.lo;
    h.collapse.hi    = f.collapse.hi + g.collapse.hi;
    h.contractive.hi = f.contractive.hi + g.contractive.hi;
    if (f.contractive.lo == inf && g.contractive.hi == zero) {
      h.contractive.lo = inf;
    }
    h.rank.hi = ext_min(f.rank.hi, g.rank.hi);
    if (g.collapse.hi == zero) {
      h.collapse.intersect(f.collapse);
      h.contractive.intersect(f.contractive);
      h.rank.intersect(f.rank);
      h.defect.intersect(
          Bounds{f.defect.lo + g.defect.lo, f.defect.hi + g.defect.hi});
      h.infinite_kernel_class = f.infinite_kernel_class;
    }
    if (f.defect.hi == zero) {
      h.rank.intersect(g.rank);
      h.defect.intersect(g.defect);
      h.image = g.image;
    }
    if (f.defect.lo == inf && g.collapse.hi.is_finite()) {
      h.defect.lo = inf;
    }
    if (f.defect.hi.is_finite() && g.collapse.lo == inf) {
      h.collapse.lo = inf;
    }
    if (f.infinite_kernel_class == Tri::Yes
        || (g.infinite_kernel_class == Tri::Yes && f.defect.hi.is_finite())) {
      h.infinite_kernel_class = Tri::Yes;
    } else if (f.infinite_kernel_class == Tri::No
               && g.infinite_kernel_class == Tri::No) {
      h.infinite_kernel_class = Tri::No;
    }
    if (first_is_colproj) {
      h.contractive.intersect(g.rank);
      h.infinite_kernel_class = Tri::Yes;
    }
    if (f.source == Source::Asserted || g.source == Source::Asserted) {
      h.source = Source::Asserted;
    }
    tighten(h);
    return h;
  }

  inline InvariantReport term_invariants(Term const& t) {
    switch (t.kind()) {
      case Term::Kind::Rca:
        return to_report(rca_invariants(t.rca_map()));
      case Term::Kind::ColProj:
        return colproj_report();
      case Term::Kind::ColEmbed:
        return colembed_report();
      case Term::Kind::Lazy:
        return t.lazy_data().metadata;
      case Term::Kind::Compose:
      default:
        if (auto map = as_rca(t)) {
          return to_report(rca_invariants(*map));
        }
        return compose_reports(term_invariants(t.first()),
                               term_invariants(t.second()),
                               t.first().is(Term::Kind::ColProj));
    }
  }

  enum class Flag { FiniteRank, Sym, Inj, Sur, Cp, IF, FI, CpGenerated };

  inline constexpr std::array<Flag, 8> all_flags = {Flag::FiniteRank,
                                                    Flag::Sym,
                                                    Flag::Inj,
                                                    Flag::Sur,
                                                    Flag::Cp,
                                                    Flag::IF,
                                                    Flag::FI,
                                                    Flag::CpGenerated};

  inline std::string_view flag_name(Flag f) {
    constexpr std::array<std::string_view, 8> names = {
        "FiniteRank", "Sym", "Inj", "Sur", "Cp", "IF", "FI", "CpGenerated"};
    return names[static_cast<std::size_t>(f)];
  }

  inline std::optional<Flag> flag_from_name(std::string_view name) {
    for (Flag f : all_flags) {
      if (flag_name(f) == name) {
        return f;
      }
    }
    return std::nullopt;
  }

  struct ClassFlags {
    std::array<Tri, 8> values;
    Source             source = Source::Computed;

    Tri operator[](Flag f) const {
      return values[static_cast<std::size_t>(f)];
    }

    bool resolved() const {
      for (Tri t : values) {
        if (t == Tri::Unknown) {
          return false;
        }
      }
      return true;
    }
  };

  //! The five class definitions, read off the (possibly inexact) report.
  inline ClassFlags flags_from_report(InvariantReport const& r) {
    auto is_inf = [](Bounds const& b) {
      return b.lo.is_inf() ? Tri::Yes : (b.hi.is_finite() ? Tri::No : Tri::Unknown);
    };
    auto is_zero = [](Bounds const& b) {
      auto const zero = ExtNat::fin(0);
      return b.hi == zero ? Tri::Yes : (b.lo > zero ? Tri::No : Tri::Unknown);
    };
    Tri const  infinite_rank = is_inf(r.rank);
    Tri const  c0 = is_zero(r.collapse), d0 = is_zero(r.defect);
    Tri const  cinf = is_inf(r.collapse), dinf = is_inf(r.defect);
    ClassFlags out;
    auto set = [&out](Flag f, Tri t) {
      out.values[static_cast<std::size_t>(f)] = t;
    };
    set(Flag::FiniteRank, tri_not(infinite_rank));
    set(Flag::Sym, tri_and(c0, d0));
    set(Flag::Inj, tri_and(infinite_rank, tri_and(c0, tri_not(d0))));
    set(Flag::Sur, tri_and(infinite_rank, tri_and(tri_not(c0), d0)));
    set(Flag::Cp, tri_and(infinite_rank, is_inf(r.contractive)));
    set(Flag::IF, tri_and(infinite_rank, tri_and(cinf, tri_not(dinf))));
    set(Flag::FI, tri_and(infinite_rank, tri_and(dinf, tri_not(cinf))));
    set(Flag::CpGenerated, r.infinite_kernel_class);
    out.source = r.source;
    return out;
  }

  inline ClassFlags classify(Term const& t) {
    return flags_from_report(term_invariants(t));
  }

}  // namespace tnat

#endif  // TNAT_TERM_HPP_
