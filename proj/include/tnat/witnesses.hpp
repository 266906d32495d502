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

#ifndef TNAT_WITNESSES_HPP_
#define TNAT_WITNESSES_HPP_

#include <algorithm>      // for min
#include <functional>     // for function
#include <memory>         // for make_shared, shared_ptr
#include <mutex>          // for mutex, lock_guard
#include <optional>       // for optional
#include <string>         // for string
#include <string_view>    // for string_view
#include <unordered_map>  // for unordered_map
#include <utility>        // for pair, move
#include <vector>         // for vector

#include "tnat/enumerate.hpp"
#include "tnat/error.hpp"
#include "tnat/pairing.hpp"
#include "tnat/rca.hpp"
#include "tnat/term.hpp"
#include "tnat/term_json.hpp"

namespace tnat {

  inline constexpr Int default_window = 10000;

  //! Asserted metadata of lazy factors is cross-checked against a window
  //! report on [0, min(W, metadata_check_window)).
  inline constexpr Int metadata_check_window = 2048;

  struct FlagRequirement {
    std::string role;
    Flag        flag;
    Tri         expected;
    Tri         observed          = Tri::Unknown;
    Source      source            = Source::Computed;
    bool        window_consistent = false;
    bool        satisfied         = false;
  };

  //! The factors of a construction together with the identity they satisfy.
  //!
  //! The identity reads compose(lhs[0], lhs[1], ...) = rhs, where each entry
  //! names a factor by role, and is checked pointwise on [0, window).
  struct WitnessCertificate {
    std::string                               construction;
    std::vector<std::pair<std::string, Term>> factors;
    std::vector<std::string>                  lhs;
    std::string                               rhs;
    Int                                       window = default_window;
    bool                                      identity_holds = false;
    std::optional<Int>                        first_mismatch;
    std::vector<FlagRequirement>              requirements;
    bool                                      verified = false;

    Term const& factor(std::string_view role) const {
      for (auto const& [name, term] : factors) {
        if (name == role) {
          return term;
        }
      }
      throw InvalidArgument("no factor with role " + std::string(role));
    }

    std::string equation() const {
      std::string out = lhs.front();
      for (std::size_t i = 1; i < lhs.size(); ++i) {
        out = "compose(" + out + ", " + lhs[i] + ")";
      }
      return out + " = " + rhs;
    }
  };

  //! Checks the identity on [0, window) and every flag requirement, and
  //! records the outcomes in \p cert.
  inline void verify(WitnessCertificate& cert) {
    std::vector<Term> chain;
    for (auto const& role : cert.lhs) {
      chain.push_back(cert.factor(role));
    }
    Term const& target  = cert.factor(cert.rhs);
    cert.identity_holds = true;
    cert.first_mismatch.reset();
    for (Int n = 0; n < cert.window; ++n) {
      Int v = n;
      for (auto const& t : chain) {
        v = t(v);
      }
      if (v != target(n)) {
        cert.identity_holds = false;
        cert.first_mismatch = n;
        break;
      }
    }
    bool all = true;
    for (auto& req : cert.requirements) {
      Term const& t      = cert.factor(req.role);
      auto const  report = term_invariants(t);
      auto const  flags  = flags_from_report(report);
      req.observed       = flags[req.flag];
      req.source         = report.source;
      req.window_consistent
          = consistent(report,
                       window_report(t, std::min(cert.window, metadata_check_window)));
      req.satisfied = req.observed == req.expected && req.window_consistent;
      all           = all && req.satisfied;
    }
    cert.verified = cert.identity_holds && all;
  }

  inline json certificate_to_json(WitnessCertificate const& cert) {
    json factors = json::array();
    for (auto const& [role, term] : cert.factors) {
      factors.push_back({{"role", role}, {"term", term_to_json(term)}});
    }
    json reqs = json::array();
    for (auto const& r : cert.requirements) {
      reqs.push_back({{"role", r.role},
                      {"flag", std::string(flag_name(r.flag))},
                      {"expected", std::string(to_string(r.expected))},
                      {"observed", std::string(to_string(r.observed))},
                      {"source", r.source == Source::Asserted ? "asserted" : "computed"},
                      {"window_consistent", r.window_consistent},
                      {"satisfied", r.satisfied}});
    }
    json out{{"construction", cert.construction},
             {"equation", cert.equation()},
             {"window", cert.window},
             {"identity_holds", cert.identity_holds},
             {"factors", std::move(factors)},
             {"requirements", std::move(reqs)},
             {"verified", cert.verified}};
    out["first_mismatch"]
        = cert.first_mismatch ? json(*cert.first_mismatch) : json(nullptr);
    return out;
  }

  namespace detail {

    class FunctionConstruction final : public LazyConstruction {
     public:
      explicit FunctionConstruction(std::function<Int(Int)> f)
          : _f(std::move(f)) {}

      Int eval(Int n) const override {
        return _f(n);
      }

     private:
      std::function<Int(Int)> _f;
    };

    inline Term make_lazy(std::string             name,
                          json                    params,
                          InvariantReport         metadata,
                          std::function<Int(Int)> f) {
      tighten(metadata);
      return Term::lazy(Term::LazyData{
          std::move(name),
          std::move(params),
          std::move(metadata),
          std::make_shared<FunctionConstruction>(std::move(f))});
    }

    inline RcaMap require_rca(Term const& t, std::string_view role) {
      if (auto map = as_rca(t)) {
        return *map;
      }
      throw PreconditionViolation(std::string(role) + " must be built from Rca leaves");
    }

    inline void require_flag(Term const& t, Flag f, std::string_view role) {
      if (classify(t)[f] != Tri::Yes) {
        throw PreconditionViolation(std::string(role) + " is not in "
                                    + std::string(flag_name(f)));
      }
    }

    inline Bounds exact(ExtNat v) {
      return Bounds::exactly(v);
    }

    inline ExtNat pred_sat(ExtNat x) {
      return x.is_inf() ? x : ExtNat::fin(std::max<Int>(x.value() - 1, 0));
    }

    //! Memoized prefixes of fibers {n : t(n) = y}.
    class FiberCache {
     public:
      explicit FiberCache(Term t) : _term(std::move(t)) {}

      //! The t-th smallest member of the fiber of y.
      Int member(Int y, Int t) {
        std::lock_guard<std::mutex> lock(_mutex);
        auto& entry = _fibers[y];
        if (!entry.stream) {
          entry.stream = fiber_stream(_term, y);
        }
        while (static_cast<Int>(entry.prefix.size()) <= t) {
          auto v = entry.stream->next();
          if (!v) {
            throw UnsupportedStructure("fiber of " + std::to_string(y)
                                       + " has fewer than "
                                       + std::to_string(t + 1)
                                       + " enumerable members");
          }
          entry.prefix.push_back(*v);
        }
        return entry.prefix[static_cast<std::size_t>(t)];
      }

     private:
      struct Entry {
        std::unique_ptr<FiberStream> stream;
        std::vector<Int>             prefix;
      };
      Term                               _term;
      std::mutex                         _mutex;
      std::unordered_map<Int, Entry>     _fibers;
    };

    //! K(alpha) for alpha = ColProj or Compose(ColProj, g) with g Rca.
    inline EPSet contractive_set(Term const& alpha) {
      if (alpha.is(Term::Kind::ColProj)) {
        return EPSet::naturals();
      }
      if (alpha.is(Term::Kind::Compose) && alpha.first().is(Term::Kind::ColProj)) {
        if (auto g = as_rca(alpha.second())) {
          return rca_image(*g);
        }
      }
      throw UnsupportedStructure(
          "alpha must be ColProj or Compose(ColProj, g) with g built from Rca "
          "leaves");
    }

    inline json params_of(Term const& alpha, Term const& beta, std::string role) {
      return json{{"alpha", term_to_json(alpha)},
                  {"beta", term_to_json(beta)},
                  {"role", std::move(role)}};
    }

  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Lazy factors
  ////////////////////////////////////////////////////////////////////////

  //! gamma(n) is the t-th member of the fiber of alpha over the k-th member
  //! of K(alpha), where k is the class of n under ker beta and t the rank of
  //! n inside that class. Injective.
  inline Term w_cp_gamma(Term const& alpha, Term const& beta) {
    EPSet const     K       = detail::contractive_set(alpha);
    auto            classes = std::make_shared<ClassIndex>(beta);
    auto            fibers  = std::make_shared<detail::FiberCache>(alpha);
    InvariantReport meta;
    meta.collapse              = detail::exact(ExtNat::fin(0));
    meta.contractive           = detail::exact(ExtNat::fin(0));
    meta.rank                  = detail::exact(ExtNat::inf());
    meta.infinite_kernel_class = Tri::No;
    meta.source                = Source::Asserted;
    return detail::make_lazy(
        "w_cp", detail::params_of(alpha, beta, "gamma"), meta,
        [K, classes, fibers](Int n) {
          return fibers->member(K.kth(classes->index_of(n)),
                                classes->rank_in_class(n));
        });
  }

  //! delta(y) = beta(representative of the class with the same position as
  //! y in K(alpha)) for y in K(alpha), and 0 elsewhere. Injective on
  //! K(alpha), so at most the fiber of 0 is infinite.
  inline Term w_cp_delta(Term const& alpha, Term const& beta) {
    EPSet const     K       = detail::contractive_set(alpha);
    EPSet const     outside = complement(K);
    auto            classes = std::make_shared<ClassIndex>(beta);
    auto const      rb      = term_invariants(beta);
    InvariantReport meta;
    meta.rank = detail::exact(ExtNat::inf());
    if (outside.is_empty()) {
      meta.collapse              = detail::exact(ExtNat::fin(0));
      meta.contractive           = detail::exact(ExtNat::fin(0));
      meta.infinite_kernel_class = Tri::No;
      meta.defect                = rb.defect;
      meta.image                 = rb.image;
    } else {
      ExtNat const d             = outside.card();
      meta.collapse              = Bounds{detail::pred_sat(d), d};
      meta.contractive           = detail::exact(ExtNat::fin(d.is_inf() ? 1 : 0));
      meta.infinite_kernel_class = d.is_inf() ? Tri::Yes : Tri::No;
      meta.defect = Bounds{detail::pred_sat(rb.defect.lo), rb.defect.hi};
      if (rb.image) {
        meta.image = eps_union(*rb.image, EPSet::finite({0}));
      }
    }
    meta.source = Source::Asserted;
    return detail::make_lazy(
        "w_cp", detail::params_of(alpha, beta, "delta"), meta,
        [K, classes, beta](Int y) {
          if (!K.contains(y)) {
            return Int(0);
          }
          return beta(classes->representative(K.count_below(y)));
        });
  }

  inline void check_dual_kind(Flag kind) {
    if (kind != Flag::IF && kind != Flag::FI) {
      throw InvalidArgument("w_dual kind must be IF or FI");
    }
  }

  //! gamma(n) = the k-th member of the least-element transversal A of
  //! ker alpha, where k is the class of n under ker beta; ker gamma = ker beta
  //! and im gamma = A.
  inline Term w_dual_gamma(Flag kind, Term const& alpha, Term const& beta) {
    check_dual_kind(kind);
    RcaMap const a       = detail::require_rca(alpha, "alpha");
    RcaMap const b       = detail::require_rca(beta, "beta");
    EPSet const  A       = rca_image(rca_section(a).map);
    auto         classes = std::make_shared<ClassIndex>(beta);
    auto const   rb      = to_report(rca_invariants(b));

    InvariantReport meta;
    meta.collapse              = rb.collapse;
    meta.contractive           = rb.contractive;
    meta.rank                  = rb.rank;
    meta.infinite_kernel_class = rb.infinite_kernel_class;
    meta.image                 = A;
    meta.source                = Source::Asserted;
    auto params                = detail::params_of(alpha, beta, "gamma");
    params["kind"]             = std::string(flag_name(kind));
    return detail::make_lazy("w_dual", std::move(params), meta,
                             [A, classes](Int n) {
                               return A.kth(classes->index_of(n));
                             });
  }

  //! On im alpha, delta(y) = beta(representative of the class whose position
  //! matches that of min alpha^{-1}(y) in A); the j-th point outside
  //! im alpha copies delta at the j-th point of im alpha.
  inline Term w_dual_delta(Flag kind, Term const& alpha, Term const& beta) {
    check_dual_kind(kind);
    RcaMap const a       = detail::require_rca(alpha, "alpha");
    RcaMap const b       = detail::require_rca(beta, "beta");
    auto const   section = rca_section(a);
    EPSet const  A       = rca_image(section.map);
    EPSet const  image   = section.domain;
    EPSet const  defect  = complement(image);
    auto         classes = std::make_shared<ClassIndex>(beta);
    auto const   ra      = to_report(rca_invariants(a));
    auto const   rb      = to_report(rca_invariants(b));

    InvariantReport meta;
    meta.collapse              = ra.defect;
    meta.contractive           = detail::exact(ExtNat::fin(0));
    meta.rank                  = rb.rank;
    meta.defect                = rb.defect;
    meta.image                 = rb.image;
    meta.infinite_kernel_class = Tri::No;
    meta.source                = Source::Asserted;
    auto params                = detail::params_of(alpha, beta, "delta");
    params["kind"]             = std::string(flag_name(kind));
    RcaMap const s             = section.map;
    return detail::make_lazy(
        "w_dual", std::move(params), meta,
        [A, image, defect, classes, s, b](Int y) {
          if (!image.contains(y)) {
            y = image.kth(defect.count_below(y));
          }
          return b(classes->representative(A.count_below(s(y))));
        });
  }

  //! gamma = beta after the least-element section on im alpha; the j-th
  //! point of D(alpha) goes to beta(ColProj(j)), so each fiber of gamma
  //! contains a whole pairing column of D(alpha).
  inline Term w_right_gen_cp_gamma(Term const& alpha, Term const& beta) {
    RcaMap const a       = detail::require_rca(alpha, "alpha");
    RcaMap const b       = detail::require_rca(beta, "beta");
    auto const   section = rca_section(a);
    EPSet const  image   = section.domain;
    EPSet const  defect  = complement(image);
    RcaMap const s       = section.map;

    InvariantReport meta;
    meta.collapse              = detail::exact(ExtNat::inf());
    meta.contractive           = detail::exact(ExtNat::inf());
    meta.rank                  = detail::exact(ExtNat::inf());
    meta.image                 = rca_image(b);
    meta.infinite_kernel_class = Tri::Yes;
    meta.source                = Source::Asserted;
    json params{{"alpha", term_to_json(alpha)}, {"beta", term_to_json(beta)}};
    return detail::make_lazy("w_right_gen_cp", std::move(params), meta,
                             [image, defect, s, b](Int n) {
                               if (image.contains(n)) {
                                 return b(s(n));
                               }
                               return b(column_of(defect.count_below(n)));
                             });
  }

  namespace detail {
    struct SquareData {
      Int   v0;
      EPSet fiber;
      EPSet rest;
    };

    inline SquareData square_data(RcaMap const& a) {
      std::optional<Int> v0;
      for (auto const& t : a.tails()) {
        if (t.is_const() && (!v0 || t.b < *v0)) {
          v0 = t.b;
        }
      }
      if (!v0) {
        throw NoInfiniteClass("alpha has no infinite kernel class");
      }
      EPSet fiber = rca_preimage(a, *v0);
      EPSet rest  = complement(fiber);
      return SquareData{*v0, std::move(fiber), std::move(rest)};
    }
  }  // namespace detail

  //! The j-th member of the infinite class of v0 goes to
  //! pair(2 ColProj(j), 0); the j-th point outside it goes to pair(2j, 1).
  inline Term cp_square_beta1(Term const& alpha) {
    auto const      data = detail::square_data(detail::require_rca(alpha, "alpha"));
    InvariantReport meta;
    meta.defect                = detail::exact(ExtNat::inf());
    meta.collapse              = detail::exact(ExtNat::inf());
    meta.contractive           = detail::exact(ExtNat::inf());
    meta.rank                  = detail::exact(ExtNat::inf());
    meta.infinite_kernel_class = Tri::Yes;
    meta.source                = Source::Asserted;
    json params{{"alpha", term_to_json(alpha)}, {"role", "beta1"}};
    return detail::make_lazy("cp_square", std::move(params), meta, [data](Int n) {
      if (data.fiber.contains(n)) {
        return pair(2 * column_of(data.fiber.count_below(n)), 0);
      }
      return pair(2 * data.rest.count_below(n), 1);
    });
  }

  //! pair(2k, 0) -> v0, pair(2j, 1) -> alpha(j-th point outside the class
  //! of v0), pair(2k + 1, j) -> k, everything else -> v0.
  inline Term cp_square_beta2(Term const& alpha) {
    RcaMap const    a    = detail::require_rca(alpha, "alpha");
    auto const      data = detail::square_data(a);
    InvariantReport meta;
    meta.collapse              = detail::exact(ExtNat::inf());
    meta.contractive           = detail::exact(ExtNat::inf());
    meta.rank                  = detail::exact(ExtNat::inf());
    meta.image                 = EPSet::naturals();
    meta.infinite_kernel_class = Tri::Yes;
    meta.source                = Source::Asserted;
    json params{{"alpha", term_to_json(alpha)}, {"role", "beta2"}};
    return detail::make_lazy("cp_square", std::move(params), meta, [data, a](Int y) {
      auto const [i, j] = unpair(y);
      if (i % 2 == 1) {
        return (i - 1) / 2;
      }
      if (j == 1 && ExtNat::fin(i / 2) < data.rest.card()) {
        return a(data.rest.kth(i / 2));
      }
      return data.v0;
    });
  }

  ////////////////////////////////////////////////////////////////////////
  // Constructions
  ////////////////////////////////////////////////////////////////////////

  //! For injective alpha, beta: gamma with compose(alpha, gamma) = beta and
  //! gamma not injective. gamma = alpha^{-1} beta on im alpha and
  //! min im beta on D(alpha).
  inline WitnessCertificate w_inj(Term const& alpha,
                                  Term const& beta,
                                  Int         window = default_window) {
    RcaMap const a = detail::require_rca(alpha, "alpha");
    RcaMap const b = detail::require_rca(beta, "beta");
    detail::require_flag(alpha, Flag::Inj, "alpha");
    detail::require_flag(beta, Flag::Inj, "beta");
    auto const   section = rca_section(a);
    RcaMap const gamma
        = rca_select(section.domain,
                     rca_compose(section.map, b),
                     RcaMap::constant(rca_image(b).min()));
    WitnessCertificate cert;
    cert.construction = "w_inj";
    cert.factors = {{"alpha", alpha}, {"beta", beta}, {"gamma", Term::rca(gamma)}};
    cert.lhs          = {"alpha", "gamma"};
    cert.rhs          = "beta";
    cert.window       = window;
    cert.requirements = {{"gamma", Flag::Inj, Tri::No}};
    verify(cert);
    return cert;
  }

  //! For surjective alpha, beta: delta = Compose(beta, s) with s the
  //! least-element section of alpha, so compose(delta, alpha) = beta and
  //! im delta lies in a proper transversal.
  inline WitnessCertificate w_sur(Term const& alpha,
                                  Term const& beta,
                                  Int         window = default_window) {
    RcaMap const a = detail::require_rca(alpha, "alpha");
    detail::require_rca(beta, "beta");
    detail::require_flag(alpha, Flag::Sur, "alpha");
    detail::require_flag(beta, Flag::Sur, "beta");
    Term const delta = compose(beta, Term::rca(rca_section(a).map));
    WitnessCertificate cert;
    cert.construction = "w_sur";
    cert.factors      = {{"alpha", alpha}, {"beta", beta}, {"delta", delta}};
    cert.lhs          = {"delta", "alpha"};
    cert.rhs          = "beta";
    cert.window       = window;
    cert.requirements = {{"delta", Flag::Sur, Tri::No}};
    verify(cert);
    return cert;
  }

  //! For alpha, beta with infinitely many infinite fibers: gamma injective
  //! and delta with at most one infinite fiber such that
  //! compose(compose(gamma, alpha), delta) = beta.
  inline WitnessCertificate w_cp(Term const& alpha,
                                 Term const& beta,
                                 Int         window = default_window) {
    detail::require_flag(alpha, Flag::Cp, "alpha");
    detail::require_flag(beta, Flag::Cp, "beta");
    WitnessCertificate cert;
    cert.construction = "w_cp";
    cert.factors      = {{"alpha", alpha},
                         {"beta", beta},
                         {"gamma", w_cp_gamma(alpha, beta)},
                         {"delta", w_cp_delta(alpha, beta)}};
    cert.lhs          = {"gamma", "alpha", "delta"};
    cert.rhs          = "beta";
    cert.window       = window;
    cert.requirements = {{"gamma", Flag::Cp, Tri::No}, {"delta", Flag::Cp, Tri::No}};
    verify(cert);
    return cert;
  }

  //! For alpha, beta both in IF (or both in FI): gamma with ker gamma =
  //! ker beta and im gamma a transversal of ker alpha, and delta, neither in
  //! the class, with compose(compose(gamma, alpha), delta) = beta.
  inline WitnessCertificate w_dual(Flag        kind,
                                   Term const& alpha,
                                   Term const& beta,
                                   Int         window = default_window) {
    check_dual_kind(kind);
    detail::require_rca(alpha, "alpha");
    detail::require_rca(beta, "beta");
    detail::require_flag(alpha, kind, "alpha");
    detail::require_flag(beta, kind, "beta");
    WitnessCertificate cert;
    cert.construction = "w_dual";
    cert.factors      = {{"alpha", alpha},
                         {"beta", beta},
                         {"gamma", w_dual_gamma(kind, alpha, beta)},
                         {"delta", w_dual_delta(kind, alpha, beta)}};
    cert.lhs          = {"gamma", "alpha", "delta"};
    cert.rhs          = "beta";
    cert.window       = window;
    cert.requirements = {{"gamma", kind, Tri::No}, {"delta", kind, Tri::No}};
    verify(cert);
    return cert;
  }

  //! For injective beta and a permutation alpha: gamma = identity on D(beta)
  //! and beta^{-1} alpha on im beta, so compose(beta, gamma) = alpha and
  //! gamma is surjective but not injective.
  inline WitnessCertificate w_sym_from_inj(Term const& beta,
                                           Term const& alpha,
                                           Int         window = default_window) {
    RcaMap const b = detail::require_rca(beta, "beta");
    RcaMap const a = detail::require_rca(alpha, "alpha");
    detail::require_flag(beta, Flag::Inj, "beta");
    detail::require_flag(alpha, Flag::Sym, "alpha");
    auto const   section = rca_section(b);
    RcaMap const gamma   = rca_select(
        section.domain, rca_compose(section.map, a), RcaMap::identity());
    WitnessCertificate cert;
    cert.construction = "w_sym_from_inj";
    cert.factors = {{"beta", beta}, {"alpha", alpha}, {"gamma", Term::rca(gamma)}};
    cert.lhs          = {"beta", "gamma"};
    cert.rhs          = "alpha";
    cert.window       = window;
    cert.requirements = {{"gamma", Flag::Sur, Tri::Yes}};
    verify(cert);
    return cert;
  }

  //! For alpha = ColProj and injective beta: gamma = Compose(beta, ColEmbed)
  //! lands in the transversal im ColEmbed, so compose(gamma, alpha) = beta
  //! and gamma is in FI.
  inline WitnessCertificate w_left_gen_fi(Term const& alpha,
                                          Term const& beta,
                                          Int         window = default_window) {
    detail::require_flag(alpha, Flag::Cp, "alpha");
    detail::require_flag(alpha, Flag::Sur, "alpha");
    if (!alpha.is(Term::Kind::ColProj)) {
      throw UnsupportedStructure("alpha must be ColProj");
    }
    detail::require_rca(beta, "beta");
    detail::require_flag(beta, Flag::Inj, "beta");
    WitnessCertificate cert;
    cert.construction = "w_left_gen_fi";
    cert.factors      = {
        {"alpha", alpha}, {"beta", beta}, {"gamma", compose(beta, Term::colembed())}};
    cert.lhs          = {"gamma", "alpha"};
    cert.rhs          = "beta";
    cert.window       = window;
    cert.requirements = {{"gamma", Flag::FI, Tri::Yes}};
    verify(cert);
    return cert;
  }

  namespace detail {
    //! i -> t_min(i, |T| - 1) for finite T; for infinite T, 2i -> t_i and
    //! 2i + 1 -> t_0, which is onto T and hits t_0 infinitely often.
    inline RcaMap target_list(EPSet const& T) {
      if (T.is_finite()) {
        std::vector<Int> members = T.members_below(T.threshold());
        Int const        last    = members.back();
        Int const        size    = static_cast<Int>(members.size());
        return RcaMap(size,
                      1,
                      std::move(members),
                      {TailRule::constant(last)})
            .simplified();
      }
      RcaMap const half(0, 2, {}, {TailRule::affine(1, 0), TailRule::affine(1, 0)});
      return rca_select(EPSet::progression(0, 2),
                        rca_compose(half, eps_kth_map(T)),
                        RcaMap::constant(T.min()));
    }
  }  // namespace detail

  //! For alpha in FI and injective, beta injective: gamma with
  //! compose(alpha, gamma) = beta and gamma in IF (kind IF) or in Cp
  //! (kind Cp).
  inline WitnessCertificate w_right_gen(Flag        kind,
                                        Term const& alpha,
                                        Term const& beta,
                                        Int         window = default_window) {
    if (kind != Flag::IF && kind != Flag::Cp) {
      throw InvalidArgument("w_right_gen kind must be IF or Cp");
    }
    RcaMap const a = detail::require_rca(alpha, "alpha");
    RcaMap const b = detail::require_rca(beta, "beta");
    detail::require_flag(alpha, Flag::FI, "alpha");
    detail::require_flag(alpha, Flag::Inj, "alpha");
    detail::require_flag(beta, Flag::Inj, "beta");
    Term gamma = Term::colproj();
    if (kind == Flag::IF) {
      auto const  section = rca_section(a);
      EPSet const defect  = complement(section.domain);
      EPSet const targets = eps_union(complement(rca_image(b)), EPSet::finite({a(0)}));
      gamma               = Term::rca(
          rca_select(section.domain,
                     rca_compose(section.map, b),
                     rca_compose(eps_count_map(defect), detail::target_list(targets))));
    } else {
      gamma = w_right_gen_cp_gamma(alpha, beta);
    }
    WitnessCertificate cert;
    cert.construction = kind == Flag::IF ? "w_right_gen_if" : "w_right_gen_cp";
    cert.factors      = {{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}};
    cert.lhs          = {"alpha", "gamma"};
    cert.rhs          = "beta";
    cert.window       = window;
    cert.requirements = {{"gamma", kind, Tri::Yes}};
    verify(cert);
    return cert;
  }

  //! For alpha with an infinite kernel class: beta1, beta2, each with
  //! infinitely many infinite fibers, with compose(beta1, beta2) = alpha.
  inline WitnessCertificate cp_square(Term const& alpha, Int window = default_window) {
    WitnessCertificate cert;
    cert.construction = "cp_square";
    cert.factors      = {{"alpha", alpha},
                         {"beta1", cp_square_beta1(alpha)},
                         {"beta2", cp_square_beta2(alpha)}};
    cert.lhs          = {"beta1", "beta2"};
    cert.rhs          = "alpha";
    cert.window       = window;
    cert.requirements = {{"beta1", Flag::Cp, Tri::Yes}, {"beta2", Flag::Cp, Tri::Yes}};
    verify(cert);
    return cert;
  }

}  // namespace tnat

#endif  // TNAT_WITNESSES_HPP_
