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

#ifndef TNAT_RCA_HPP_
#define TNAT_RCA_HPP_

#include <algorithm>  // for max, min, sort, unique
#include <cstdlib>    // for abs
#include <map>        // for map
#include <numeric>    // for gcd
#include <optional>   // for optional
#include <string>     // for string
#include <vector>     // for vector

#include "tnat/detail/arith.hpp"
#include "tnat/epset.hpp"
#include "tnat/extnat.hpp"

namespace tnat {

  //! The rule applied to one residue class beyond the patch. With
  //! q = (n - r) / m, an affine rule sends n to a q + b and a constant rule
  //! sends n to b.
  struct TailRule {
    enum class Kind { Const, Affine };

    Kind kind = Kind::Const;
    Int  a    = 0;
    Int  b    = 0;

    static TailRule constant(Int b) {
      return TailRule{Kind::Const, 0, b};
    }

    static TailRule affine(Int a, Int b) {
      return TailRule{Kind::Affine, a, b};
    }

    bool is_const() const noexcept {
      return kind == Kind::Const;
    }

    Int apply(Int q) const {
      return is_const() ? b : detail::add(detail::mul(a, q), b);
    }

    bool operator==(TailRule const&) const = default;
  };

  //! A residue-class affine transformation of N: a finite patch of images of
  //! 0, ..., N - 1 followed by one TailRule per residue modulo m.
  //!
  //! Invariants: m >= 1, m divides N, the patch has N nonnegative entries,
  //! affine slopes are positive and every tail value is nonnegative. Any
  //! RcaMap has at most m infinite fibers, so it never lies in C_p.
  class RcaMap {
   public:
    RcaMap() : RcaMap(0, 1, {}, {TailRule::affine(1, 0)}) {}

    RcaMap(Int threshold,
           Int modulus,
           std::vector<Int> patch,
           std::vector<TailRule> tails)
        : _threshold(threshold),
          _modulus(modulus),
          _patch(std::move(patch)),
          _tails(std::move(tails)) {
      validate();
    }

    static RcaMap identity() {
      return RcaMap();
    }

    static RcaMap affine(Int a, Int b) {
      return RcaMap(0, 1, {}, {TailRule::affine(a, b)});
    }

    static RcaMap constant(Int c) {
      return RcaMap(0, 1, {}, {TailRule::constant(c)});
    }

    Int threshold() const noexcept {
      return _threshold;
    }

    Int modulus() const noexcept {
      return _modulus;
    }

    std::vector<Int> const& patch() const noexcept {
      return _patch;
    }

    std::vector<TailRule> const& tails() const noexcept {
      return _tails;
    }

    //! The least quotient q used by the tails: n >= N means q >= N / m.
    Int first_quotient() const noexcept {
      return _threshold / _modulus;
    }

    Int operator()(Int n) const {
      if (n < 0) {
        throw InvalidArgument("RcaMap evaluated at a negative point");
      }
      if (n < _threshold) {
        return _patch[n];
      }
      return _tails[n % _modulus].apply(n / _modulus);
    }

    bool has_const_tail() const {
      return std::any_of(_tails.begin(), _tails.end(), [](TailRule const& t) {
        return t.is_const();
      });
    }

    //! The same map written with a larger modulus and threshold. \p modulus
    //! must be a multiple of m() and \p threshold a multiple of \p modulus
    //! that is at least N().
    RcaMap refined(Int modulus, Int threshold) const {
      if (modulus % _modulus != 0 || threshold % modulus != 0
          || threshold < _threshold) {
        throw InvalidArgument("RcaMap::refined: incompatible modulus/threshold");
      }
      Int const             factor = modulus / _modulus;
      std::vector<TailRule> tails;
      tails.reserve(modulus);
      for (Int rho = 0; rho < modulus; ++rho) {
        Int const       r    = rho % _modulus;
        TailRule const& rule = _tails[r];
        if (rule.is_const()) {
          tails.push_back(rule);
        } else {
          // n = modulus Q + rho, so q = factor Q + (rho - r) / m
          Int const s = (rho - r) / _modulus;
          tails.push_back(TailRule::affine(
              detail::mul(rule.a, factor),
              detail::add(detail::mul(rule.a, s), rule.b)));
        }
      }
      std::vector<Int> patch(_patch);
      for (Int n = _threshold; n < threshold; ++n) {
        patch.push_back((*this)(n));
      }
      return RcaMap(threshold, modulus, std::move(patch), std::move(tails));
    }

    //! Reduces the modulus to the least one that expresses the same tails,
    //! then drops trailing patch blocks that the tails reproduce.
    RcaMap simplified() const {
      RcaMap result = *this;
      for (Int d : detail::divisors(_modulus)) {
        if (d == _modulus) {
          break;
        }
        if (auto tails = coarsen(d)) {
          result = RcaMap(_threshold, d, _patch, std::move(*tails));
          break;
        }
      }
      Int const m = result._modulus;
      while (result._threshold > 0) {
        Int const lo       = result._threshold - m;
        bool      matches  = true;
        for (Int n = lo; n < result._threshold && matches; ++n) {
          matches = result._tails[n % m].apply(n / m) == result._patch[n];
        }
        if (!matches) {
          break;
        }
        result._patch.resize(lo);
        result._threshold = lo;
      }
      return result;
    }

    bool operator==(RcaMap const&) const = default;

   private:
    std::optional<std::vector<TailRule>> coarsen(Int d) const {
      std::vector<std::optional<TailRule>> out(d);
      for (Int r = 0; r < _modulus; ++r) {
        TailRule const& rule = _tails[r];
        Int const       rd   = r % d;
        TailRule        candidate;
        if (rule.is_const()) {
          candidate = rule;
        } else {
          // n = m q + r = d q_d + rd with q_d = (m / d) q + (r - rd) / d
          if (detail::mul(rule.a, d) % _modulus != 0) {
            return std::nullopt;
          }
          Int const ad = rule.a * d / _modulus;
          candidate    = TailRule::affine(ad, rule.b - ad * ((r - rd) / d));
        }
        if (!out[rd]) {
          out[rd] = candidate;
        } else if (!(*out[rd] == candidate)) {
          return std::nullopt;
        }
      }
      std::vector<TailRule> tails;
      for (auto& t : out) {
        tails.push_back(*t);
      }
      return tails;
    }

    void validate() const {
      if (_modulus < 1) {
        throw InvalidArgument("RcaMap modulus must be >= 1");
      }
      if (_threshold < 0 || _threshold % _modulus != 0) {
        throw InvalidArgument("RcaMap threshold must be a nonnegative "
                              "multiple of the modulus");
      }
      if (static_cast<Int>(_patch.size()) != _threshold) {
        throw InvalidArgument("RcaMap patch must have exactly N entries");
      }
      if (static_cast<Int>(_tails.size()) != _modulus) {
        throw InvalidArgument("RcaMap needs one tail rule per residue");
      }
      for (Int v : _patch) {
        if (v < 0) {
          throw InvalidArgument("RcaMap patch values must be nonnegative");
        }
      }
      Int const q0 = first_quotient();
      for (auto const& t : _tails) {
        if (t.is_const()) {
          if (t.b < 0) {
            throw InvalidArgument("RcaMap const tail value must be >= 0");
          }
        } else {
          if (t.a < 1) {
            throw InvalidArgument("RcaMap affine slope must be positive");
          }
          if (t.apply(q0) < 0) {
            throw InvalidArgument(
                "RcaMap affine tail attains a negative value");
          }
        }
      }
    }

    Int                   _threshold;
    Int                   _modulus;
    std::vector<Int>      _patch;
    std::vector<TailRule> _tails;
  };

  inline Int rca_eval(RcaMap const& alpha, Int n) {
    return alpha(n);
  }

  //! n -> beta(alpha(n)): alpha is applied first.
  //!
  //! Each residue class of alpha is split until its affine image lies in a
  //! single residue class of beta, and the threshold is raised until every
  //! image lies beyond beta's patch; the result is exact.
  inline RcaMap rca_compose(RcaMap const& alpha, RcaMap const& beta) {
    Int const m  = alpha.modulus();
    Int const mb = beta.modulus();
    Int       split = 1;
    for (auto const& t : alpha.tails()) {
      if (!t.is_const()) {
        split = detail::lcm(split, mb / std::gcd(t.a, mb));
      }
    }
    Int const modulus = detail::mul(m, split);

    Int q_start = detail::ceil_div(alpha.threshold(), modulus);
    for (Int rho = 0; rho < modulus; ++rho) {
      TailRule const& t = alpha.tails()[rho % m];
      if (t.is_const()) {
        continue;
      }
      Int const A = detail::mul(t.a, split);
      Int const B = detail::add(detail::mul(t.a, (rho - rho % m) / m), t.b);
      if (B < beta.threshold()) {
        q_start = std::max(q_start, detail::ceil_div(beta.threshold() - B, A));
      }
    }
    Int const threshold = detail::mul(modulus, q_start);

    std::vector<TailRule> tails;
    tails.reserve(modulus);
    for (Int rho = 0; rho < modulus; ++rho) {
      TailRule const& t = alpha.tails()[rho % m];
      if (t.is_const()) {
        tails.push_back(TailRule::constant(beta(t.b)));
        continue;
      }
      // alpha(n) = A Q + B for n = modulus Q + rho, and mb divides A
      Int const       A  = detail::mul(t.a, split);
      Int const       B  = detail::add(detail::mul(t.a, (rho - rho % m) / m), t.b);
      Int const       rb = detail::mod(B, mb);
      TailRule const& u  = beta.tails()[rb];
      if (u.is_const()) {
        tails.push_back(u);
      } else {
        tails.push_back(TailRule::affine(
            detail::mul(u.a, A / mb),
            detail::add(detail::mul(u.a, (B - rb) / mb), u.b)));
      }
    }
    std::vector<Int> patch;
    patch.reserve(threshold);
    for (Int n = 0; n < threshold; ++n) {
      patch.push_back(beta(alpha(n)));
    }
    return RcaMap(threshold, modulus, std::move(patch), std::move(tails))
        .simplified();
  }

  //! The map agreeing with \p inside on \p where and with \p outside
  //! elsewhere.
  inline RcaMap rca_select(EPSet const&  where,
                           RcaMap const& inside,
                           RcaMap const& outside) {
    Int const modulus = detail::lcm(
        detail::lcm(inside.modulus(), outside.modulus()), where.modulus());
    Int const threshold = detail::round_up(
        std::max({inside.threshold(), outside.threshold(), where.threshold()}),
        modulus);
    RcaMap const          in  = inside.refined(modulus, threshold);
    RcaMap const          out = outside.refined(modulus, threshold);
    std::vector<TailRule> tails;
    for (Int rho = 0; rho < modulus; ++rho) {
      tails.push_back(where.in_tail(rho) ? in.tails()[rho] : out.tails()[rho]);
    }
    std::vector<Int> patch;
    for (Int n = 0; n < threshold; ++n) {
      patch.push_back(where.contains(n) ? inside(n) : outside(n));
    }
    return RcaMap(threshold, modulus, std::move(patch), std::move(tails))
        .simplified();
  }

  namespace detail {
    struct Progression {
      Int residue;  // domain residue class r
      Int a;
      Int b;
      Int start;  // least value a q0 + b
    };

    inline std::vector<Progression> progressions(RcaMap const& alpha) {
      std::vector<Progression> out;
      Int const                q0 = alpha.first_quotient();
      for (Int r = 0; r < alpha.modulus(); ++r) {
        auto const& t = alpha.tails()[r];
        if (!t.is_const()) {
          out.push_back({r, t.a, t.b, t.apply(q0)});
        }
      }
      return out;
    }

    inline bool on_progression(Progression const& p, Int y) {
      return y >= p.start && mod(y - p.b, p.a) == 0;
    }

    inline bool progressions_meet(Progression const& p, Progression const& q) {
      return mod(p.start - q.start, std::gcd(p.a, q.a)) == 0;
    }
  }  // namespace detail

  inline EPSet rca_image(RcaMap const& alpha) {
    std::vector<Int> finite(alpha.patch());
    for (auto const& t : alpha.tails()) {
      if (t.is_const()) {
        finite.push_back(t.b);
      }
    }
    EPSet image = EPSet::finite(std::move(finite));
    for (auto const& p : detail::progressions(alpha)) {
      image = eps_union(image, EPSet::progression(p.start, p.a));
    }
    return image;
  }

  //! {n : alpha(n) = y}
  inline EPSet rca_preimage(RcaMap const& alpha, Int y) {
    std::vector<Int> points;
    for (Int n = 0; n < alpha.threshold(); ++n) {
      if (alpha.patch()[n] == y) {
        points.push_back(n);
      }
    }
    for (auto const& p : detail::progressions(alpha)) {
      if (detail::on_progression(p, y)) {
        points.push_back(
            detail::add(detail::mul(alpha.modulus(), (y - p.b) / p.a), p.residue));
      }
    }
    EPSet fiber = EPSet::finite(std::move(points));
    for (Int r = 0; r < alpha.modulus(); ++r) {
      auto const& t = alpha.tails()[r];
      if (t.is_const() && t.b == y) {
        fiber = eps_union(
            fiber, EPSet::residue_class(alpha.threshold(), alpha.modulus(), r));
      }
    }
    return fiber;
  }

  //! min alpha^{-1}(y), if y is in the image.
  inline std::optional<Int> least_preimage(RcaMap const& alpha, Int y) {
    for (Int n = 0; n < alpha.threshold(); ++n) {
      if (alpha.patch()[n] == y) {
        return n;
      }
    }
    std::optional<Int> best;
    auto               offer = [&best](Int n) {
      if (!best || n < *best) {
        best = n;
      }
    };
    for (Int r = 0; r < alpha.modulus(); ++r) {
      auto const& t = alpha.tails()[r];
      if (t.is_const() && t.b == y) {
        offer(alpha.threshold() + r);
      }
    }
    for (auto const& p : detail::progressions(alpha)) {
      if (detail::on_progression(p, y)) {
        offer(alpha.modulus() * ((y - p.b) / p.a) + p.residue);
      }
    }
    return best;
  }

  //! Exact invariants of an RcaMap.
  struct RcaInvariants {
    ExtNat           defect;
    ExtNat           collapse;
    ExtNat           contractive;  // k: number of infinite fibers
    ExtNat           rank;
    EPSet            image;
    EPSet            defect_set;
    std::vector<Int> infinite_fiber_values;  // K
    bool             has_infinite_kernel_class = false;
  };

  //! Collapse is infinite iff there is a constant tail or two affine image
  //! progressions meet (then they meet infinitely often). Otherwise every
  //! tail value is hit once by the tails and the only collisions involve
  //! patch values, which are counted directly.
  inline RcaInvariants rca_invariants(RcaMap const& alpha) {
    RcaInvariants out;
    out.image      = rca_image(alpha);
    out.defect_set = complement(out.image);
    out.defect     = out.defect_set.card();
    out.rank       = out.image.card();
    for (auto const& t : alpha.tails()) {
      if (t.is_const()) {
        out.infinite_fiber_values.push_back(t.b);
      }
    }
    auto& K = out.infinite_fiber_values;
    std::sort(K.begin(), K.end());
    K.erase(std::unique(K.begin(), K.end()), K.end());
    out.contractive = ExtNat::fin(static_cast<Int>(K.size()));
    out.has_infinite_kernel_class = !K.empty();

    auto const progs     = detail::progressions(alpha);
    bool       infinite  = out.has_infinite_kernel_class;
    for (std::size_t i = 0; i < progs.size() && !infinite; ++i) {
      for (std::size_t j = i + 1; j < progs.size() && !infinite; ++j) {
        infinite = detail::progressions_meet(progs[i], progs[j]);
      }
    }
    if (infinite) {
      out.collapse = ExtNat::inf();
      return out;
    }
    std::map<Int, Int> patch_count;
    for (Int v : alpha.patch()) {
      ++patch_count[v];
    }
    Int c = 0;
    for (auto const& [v, count] : patch_count) {
      bool const in_tail = std::any_of(
          progs.begin(), progs.end(), [v = v](detail::Progression const& p) {
            return detail::on_progression(p, v);
          });
      c += count + (in_tail ? 1 : 0) - 1;
    }
    out.collapse = ExtNat::fin(c);
    return out;
  }

  //! The least-element section of alpha: s(y) = min alpha^{-1}(y) for y in
  //! the image (which is returned as the domain) and s(y) = 0 elsewhere.
  struct Section {
    RcaMap map;
    EPSet  domain;
  };

  inline Section rca_section(RcaMap const& alpha) {
    auto const progs = detail::progressions(alpha);
    Int const  m     = alpha.modulus();

    Int period = 1;
    for (auto const& p : progs) {
      period = detail::lcm(period, p.a);
    }
    // Beyond `bound` a value is hit only by tails, membership in each
    // progression depends only on y mod period, and the order of the
    // candidate preimages m (y - b) / a + r no longer changes.
    Int bound = 0;
    for (Int v : alpha.patch()) {
      bound = std::max(bound, v + 1);
    }
    for (auto const& t : alpha.tails()) {
      if (t.is_const()) {
        bound = std::max(bound, t.b + 1);
      }
    }
    for (auto const& p : progs) {
      bound = std::max(bound, p.start);
    }
    for (auto const& p : progs) {
      for (auto const& q : progs) {
        if (p.a >= q.a) {
          continue;
        }
        // (n_p(y) - n_q(y)) a_p a_q = m y (a_q - a_p) + C
        Int const C = detail::mul(detail::mul(-m, p.b), q.a)
                      + detail::mul(detail::mul(p.residue, p.a), q.a)
                      + detail::mul(detail::mul(m, q.b), p.a)
                      - detail::mul(detail::mul(q.residue, p.a), q.a);
        bound = std::max(bound, std::abs(C) / (m * (q.a - p.a)) + 1);
      }
    }
    Int const threshold = detail::round_up(bound, period);

    std::vector<TailRule> tails;
    for (Int rho = 0; rho < period; ++rho) {
      Int const            y = threshold + rho;
      detail::Progression const* winner = nullptr;
      Int                  best   = 0;
      for (auto const& p : progs) {
        if (detail::on_progression(p, y)) {
          Int const n = m * ((y - p.b) / p.a) + p.residue;
          if (winner == nullptr || n < best) {
            winner = &p;
            best   = n;
          }
        }
      }
      if (winner == nullptr) {
        tails.push_back(TailRule::constant(0));
      } else {
        // y = period Q + rho gives n = (m period / a) Q + m (rho - b) / a + r
        tails.push_back(TailRule::affine(
            detail::mul(m, period / winner->a),
            detail::mul(m, (rho - winner->b) / winner->a) + winner->residue));
      }
    }
    std::vector<Int> patch;
    for (Int y = 0; y < threshold; ++y) {
      patch.push_back(least_preimage(alpha, y).value_or(0));
    }
    return Section{
        RcaMap(threshold, period, std::move(patch), std::move(tails)).simplified(),
        rca_image(alpha)};
  }

  //! k -> kth(S, k) for an infinite EPSet S.
  inline RcaMap eps_kth_map(EPSet const& s) {
    if (s.is_finite()) {
      throw InvalidArgument("eps_kth_map needs an infinite set");
    }
    auto const first = s.first_period();
    Int const  r     = static_cast<Int>(first.size());
    Int const  f     = static_cast<Int>(s.patch().size());
    Int const  start = detail::round_up(f, r);
    std::vector<Int> patch;
    for (Int k = 0; k < start; ++k) {
      patch.push_back(s.kth(k));
    }
    std::vector<TailRule> tails;
    for (Int rho = 0; rho < r; ++rho) {
      // k = r Q + rho, k - f = r (Q + (rho - f - j) / r) + j
      Int const j = detail::mod(rho - f, r);
      tails.push_back(TailRule::affine(
          s.modulus(), first[j] + s.modulus() * ((rho - f - j) / r)));
    }
    return RcaMap(start, r, std::move(patch), std::move(tails)).simplified();
  }

  //! n -> |{s in S : s < n}|, i.e. the position of n within S for n in S.
  inline RcaMap eps_count_map(EPSet const& s) {
    Int const m     = s.modulus();
    Int const start = detail::round_up(s.threshold(), m);
    std::vector<Int> patch;
    for (Int n = 0; n < start; ++n) {
      patch.push_back(s.count_below(n));
    }
    std::vector<TailRule> tails;
    Int const             base = s.count_below(start);
    Int const             per  = static_cast<Int>(s.residues().size());
    for (Int rho = 0; rho < m; ++rho) {
      // n = m Q + rho: count = base + per (Q - start / m) + #{r in R : r < rho}
      Int const below = std::lower_bound(s.residues().begin(),
                                         s.residues().end(),
                                         rho)
                        - s.residues().begin();
      if (per == 0) {
        tails.push_back(TailRule::constant(base));
      } else {
        tails.push_back(
            TailRule::affine(per, base - per * (start / m) + below));
      }
    }
    return RcaMap(start, m, std::move(patch), std::move(tails)).simplified();
  }

}  // namespace tnat

#endif  // TNAT_RCA_HPP_
