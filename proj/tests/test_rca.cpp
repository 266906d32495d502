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

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "catch_amalgamated.hpp"
#include "support/generators.hpp"
#include "tnat/rca.hpp"

using namespace tnat;
using testing::Generator;

namespace {

  RcaMap const succ = RcaMap::affine(1, 1);
  RcaMap const dbl  = RcaMap::affine(2, 0);
  RcaMap const half(0, 2, {}, {TailRule::affine(1, 0), TailRule::affine(1, 0)});
  RcaMap const pred(1, 1, {0}, {TailRule::affine(1, -1)});
  RcaMap const cst0 = RcaMap::constant(0);
  RcaMap const mix(0, 2, {}, {TailRule::constant(5), TailRule::affine(1, 0)});

  // Under the generator's bounds a tail value a q + b >= q - 2, so every
  // preimage of y < Y lies below N + m (Y + 3).
  Int preimage_bound(RcaMap const& a, Int Y) {
    return a.threshold() + a.modulus() * (Y + 3);
  }

  std::map<Int, Int> fiber_sizes(RcaMap const& a, Int window) {
    std::map<Int, Int> sizes;
    for (Int n = 0; n < window; ++n) {
      ++sizes[a(n)];
    }
    return sizes;
  }

  Int observed_collisions(RcaMap const& a, Int window) {
    return window - static_cast<Int>(fiber_sizes(a, window).size());
  }

}  // namespace

TEST_CASE("rca_eval examples", "[rca]") {
  CHECK(rca_eval(succ, 0) == 1);
  CHECK(rca_eval(mix, 4) == 5);
  CHECK(rca_eval(pred, 0) == 0);
  CHECK(rca_eval(pred, 7) == 6);
  CHECK(rca_eval(half, 7) == 3);
}

TEST_CASE("RcaMap rejects invalid descriptions", "[rca]") {
  CHECK_THROWS_AS(RcaMap(0, 1, {}, {TailRule::affine(0, 3)}), InvalidArgument);
  CHECK_THROWS_AS(RcaMap(0, 1, {}, {TailRule::affine(1, -1)}), InvalidArgument);
  CHECK_THROWS_AS(RcaMap(1, 2, {0}, {TailRule::constant(0), TailRule::constant(0)}),
                  InvalidArgument);
  CHECK_THROWS_AS(RcaMap(0, 1, {}, {}), InvalidArgument);
}

TEST_CASE("rca_compose examples", "[rca]") {
  CHECK(rca_compose(dbl, half) == RcaMap::identity());
  auto const floor_even = rca_compose(half, dbl);
  for (Int n = 0; n < 100; ++n) {
    CHECK(floor_even(n) == 2 * (n / 2));
  }
  auto const plus2 = rca_compose(succ, succ);
  CHECK(plus2 == RcaMap::affine(1, 2));
  CHECK(rca_invariants(plus2).defect == ExtNat::fin(2));
}

TEST_CASE("rca_invariants examples", "[rca]") {
  auto const s = rca_invariants(succ);
  CHECK(s.defect == ExtNat::fin(1));
  CHECK(s.collapse == ExtNat::fin(0));
  CHECK(s.contractive == ExtNat::fin(0));
  CHECK(s.rank == ExtNat::inf());

  auto const c = rca_invariants(cst0);
  CHECK(c.rank == ExtNat::fin(1));
  CHECK(c.defect == ExtNat::inf());
  CHECK(c.collapse == ExtNat::inf());
  CHECK(c.contractive == ExtNat::fin(1));
  CHECK(c.has_infinite_kernel_class);

  // window oracle: every value below 5000 is hit and the fiber of 5 grows
  auto const sizes = fiber_sizes(mix, 10'000);
  for (Int y = 0; y < 5000; ++y) {
    REQUIRE(sizes.count(y) == 1);
  }
  CHECK(fiber_sizes(mix, 5000).at(5) < sizes.at(5));
  auto const m = rca_invariants(mix);
  CHECK(m.defect == ExtNat::fin(0));
  CHECK(m.collapse == ExtNat::inf());
  CHECK(m.contractive == ExtNat::fin(1));
  CHECK(m.rank == ExtNat::inf());
  CHECK(m.infinite_fiber_values == std::vector<Int>{5});
}

TEST_CASE("rca_section examples", "[rca]") {
  auto const h = rca_section(half);
  CHECK(h.domain == EPSet::naturals());
  for (Int y = 0; y < 100; ++y) {
    CHECK(h.map(y) == 2 * y);
  }

  // brute-force least preimages of pred on [0, 100)
  auto const p = rca_section(pred);
  CHECK(p.domain == EPSet::naturals());
  for (Int y = 0; y < 100; ++y) {
    Int least = 0;
    while (pred(least) != y) {
      ++least;
    }
    CHECK(p.map(y) == least);
  }
  CHECK(p.map(0) == 0);
  CHECK(p.map(1) == 2);

  auto const x = rca_section(mix);
  CHECK(x.map(5) == 0);
  for (Int y = 0; y < 100; ++y) {
    if (y != 5) {
      CHECK(x.map(y) == 2 * y + 1);
    }
  }
}

TEST_CASE("eps_kth_map and eps_count_map", "[rca]") {
  Generator g(21);
  for (int trial = 0; trial < 200; ++trial) {
    Int const        m = g.uniform(1, 5);
    Int const        N = g.uniform(0, 7);
    std::vector<Int> R{g.uniform(0, m - 1)};
    std::vector<Int> F;
    for (Int n = 0; n < N; ++n) {
      if (g.chance(0.5)) {
        F.push_back(n);
      }
    }
    EPSet const  s     = EPSet::make(N, m, R, F);
    RcaMap const kth   = eps_kth_map(s);
    RcaMap const count = eps_count_map(s);
    for (Int k = 0; k < 200; ++k) {
      REQUIRE(kth(k) == s.kth(k));
      REQUIRE(count(k) == s.count_below(k));
    }
  }
}

TEST_CASE("composition agrees with pointwise application", "[rca][property]") {
  Generator g(1);
  for (int trial = 0; trial < 500; ++trial) {
    RcaMap const a  = g.rca();
    RcaMap const b  = g.rca();
    RcaMap const ab = rca_compose(a, b);
    for (Int n = 0; n < 2000; ++n) {
      REQUIRE(ab(n) == b(a(n)));
    }
  }
}

TEST_CASE("subadditivity and monotone bounds", "[rca][property]") {
  Generator g(2);
  for (int trial = 0; trial < 500; ++trial) {
    RcaMap const a  = g.rca();
    RcaMap const b  = g.rca();
    auto const   ia = rca_invariants(a);
    auto const   ib = rca_invariants(b);
    auto const   iab = rca_invariants(rca_compose(a, b));
    CHECK(iab.defect <= ia.defect + ib.defect);
    CHECK(iab.collapse <= ia.collapse + ib.collapse);
    CHECK(iab.contractive <= ia.contractive + ib.contractive);
    CHECK(iab.defect >= ib.defect);
    CHECK(iab.collapse >= ia.collapse);
  }
}

TEST_CASE("invariants agree with window evidence", "[rca][property]") {
  Generator g(3);
  for (int trial = 0; trial < 400; ++trial) {
    RcaMap const a   = g.rca();
    auto const   inv = rca_invariants(a);
    Int const    Y   = 60;
    Int const    B   = preimage_bound(a, Y);

    // image and defect below Y
    std::set<Int> hit;
    for (Int n = 0; n < B; ++n) {
      hit.insert(a(n));
    }
    for (Int y = 0; y < Y; ++y) {
      REQUIRE(inv.image.contains(y) == (hit.count(y) == 1));
      REQUIRE(inv.defect_set.contains(y) == (hit.count(y) == 0));
    }
    if (inv.defect.is_finite()) {
      CHECK(inv.defect == ExtNat::fin(inv.defect_set.count_below(Y)));
    }

    // infinite fibers are exactly the values whose count keeps growing
    Int const  W      = 40 * (a.threshold() + a.modulus());
    auto const small  = fiber_sizes(a, W);
    auto const large  = fiber_sizes(a, 4 * W);
    std::vector<Int> growing;
    for (auto const& [v, size] : large) {
      auto it = small.find(v);
      if (it != small.end() && size >= it->second + 3) {
        growing.push_back(v);
      }
    }
    CHECK(growing == inv.infinite_fiber_values);
    CHECK(inv.contractive == ExtNat::fin(static_cast<Int>(growing.size())));
    CHECK(inv.has_infinite_kernel_class == !growing.empty());
    CHECK(inv.rank.is_finite() == (a.tails().end() == std::find_if(a.tails().begin(), a.tails().end(),
                                                             [](TailRule const& t) {
                                                               return !t.is_const();
                                                             })));
  }
}

TEST_CASE("collapse is reached by the window collision count", "[rca][property]") {
  Generator g(4);
  int finite_cases = 0;
  for (int trial = 0; trial < 500; ++trial) {
    RcaMap const a   = g.rca(0.0);
    auto const   inv = rca_invariants(a);
    Int const    W   = std::max<Int>(10 * a.threshold() * a.modulus(), 1);
    Int          prev = 0;
    for (Int w = 1; w <= W; ++w) {
      Int const c = observed_collisions(a, w);
      REQUIRE(c >= prev);
      REQUIRE(ExtNat::fin(c) <= inv.collapse);
      prev = c;
    }
    if (inv.collapse.is_finite()) {
      ++finite_cases;
      CHECK(ExtNat::fin(prev) == inv.collapse);
      CHECK(ExtNat::fin(observed_collisions(a, 4 * W + 100)) == inv.collapse);
    }
  }
  CHECK(finite_cases > 50);
}

TEST_CASE("the section picks least preimages and is injective on the image",
          "[rca][property]") {
  Generator g(5);
  for (int trial = 0; trial < 300; ++trial) {
    RcaMap const a   = g.rca();
    auto const   sec = rca_section(a);
    Int const    Y   = 80;
    Int const    B   = preimage_bound(a, Y);
    std::map<Int, Int> least;
    for (Int n = B - 1; n >= 0; --n) {
      least[a(n)] = n;
    }
    std::set<Int> seen;
    for (Int y = 0; y < Y; ++y) {
      auto it = least.find(y);
      REQUIRE(sec.domain.contains(y) == (it != least.end()));
      if (it != least.end()) {
        REQUIRE(sec.map(y) == it->second);
        REQUIRE(a(sec.map(y)) == y);
        REQUIRE(seen.insert(sec.map(y)).second);
      } else {
        REQUIRE(sec.map(y) == 0);
      }
    }
  }
}

TEST_CASE("rca_select and simplified preserve values", "[rca][property]") {
  Generator g(6);
  for (int trial = 0; trial < 200; ++trial) {
    RcaMap const a = g.rca();
    RcaMap const b = g.rca();
    EPSet const  w = EPSet::make(g.uniform(0, 5), g.uniform(1, 4), {0}, {});
    RcaMap const s = rca_select(w, a, b);
    Int const    m3 = a.modulus() * 3;
    RcaMap const r  = a.refined(m3, (a.threshold() / m3 + 2) * m3);
    for (Int n = 0; n < 500; ++n) {
      REQUIRE(s(n) == (w.contains(n) ? a(n) : b(n)));
      REQUIRE(r(n) == a(n));
      REQUIRE(r.simplified()(n) == a(n));
    }
    CHECK(r.simplified().modulus() <= a.modulus());
  }
}
