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
#include <random>
#include <set>
#include <vector>

#include "catch_amalgamated.hpp"
#include "tnat/finmonoid.hpp"

using namespace tnat;

namespace {

  MapSet of(FullTransformationMonoid const& T, std::vector<FinMap> const& maps) {
    MapSet s;
    for (auto const& f : maps) {
      REQUIRE(f.points() == T.points());
      s.set(static_cast<std::size_t>(f.id()));
    }
    return s;
  }

  // Closure by repeated pairwise products over explicit image vectors.
  std::set<std::vector<int>> naive_closure(std::vector<FinMap> const& gens) {
    std::set<std::vector<int>> out;
    for (auto const& g : gens) {
      out.insert(g.images());
    }
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::vector<int>> const current(out.begin(), out.end());
      for (auto const& f : current) {
        for (auto const& g : current) {
          std::vector<int> h;
          for (int v : f) {
            h.push_back(g[static_cast<std::size_t>(v)]);
          }
          grew = out.insert(h).second || grew;
        }
      }
    }
    return out;
  }

  MapSet random_subset(std::mt19937_64& rng, Int size, double p) {
    std::bernoulli_distribution coin(p);
    MapSet                      s;
    for (Int x = 0; x < size; ++x) {
      if (coin(rng)) {
        s.set(static_cast<std::size_t>(x));
      }
    }
    return s;
  }

}  // namespace

TEST_CASE("FinMap basics", "[finmonoid]") {
  FinMap const f(3, {1, 0, 0});
  CHECK(f.id() == 9);
  CHECK(FinMap::from_id(3, 9) == f);
  CHECK(f.rank() == 2);
  CHECK(f.to_string() == "[1,0,0]");
  FinMap const g(3, {2, 2, 1});
  // apply f first, then g
  CHECK(then(f, g) == FinMap(3, {2, 2, 2}));
  CHECK(then(g, f) == FinMap(3, {0, 0, 0}));
  CHECK_THROWS_AS(FinMap(3, {0, 3, 1}), InvalidArgument);
  CHECK_THROWS_AS(FinMap(5, {0, 0, 0, 0, 0}), InvalidArgument);
  CHECK_THROWS_AS(FinMap(3, {0, 1}), InvalidArgument);
}

TEST_CASE("closure examples", "[finmonoid]") {
  FullTransformationMonoid const T(3);
  CHECK(T.size() == 27);
  CHECK(T.closure(of(T, {FinMap(3, {1, 2, 0})})).count() == 3);
  MapSet g = T.permutations();
  g.set(static_cast<std::size_t>(FinMap(3, {0, 0, 2}).id()));
  CHECK(T.closure(g) == T.all());
  CHECK(T.closure(T.constants()).count() == 3);
  CHECK(T.closure(T.constants()) == T.constants());
  // the identity only appears when generated
  CHECK_FALSE(T.closure(of(T, {FinMap(3, {0, 0, 1})})).test(
      static_cast<std::size_t>(FinMap(3, {0, 1, 2}).id())));
}

TEST_CASE("is_maximal examples", "[finmonoid]") {
  FullTransformationMonoid const T(3);
  auto const                     a = is_maximal(T, T.permutations() | T.constants());
  CHECK(a.closed);
  CHECK(a.proper);
  CHECK(a.maximal);
  CHECK((T.permutations() | T.constants()).count() == 9);

  auto const b = is_maximal(T, T.permutations());
  CHECK(b.closed);
  CHECK_FALSE(b.maximal);

  auto const c = is_maximal(T, T.all());
  CHECK_FALSE(c.proper);
  CHECK_FALSE(c.maximal);
}

TEST_CASE("gen_family examples", "[finmonoid]") {
  FullTransformationMonoid const T(3);
  auto const                     M = gen_family(T, T.with_rank(2), 1);
  CHECK(M.size() == 18);
  for (auto const& m : M.members()) {
    CHECK(m.size() == 1);
    CHECK(T.element(m.front()).rank() == 2);
  }
  CHECK(gen_family(T, T.with_rank(2), 0).size() == 0);

  MapSet id;
  id.set(static_cast<std::size_t>(FinMap(3, {0, 1, 2}).id()));
  auto const  N     = gen_family(T, id, 1);
  ElementSet const cycle = {FinMap(3, {1, 2, 0}).id()};
  CHECK(std::find(N.members().begin(), N.members().end(), cycle) != N.members().end());

  CHECK_THROWS_AS(gen_family(T, id, 3), CapTooLarge);
  CHECK_THROWS_AS(gen_family(FullTransformationMonoid(4), id, 2), CapTooLarge);
}

TEST_CASE("gen_family ordering and membership", "[finmonoid]") {
  FullTransformationMonoid const T(2);
  MapSet                         U;
  U.set(static_cast<std::size_t>(FinMap(2, {0, 0}).id()));
  auto const M = gen_family(T, U, 4);
  for (std::size_t i = 1; i < M.size(); ++i) {
    REQUIRE(canonical_less(M.members()[i - 1], M.members()[i]));
  }
  for (auto const& A : M.members()) {
    REQUIRE((T.closure(to_map_set(A)) & U).any());
  }
  // every subset meeting U after closure is listed
  std::size_t expected = 0;
  for (std::uint32_t bits = 1; bits < 16; ++bits) {
    MapSet s(bits);
    expected += (T.closure(s) & U).any() ? 1 : 0;
  }
  CHECK(M.size() == expected);
}

TEST_CASE("theorem1 pipeline examples", "[finmonoid]") {
  auto const r = run_preset("sym3");
  CHECK(r.label == "preset");
  CHECK(r.monoid_size == 27);
  CHECK(r.u_size == 18);
  REQUIRE(r.candidates.size() == 1);
  auto const& c = r.candidates.front();
  CHECK(c.H.size() == 18);
  CHECK(c.complement_size == 9);
  CHECK(c.closed);
  CHECK(c.maximal);
  CHECK(c.contains_constants);
  CHECK(c.regenerating == 18);
  CHECK(r.spot_in_j);

  FullTransformationMonoid const T(3);
  MapSet                         U;
  U.set(static_cast<std::size_t>(FinMap(3, {0, 0, 1}).id()));
  try {
    theorem1_pipeline(T, T.constants(), U, 1);
    FAIL("expected a hypothesis violation");
  } catch (HypothesisViolation const& e) {
    CHECK(e.witness() == "[0,0,1]");
    CHECK(e.which() == "every u in U generates T_n together with W");
  }
  CHECK_THROWS_AS(theorem1_pipeline(T, T.with_rank(2), U, 1), HypothesisViolation);
  CHECK_THROWS_AS(theorem1_pipeline(T, T.permutations(), T.permutations(), 1),
                  HypothesisViolation);

  auto const s = run_preset("sym4");
  CHECK(s.monoid_size == 256);
  CHECK(s.u_size == 144);
  REQUIRE(s.candidates.size() == 1);
  CHECK(s.candidates.front().complement_size == 112);
  CHECK(s.candidates.front().maximal);
  CHECK(s.candidates.front().contains_constants);
  CHECK_THROWS_AS(run_preset("sym5"), InvalidArgument);
}

TEST_CASE("closure agrees with the naive closure", "[finmonoid][property]") {
  std::mt19937_64 rng(61);
  for (int n = 1; n <= 3; ++n) {
    FullTransformationMonoid const T(n);
    for (int trial = 0; trial < 300; ++trial) {
      MapSet const g = random_subset(rng, T.size(), 2.5 / static_cast<double>(T.size()));
      std::vector<FinMap> gens;
      for (Int x : T.ids(g)) {
        gens.push_back(T.element(x));
      }
      auto const naive = naive_closure(gens);
      auto const fast  = T.closure(g);
      REQUIRE(fast.count() == naive.size());
      for (auto const& images : naive) {
        REQUIRE(fast.test(static_cast<std::size_t>(FinMap(n, images).id())));
      }
    }
  }
}

TEST_CASE("closure is idempotent and monotone", "[finmonoid][property]") {
  std::mt19937_64 rng(62);
  for (int n = 2; n <= 4; ++n) {
    FullTransformationMonoid const T(n);
    for (int trial = 0; trial < 200; ++trial) {
      MapSet const a = random_subset(rng, T.size(), 3.0 / static_cast<double>(T.size()));
      MapSet const b = a | random_subset(rng, T.size(), 1.0 / static_cast<double>(T.size()));
      MapSet const ca = T.closure(a);
      REQUIRE(T.closure(ca) == ca);
      REQUIRE(T.is_closed(ca));
      REQUIRE((ca & ~T.closure(b)).none());
    }
  }
}

TEST_CASE("rank never increases under composition", "[finmonoid][property]") {
  for (int n = 1; n <= 4; ++n) {
    FullTransformationMonoid const T(n);
    for (Int f = 0; f < T.size(); ++f) {
      for (Int g = 0; g < T.size(); ++g) {
        FinMap const h = T.element(T.product(f, g));
        REQUIRE(h == then(T.element(f), T.element(g)));
        REQUIRE(h.rank() <= std::min(T.element(f).rank(), T.element(g).rank()));
      }
    }
  }
}

TEST_CASE("maximal subsemigroups found by the pipeline contain the constants",
          "[finmonoid][property]") {
  for (auto const* name : {"sym3", "sym4"}) {
    for (auto const& c : run_preset(name).candidates) {
      REQUIRE(c.closed);
      REQUIRE(c.maximal);
      REQUIRE(c.contains_constants);
    }
  }
  // any closed proper S containing Sym_3 and meeting U generates T_3
  FullTransformationMonoid const T(3);
  for (Int u : T.ids(T.with_rank(2))) {
    MapSet g = T.permutations();
    g.set(static_cast<std::size_t>(u));
    REQUIRE(T.closure(g) == T.all());
  }
}
