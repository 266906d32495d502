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

#include <set>
#include <vector>

#include "catch_amalgamated.hpp"
#include "support/generators.hpp"
#include "tnat/enumerate.hpp"
#include "tnat/term.hpp"

using namespace tnat;
using namespace tnat::testing;

namespace {

  std::vector<Int> take(Term const& t, Int y, std::size_t count) {
    return fiber_prefix(t, y, count);
  }

  Bounds exact(ExtNat v) {
    return Bounds::exactly(v);
  }

  bool resolved(ClassFlags const& f, Flag x) {
    return f[x] != Tri::Unknown;
  }

}  // namespace

TEST_CASE("term_eval examples", "[term]") {
  CHECK(term_eval(Term::colproj(), 3) == 2);
  CHECK(term_eval(Term::colembed(), 2) == 3);
  CHECK(term_eval(compose(dbl(), half()), 7) == 7);
  CHECK(pair(2, 0) == 3);
  for (Int n = 0; n < 1000; ++n) {
    auto [i, j] = unpair(n);
    REQUIRE(pair(i, j) == n);
    REQUIRE(compose(Term::colembed(), Term::colproj())(n) == n);
  }
}

TEST_CASE("term_invariants examples", "[term]") {
  auto const d = term_invariants(dbl());
  CHECK(d.defect == exact(ExtNat::inf()));
  CHECK(d.collapse == exact(ExtNat::fin(0)));
  CHECK(d.contractive == exact(ExtNat::fin(0)));

  auto const p = term_invariants(compose(Term::colproj(), half()));
  CHECK(p.defect == exact(ExtNat::fin(0)));
  CHECK(p.collapse == exact(ExtNat::inf()));
  CHECK(p.contractive == exact(ExtNat::inf()));
  CHECK(p.rank == exact(ExtNat::inf()));
  CHECK(p.infinite_kernel_class == Tri::Yes);
  // window cross-check: image covers [0, 50) and column fibers keep growing
  auto const w = window_report(compose(Term::colproj(), half()), 10'000);
  CHECK(w.missing_below_max == 0);
  CHECK(w.largest_fibers.front().second > 100);

  auto const h = term_invariants(compose(half(), dbl()));
  CHECK(h.collapse == exact(ExtNat::inf()));
  CHECK(h.defect == exact(ExtNat::inf()));
  CHECK(h.contractive == exact(ExtNat::fin(0)));
}

TEST_CASE("classify examples", "[term]") {
  auto yes = [](ClassFlags const& f) {
    std::vector<Flag> out;
    for (Flag x : all_flags) {
      REQUIRE(f[x] != Tri::Unknown);
      if (f[x] == Tri::Yes) {
        out.push_back(x);
      }
    }
    return out;
  };
  CHECK(yes(classify(half())) == std::vector<Flag>{Flag::Sur, Flag::IF});
  CHECK(yes(classify(Term::colproj()))
        == std::vector<Flag>{Flag::Sur, Flag::Cp, Flag::IF, Flag::CpGenerated});
  CHECK(yes(classify(dbl())) == std::vector<Flag>{Flag::Inj, Flag::FI});
  CHECK(yes(classify(Term::colembed())) == std::vector<Flag>{Flag::Inj, Flag::FI});
  CHECK(yes(classify(identity())) == std::vector<Flag>{Flag::Sym});
}

TEST_CASE("fiber_stream examples", "[term]") {
  CHECK(take(half(), 3, 5) == std::vector<Int>{6, 7});
  // pair(1, j) for j = 0, 1, 2
  CHECK(take(Term::colproj(), 1, 3) == std::vector<Int>{pair(1, 0), pair(1, 1), pair(1, 2)});
  CHECK(take(Term::colproj(), 1, 3) == std::vector<Int>{1, 4, 8});
  CHECK(take(dbl(), 3, 5).empty());
  CHECK(take(Term::colembed(), 3, 5) == std::vector<Int>{2});
  CHECK(take(Term::colembed(), 4, 5).empty());
}

TEST_CASE("fiber_stream agrees with scanning", "[term][property]") {
  Generator g(31);
  for (int trial = 0; trial < 150; ++trial) {
    Term const t = trial % 3 == 0 ? compose(Term::colproj(), Term::rca(g.rca())) : g.term(2);
    for (Int y = 0; y < 6; ++y) {
      std::vector<Int> scanned;
      for (Int n = 0; n < 3000 && scanned.size() < 8; ++n) {
        if (t(n) == y) {
          scanned.push_back(n);
        }
      }
      auto const got = take(t, y, scanned.size());
      REQUIRE(got == scanned);
    }
  }
}

TEST_CASE("class_index examples", "[term]") {
  CHECK(class_index(Term::colproj(), 3) == 2);
  for (Int n = 0; n < 50; ++n) {
    CHECK(class_index(identity(), n) == n);
    CHECK(class_index(cst0(), n) == 0);
  }
  ClassIndex idx(half());
  CHECK(idx.index_of(5) == 2);
  CHECK(idx.rank_in_class(5) == 1);
  CHECK(idx.representative(2) == 4);
}

TEST_CASE("window_report examples", "[term]") {
  CHECK(window_report(half(), 1000).collisions == 500);
  CHECK(window_report(succ(), 1000).collisions == 0);
  // column 0 holds 0, 2, 5, 9, 14 below 15
  auto const w = window_report(Term::colproj(), 15);
  CHECK(w.largest_fibers.front() == std::pair<Int, Int>{0, 5});
  CHECK(w.largest_fibers.front().second >= 4);
  CHECK_THROWS_AS(window_report(half(), 0), InvalidArgument);

  auto const d = window_report(dbl(), 10);
  CHECK(d.max_value == 18);
  CHECK(d.missing_below_max == 9);
  CHECK(d.first_missing == std::vector<Int>{1, 3, 5, 7, 9});
}

TEST_CASE("window_report agrees with a set-based count", "[term][property]") {
  Generator g(37);
  for (int trial = 0; trial < 300; ++trial) {
    Term const    t = g.term(2);
    Int const     W = g.uniform(1, 400);
    std::set<Int> values;
    for (Int n = 0; n < W; ++n) {
      values.insert(t(n));
    }
    Int const        top = *values.rbegin();
    std::vector<Int> missing;
    for (Int v = 0; v < top && missing.size() < 5; ++v) {
      if (values.count(v) == 0) {
        missing.push_back(v);
      }
    }
    auto const w = window_report(t, W);
    REQUIRE(w.distinct == static_cast<Int>(values.size()));
    REQUIRE(w.collisions == W - w.distinct);
    REQUIRE(w.max_value == top);
    REQUIRE(w.missing_below_max == top + 1 - static_cast<Int>(values.size()));
    REQUIRE(w.first_missing == missing);
  }
}

TEST_CASE("tighten closes reports and rejects contradictions", "[term]") {
  InvariantReport r;
  r.rank = exact(ExtNat::fin(3));
  tighten(r);
  CHECK(r.infinite_kernel_class == Tri::Yes);
  CHECK(r.defect.lo == ExtNat::inf());
  CHECK(r.collapse.lo == ExtNat::inf());

  InvariantReport bad;
  bad.collapse              = exact(ExtNat::fin(0));
  bad.infinite_kernel_class = Tri::Yes;
  CHECK_THROWS_AS(tighten(bad), Error);
}

TEST_CASE("bounds are sound against windows", "[term][property]") {
  Generator g(32);
  for (int trial = 0; trial < 300; ++trial) {
    Term const t = g.term(3);
    auto const r = term_invariants(t);
    for (Int W : {Int(10), Int(100), Int(1000), Int(10'000)}) {
      auto const w = window_report(t, W);
      REQUIRE(consistent(r, w));
      if (r.collapse.is_exact() && r.collapse.lo.is_finite()) {
        REQUIRE(ExtNat::fin(w.collisions) <= r.collapse.lo);
      }
    }
  }
}

TEST_CASE("resolved flags respect the exclusion matrix", "[term][property]") {
  Generator g(33);
  std::vector<std::pair<Flag, Flag>> const excluded = {{Flag::Inj, Flag::Sur},
                                                       {Flag::IF, Flag::FI},
                                                       {Flag::Cp, Flag::FI},
                                                       {Flag::Cp, Flag::Inj},
                                                       {Flag::Sur, Flag::FI},
                                                       {Flag::Inj, Flag::IF}};
  for (int trial = 0; trial < 500; ++trial) {
    auto const f = classify(g.term(3));
    for (auto [x, y] : excluded) {
      if (resolved(f, x) && resolved(f, y)) {
        REQUIRE_FALSE((f[x] == Tri::Yes && f[y] == Tri::Yes));
      }
    }
  }
}

TEST_CASE("an infinite kernel class excludes Inj and FI", "[term][property]") {
  Generator g(34);
  int       seen = 0;
  for (int trial = 0; trial < 500; ++trial) {
    auto const f = classify(trial % 2 == 0 ? g.term(3) : g.term_with_colproj(2));
    if (f[Flag::CpGenerated] == Tri::Yes) {
      ++seen;
      REQUIRE(f[Flag::FI] == Tri::No);
      REQUIRE(f[Flag::Inj] == Tri::No);
    }
  }
  CHECK(seen > 100);
}

TEST_CASE("FI and IF are closed under composition", "[term][property]") {
  Generator g(35);
  int       fi = 0, ifs = 0;
  for (int trial = 0; trial < 20'000 && (fi < 100 || ifs < 100); ++trial) {
    Term const a  = Term::rca(g.rca());
    Term const b  = Term::rca(g.rca());
    auto const fa = classify(a);
    auto const fb = classify(b);
    auto const fc = classify(compose(a, b));
    if (fa[Flag::FI] == Tri::Yes && fb[Flag::FI] == Tri::Yes) {
      ++fi;
      REQUIRE(fc[Flag::FI] == Tri::Yes);
    }
    if (fa[Flag::IF] == Tri::Yes && fb[Flag::IF] == Tri::Yes) {
      ++ifs;
      REQUIRE(fc[Flag::IF] == Tri::Yes);
    }
  }
  CHECK(fi >= 100);
  CHECK(ifs >= 100);
}

TEST_CASE("composition is the right action", "[term][property]") {
  Generator g(36);
  for (int trial = 0; trial < 200; ++trial) {
    Term const f = g.term(2);
    Term const h = g.term(1);
    Term const c = compose(f, h);
    for (Int n = 0; n < 2000; ++n) {
      REQUIRE(c(n) == h(f(n)));
    }
  }
}
