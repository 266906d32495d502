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

#include <string>

#include "catch_amalgamated.hpp"
#include "support/generators.hpp"
#include "tnat/io.hpp"
#include "tnat/term_json.hpp"

using namespace tnat;
using namespace tnat::testing;

namespace {

  std::size_t offset_of(std::string const& text) {
    try {
      parse_term(text);
    } catch (ParseError const& e) {
      return e.offset();
    }
    FAIL("expected a parse error for " << text);
    return 0;
  }

}  // namespace

TEST_CASE("parse_term examples", "[io]") {
  CHECK(parse_term(R"({"type":"colproj"})").is(Term::Kind::ColProj));
  Term const d = parse_term(
      R"({"type":"rca","N":0,"m":1,"patch":[],"tails":[{"kind":"affine","a":2,"b":0}]})");
  CHECK(to_string(d) == to_string(dbl()));
  for (Int n = 0; n < 100; ++n) {
    CHECK(d(n) == 2 * n);
  }

  std::string const bad
      = R"({"type":"rca","N":0,"m":1,"patch":[],"tails":[{"kind":"affine","a":0,"b":3}]})";
  try {
    parse_term(bad);
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.reason().find("a must be positive; use kind const") != std::string::npos);
    CHECK(bad.substr(e.offset(), 1) == "0");
  }
}

TEST_CASE("parse errors carry byte offsets", "[io]") {
  CHECK(offset_of(R"({"type":"colproj")") == 17);
  CHECK(offset_of(R"({"type":"nope"})") == 8);
  CHECK(offset_of(R"({"type":"compose","first":{"type":"colproj"}})") == 0);
  CHECK(offset_of(R"([1,2])") == 0);
  std::string const neg = R"({"type":"rca","N":1,"m":1,"patch":[-1],"tails":[{"kind":"const","b":0}]})";
  CHECK(neg.substr(offset_of(neg), 2) == "-1");
  // N must be a multiple of m and the patch must have N entries
  CHECK_THROWS_AS(
      parse_term(R"({"type":"rca","N":1,"m":2,"patch":[0],"tails":[{"kind":"const","b":0},{"kind":"const","b":0}]})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_term(R"({"type":"rca","N":2,"m":1,"patch":[0],"tails":[{"kind":"const","b":0}]})"),
      ParseError);
}

TEST_CASE("builtin terms round-trip", "[io]") {
  for (Term const& t : {succ(), dbl(), half(), pred(), cst0(), mix(), identity(),
                        Term::colproj(), Term::colembed(),
                        compose(Term::colproj(), succ())}) {
    std::string const text = to_string(t);
    Term const        back = parse_term(text);
    CHECK(to_string(back) == text);
    CHECK(parse_term(to_string(back)).kind() == t.kind());
  }
  CHECK(to_string(mix())
        == R"({"N":0,"m":2,"patch":[],"tails":[{"b":5,"kind":"const"},{"a":1,"b":0,"kind":"affine"}],"type":"rca"})");
}

TEST_CASE("random terms round-trip", "[io][property]") {
  Generator g(71);
  for (int trial = 0; trial < 500; ++trial) {
    Term const        t    = g.term(3);
    std::string const text = to_string(t);
    Term const        back = parse_term(text);
    REQUIRE(to_string(back) == text);
    for (Int n = 0; n < 200; ++n) {
      REQUIRE(back(n) == t(n));
    }
  }
}

TEST_CASE("EPSet JSON", "[io]") {
  EPSet const s = EPSet::make(5, 3, {1}, {0, 2});
  CHECK(parse_epset(epset_to_json(s).dump()) == s);
  CHECK_THROWS_AS(parse_epset(R"({"threshold":1,"modulus":0,"residues":[],"patch":[]})"),
                  ParseError);
}

TEST_CASE("parse_finmap", "[io]") {
  FinMap const f = parse_finmap("[1,0,0]");
  CHECK(f.id() == 9);
  CHECK(f.to_string() == "[1,0,0]");
  CHECK(parse_finmap(" [ 3, 3, 3, 0 ] ").points() == 4);
  CHECK_THROWS_AS(parse_finmap("[1,0,3]"), ParseError);
  CHECK_THROWS_AS(parse_finmap("[]"), ParseError);
  CHECK_THROWS_AS(parse_finmap("[0,0,0,0,0]"), ParseError);
  CHECK_THROWS_AS(parse_finmap("[1,0"), ParseError);
  try {
    parse_finmap("[1,\"a\",0]");
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.offset() == 3);
  }
}

TEST_CASE("parse_family", "[io]") {
  SetFamily const M = parse_family("# two overlapping pairs\n1 2\n\n2 3   # trailing\n");
  REQUIRE(M.size() == 2);
  CHECK(M.members()[0] == ElementSet{1, 2});
  CHECK(M.members()[1] == ElementSet{2, 3});
  CHECK(family_to_string(M) == "1 2\n2 3\n");
  CHECK(family_to_string(parse_family(family_to_string(M))) == family_to_string(M));
  CHECK(parse_family("3 1 3\n").members().front() == ElementSet{1, 3});
  try {
    parse_family("1 2\n2 x\n");
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.offset() == 6);
  }
  CHECK_THROWS_AS(parse_family("1 -2\n"), ParseError);
  CHECK(parse_family("").size() == 0);
}
