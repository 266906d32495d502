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

#ifndef TNAT_TERM_JSON_HPP_
#define TNAT_TERM_JSON_HPP_

#include <string>  // for string

#include "json.hpp"

#include "tnat/epset.hpp"
#include "tnat/rca.hpp"
#include "tnat/term.hpp"

namespace tnat {

  using json = nlohmann::json;

  inline json epset_to_json(EPSet const& s) {
    return json{{"N", s.threshold()},
                {"m", s.modulus()},
                {"R", s.residues()},
                {"F", s.patch()}};
  }

  inline json rca_to_json(RcaMap const& map) {
    json tails = json::array();
    for (auto const& t : map.tails()) {
      if (t.is_const()) {
        tails.push_back({{"kind", "const"}, {"b", t.b}});
      } else {
        tails.push_back({{"kind", "affine"}, {"a", t.a}, {"b", t.b}});
      }
    }
    return json{{"type", "rca"},
                {"N", map.threshold()},
                {"m", map.modulus()},
                {"patch", map.patch()},
                {"tails", std::move(tails)}};
  }

  //! The textual form of a term. Object keys are sorted, so dump() of the
  //! result is canonical.
  inline json term_to_json(Term const& t) {
    switch (t.kind()) {
      case Term::Kind::Rca:
        return rca_to_json(t.rca_map());
      case Term::Kind::ColProj:
        return json{{"type", "colproj"}};
      case Term::Kind::ColEmbed:
        return json{{"type", "colembed"}};
      case Term::Kind::Compose:
        return json{{"type", "compose"},
                    {"first", term_to_json(t.first())},
                    {"second", term_to_json(t.second())}};
      case Term::Kind::Lazy:
      default:
        return json{{"type", "lazy"},
                    {"name", t.lazy_data().name},
                    {"params", t.lazy_data().params}};
    }
  }

  inline std::string to_string(Term const& t) {
    return term_to_json(t).dump();
  }

  inline json report_to_json(InvariantReport const& r) {
    auto bounds = [](Bounds const& b) {
      return b.is_exact() ? json(b.lo.to_string())
                          : json::array({b.lo.to_string(), b.hi.to_string()});
    };
    json out{{"d", bounds(r.defect)},
             {"c", bounds(r.collapse)},
             {"k", bounds(r.contractive)},
             {"rank", bounds(r.rank)},
             {"infinite_kernel_class", std::string(to_string(r.infinite_kernel_class))},
             {"source", r.source == Source::Asserted ? "asserted" : "computed"}};
    out["image"] = r.image ? epset_to_json(*r.image) : json(nullptr);
    return out;
  }

  inline json flags_to_json(ClassFlags const& f) {
    json out = json::object();
    for (Flag flag : all_flags) {
      out[std::string(flag_name(flag))] = std::string(to_string(f[flag]));
    }
    return out;
  }

}  // namespace tnat

#endif  // TNAT_TERM_JSON_HPP_
