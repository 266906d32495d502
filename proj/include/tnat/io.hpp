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

#ifndef TNAT_IO_HPP_
#define TNAT_IO_HPP_

#include <algorithm>    // for all_of
#include <cctype>       // for isdigit, isspace
#include <cstddef>      // for size_t
#include <string>       // for string, stoll
#include <string_view>  // for string_view
#include <utility>      // for move
#include <vector>       // for vector

#include "json.hpp"

#include "tnat/epset.hpp"
#include "tnat/error.hpp"
#include "tnat/finmonoid.hpp"
#include "tnat/rca.hpp"
#include "tnat/term.hpp"
#include "tnat/term_json.hpp"
#include "tnat/transversal.hpp"
#include "tnat/witnesses.hpp"

namespace tnat {

  namespace detail {

    //! A problem with a well-formed JSON document, located by the path of
    //! keys and indices leading to the offending value.
    struct SemanticError {
      std::vector<std::string> path;
      std::string              reason;
    };

    inline std::size_t skip_space(std::string_view text, std::size_t i) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
      return i;
    }

    inline std::size_t skip_string(std::string_view text, std::size_t i) {
      for (++i; i < text.size() && text[i] != '"'; ++i) {
        if (text[i] == '\\') {
          ++i;
        }
      }
      return i + 1;
    }

    //! One past the end of the JSON value starting at i (text is known to be
    //! valid JSON).
    inline std::size_t skip_value(std::string_view text, std::size_t i) {
      if (text[i] == '"') {
        return skip_string(text, i);
      }
      if (text[i] == '{' || text[i] == '[') {
        int depth = 0;
        do {
          if (text[i] == '"') {
            i = skip_string(text, i);
            continue;
          }
          if (text[i] == '{' || text[i] == '[') {
            ++depth;
          } else if (text[i] == '}' || text[i] == ']') {
            --depth;
          }
          ++i;
        } while (depth > 0 && i < text.size());
        return i;
      }
      while (i < text.size() && text[i] != ',' && text[i] != '}' && text[i] != ']'
             && !std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
      return i;
    }

    //! Byte offset of the value at \p path, or of the deepest value on the
    //! path that could be found.
    inline std::size_t locate(std::string_view text, std::vector<std::string> const& path) {
      std::size_t at = skip_space(text, 0);
      for (auto const& step : path) {
        if (at >= text.size()) {
          break;
        }
        std::size_t i = skip_space(text, at + 1);
        bool        found = false;
        if (text[at] == '{') {
          while (i < text.size() && text[i] == '"') {
            std::size_t const end = skip_string(text, i);
            std::string const key = json::parse(text.substr(i, end - i)).get<std::string>();
            i                     = skip_space(text, skip_space(text, end) + 1);
            if (key == step) {
              at    = i;
              found = true;
              break;
            }
            i = skip_space(text, skip_value(text, i));
            if (i < text.size() && text[i] == ',') {
              i = skip_space(text, i + 1);
            }
          }
        } else if (text[at] == '[' && !step.empty()
                   && std::all_of(step.begin(), step.end(), [](unsigned char c) {
                        return std::isdigit(c);
                      })) {
          std::size_t const index = std::stoul(step);
          for (std::size_t k = 0; i < text.size() && text[i] != ']'; ++k) {
            if (k == index) {
              at    = i;
              found = true;
              break;
            }
            i = skip_space(text, skip_value(text, i));
            if (i < text.size() && text[i] == ',') {
              i = skip_space(text, i + 1);
            }
          }
        }
        if (!found) {
          break;
        }
      }
      return at;
    }

    inline json const& member(json const& j, std::vector<std::string>& path, char const* key) {
      if (!j.is_object() || !j.contains(key)) {
        throw SemanticError{path, std::string("missing field \"") + key + "\""};
      }
      return j.at(key);
    }

    inline Int integer(json const& j, std::vector<std::string> const& path, char const* what) {
      if (!j.is_number_integer()) {
        throw SemanticError{path, std::string(what) + " must be an integer"};
      }
      return j.get<Int>();
    }

    inline std::vector<Int> integers(json const&                     j,
                                     std::vector<std::string>&       path,
                                     char const*                     what) {
      if (!j.is_array()) {
        throw SemanticError{path, std::string(what) + " must be an array"};
      }
      std::vector<Int> out;
      for (std::size_t i = 0; i < j.size(); ++i) {
        path.push_back(std::to_string(i));
        out.push_back(integer(j[i], path, what));
        path.pop_back();
      }
      return out;
    }

    struct Scoped {
      Scoped(std::vector<std::string>& path, std::string step) : _path(path) {
        _path.push_back(std::move(step));
      }
      ~Scoped() {
        _path.pop_back();
      }
      Scoped(Scoped const&)            = delete;
      Scoped& operator=(Scoped const&) = delete;

     private:
      std::vector<std::string>& _path;
    };

    inline RcaMap rca_from_json(json const& j, std::vector<std::string>& path) {
      Int N, m;
      std::vector<Int> patch;
      {
        Scoped s(path, "N");
        N = integer(member(j, path, "N"), path, "N");
      }
      {
        Scoped s(path, "m");
        m = integer(member(j, path, "m"), path, "m");
      }
      {
        Scoped s(path, "patch");
        patch = integers(member(j, path, "patch"), path, "patch");
        for (std::size_t i = 0; i < patch.size(); ++i) {
          if (patch[i] < 0) {
            Scoped si(path, std::to_string(i));
            throw SemanticError{path, "patch values must be nonnegative"};
          }
        }
      }
      std::vector<TailRule> tails;
      {
        Scoped      s(path, "tails");
        json const& ts = member(j, path, "tails");
        if (!ts.is_array()) {
          throw SemanticError{path, "tails must be an array"};
        }
        for (std::size_t i = 0; i < ts.size(); ++i) {
          Scoped      si(path, std::to_string(i));
          json const& t = ts[i];
          std::string kind;
          {
            Scoped sk(path, "kind");
            json const& k = member(t, path, "kind");
            if (!k.is_string()) {
              throw SemanticError{path, "kind must be \"affine\" or \"const\""};
            }
            kind = k.get<std::string>();
          }
          Int b;
          {
            Scoped sb(path, "b");
            b = integer(member(t, path, "b"), path, "b");
          }
          if (kind == "const") {
            tails.push_back(TailRule::constant(b));
          } else if (kind == "affine") {
            Scoped sa(path, "a");
            Int    a = integer(member(t, path, "a"), path, "a");
            if (a < 1) {
              throw SemanticError{path, "a must be positive; use kind const"};
            }
            tails.push_back(TailRule::affine(a, b));
          } else {
            Scoped sk(path, "kind");
            throw SemanticError{path, "kind must be \"affine\" or \"const\""};
          }
        }
      }
      try {
        return RcaMap(N, m, std::move(patch), std::move(tails));
      } catch (InvalidArgument const& e) {
        throw SemanticError{path, e.what()};
      }
    }

    inline Term term_from_json(json const& j, std::vector<std::string>& path);

    inline Term lazy_from_json(json const& j, std::vector<std::string>& path) {
      std::string name;
      {
        Scoped      s(path, "name");
        json const& n = member(j, path, "name");
        if (!n.is_string()) {
          throw SemanticError{path, "name must be a string"};
        }
        name = n.get<std::string>();
      }
      Scoped      s(path, "params");
      json const& params = member(j, path, "params");
      auto        sub    = [&](char const* key) {
        Scoped ss(path, key);
        return term_from_json(member(params, path, key), path);
      };
      auto text = [&](char const* key) {
        Scoped      ss(path, key);
        json const& v = member(params, path, key);
        if (!v.is_string()) {
          throw SemanticError{path, std::string(key) + " must be a string"};
        }
        return v.get<std::string>();
      };
      try {
        if (name == "w_cp") {
          std::string const role = text("role");
          Term const alpha = sub("alpha"), beta = sub("beta");
          if (role == "gamma") {
            return w_cp_gamma(alpha, beta);
          }
          if (role == "delta") {
            return w_cp_delta(alpha, beta);
          }
        } else if (name == "w_dual") {
          std::string const role = text("role");
          auto const        kind = flag_from_name(text("kind"));
          Term const alpha = sub("alpha"), beta = sub("beta");
          if (!kind || (*kind != Flag::IF && *kind != Flag::FI)) {
            throw SemanticError{path, "kind must be IF or FI"};
          }
          if (role == "gamma") {
            return w_dual_gamma(*kind, alpha, beta);
          }
          if (role == "delta") {
            return w_dual_delta(*kind, alpha, beta);
          }
        } else if (name == "w_right_gen_cp") {
          return w_right_gen_cp_gamma(sub("alpha"), sub("beta"));
        } else if (name == "cp_square") {
          std::string const role  = text("role");
          Term const        alpha = sub("alpha");
          if (role == "beta1") {
            return cp_square_beta1(alpha);
          }
          if (role == "beta2") {
            return cp_square_beta2(alpha);
          }
        } else {
          throw SemanticError{path, "unknown lazy construction " + name};
        }
      } catch (Error const& e) {
        throw SemanticError{path, e.what()};
      }
      throw SemanticError{path, "unknown role for lazy construction " + name};
    }

    inline Term term_from_json(json const& j, std::vector<std::string>& path) {
      std::string type;
      {
        Scoped      s(path, "type");
        json const& t = member(j, path, "type");
        if (!t.is_string()) {
          throw SemanticError{path, "type must be a string"};
        }
        type = t.get<std::string>();
      }
      if (type == "rca") {
        return Term::rca(rca_from_json(j, path));
      }
      if (type == "colproj") {
        return Term::colproj();
      }
      if (type == "colembed") {
        return Term::colembed();
      }
      if (type == "compose") {
        Term first = [&] {
          Scoped s(path, "first");
          return term_from_json(member(j, path, "first"), path);
        }();
        Scoped s(path, "second");
        return compose(std::move(first), term_from_json(member(j, path, "second"), path));
      }
      if (type == "lazy") {
        return lazy_from_json(j, path);
      }
      Scoped s(path, "type");
      throw SemanticError{path, "unknown term type " + type};
    }

    inline json parse_json(std::string_view text) {
      try {
        return json::parse(text);
      } catch (json::parse_error const& e) {
        throw ParseError(e.byte > 0 ? e.byte - 1 : 0, e.what());
      }
    }

  }  // namespace detail

  //! Rebuilds a term from its JSON form. Errors report offset 0; use
  //! parse_term to get byte offsets into the original text.
  inline Term term_from_json(json const& j) {
    std::vector<std::string> path;
    try {
      return detail::term_from_json(j, path);
    } catch (detail::SemanticError const& e) {
      throw ParseError(0, e.reason);
    }
  }

  //! Parses the textual form of a term. Throws ParseError carrying the byte
  //! offset of the offending value.
  inline Term parse_term(std::string_view text) {
    json const               j = detail::parse_json(text);
    std::vector<std::string> path;
    try {
      return detail::term_from_json(j, path);
    } catch (detail::SemanticError const& e) {
      throw ParseError(detail::locate(text, e.path), e.reason);
    }
  }

  inline EPSet epset_from_json(json const& j) {
    std::vector<std::string> path;
    try {
      auto get = [&](char const* key) {
        detail::Scoped s(path, key);
        return detail::member(j, path, key);
      };
      Int const N = detail::integer(get("N"), path, "N");
      Int const m = detail::integer(get("m"), path, "m");
      auto      R = detail::integers(get("R"), path, "R");
      auto      F = detail::integers(get("F"), path, "F");
      return EPSet::make(N, m, std::move(R), std::move(F));
    } catch (detail::SemanticError const& e) {
      throw ParseError(0, e.reason);
    } catch (InvalidArgument const& e) {
      throw ParseError(0, e.what());
    }
  }

  inline EPSet parse_epset(std::string_view text) {
    return epset_from_json(detail::parse_json(text));
  }

  //! A FinMap literal such as [1,0,0] (the images of 0, 1, 2).
  inline FinMap parse_finmap(std::string_view text) {
    json const j = detail::parse_json(text);
    if (!j.is_array() || j.empty()) {
      throw ParseError(0, "a map literal is a non-empty array of images");
    }
    std::vector<int> images;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number_integer()) {
        throw ParseError(detail::locate(text, {std::to_string(i)}),
                         "images must be integers");
      }
      images.push_back(j[i].get<int>());
    }
    int const n = static_cast<int>(images.size());
    try {
      return FinMap(n, std::move(images));
    } catch (InvalidArgument const& e) {
      throw ParseError(0, e.what());
    }
  }

  //! One set per line, elements separated by whitespace, '#' starts a
  //! comment. Blank lines are skipped.
  inline SetFamily parse_family(std::string_view text) {
    std::vector<ElementSet> members;
    std::size_t             i = 0;
    while (i < text.size()) {
      std::size_t eol = text.find('\n', i);
      if (eol == std::string_view::npos) {
        eol = text.size();
      }
      std::string_view line = text.substr(i, eol - i);
      if (auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      std::vector<Int> set;
      std::size_t      k = 0;
      while (k < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[k])) || line[k] == ',') {
          ++k;
          continue;
        }
        std::size_t const start = k;
        while (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) {
          ++k;
        }
        if (k == start || (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))
                           && line[k] != ',')) {
          throw ParseError(i + start, "expected a nonnegative integer");
        }
        try {
          set.push_back(std::stoll(std::string(line.substr(start, k - start))));
        } catch (std::out_of_range const&) {
          throw ParseError(i + start, "element id too large");
        }
      }
      if (!set.empty()) {
        members.push_back(make_set(std::move(set)));
      }
      i = eol + 1;
    }
    return SetFamily(std::move(members));
  }

  inline std::string family_to_string(SetFamily const& M) {
    std::string out;
    for (auto const& m : M.members()) {
      for (std::size_t i = 0; i < m.size(); ++i) {
        out += (i == 0 ? "" : " ") + std::to_string(m[i]);
      }
      out += '\n';
    }
    return out;
  }

}  // namespace tnat

#endif  // TNAT_IO_HPP_
