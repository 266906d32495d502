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

// Command-line front end: evaluate and classify terms, build witnesses,
// enumerate J(M) and run the T_n sandbox.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tnat/tnat.hpp"

namespace {

  using namespace tnat;

  enum Exit { kOk = 0, kPrecondition = 1, kUnverified = 2, kUsage = 3 };

  struct Options {
    Int         window = default_window;
    std::uint64_t seed = 0;
    std::string format = "text";

    bool json() const {
      return format == "json";
    }
  };

  std::map<std::string, std::string> const& builtin_terms() {
    static std::map<std::string, std::string> const terms = {
        {"id", R"({"type":"rca","N":0,"m":1,"patch":[],"tails":[{"kind":"affine","a":1,"b":0}]})"},
        {"succ", R"({"type":"rca","N":0,"m":1,"patch":[],"tails":[{"kind":"affine","a":1,"b":1}]})"},
        {"dbl", R"({"type":"rca","N":0,"m":1,"patch":[],"tails":[{"kind":"affine","a":2,"b":0}]})"},
        {"half", R"({"type":"rca","N":0,"m":2,"patch":[],"tails":[{"kind":"affine","a":1,"b":0},{"kind":"affine","a":1,"b":0}]})"},
        {"pred", R"({"type":"rca","N":1,"m":1,"patch":[0],"tails":[{"kind":"affine","a":1,"b":-1}]})"},
        {"cst0", R"({"type":"rca","N":0,"m":1,"patch":[],"tails":[{"kind":"const","b":0}]})"},
        {"mix", R"({"type":"rca","N":0,"m":2,"patch":[],"tails":[{"kind":"const","b":5},{"kind":"affine","a":1,"b":0}]})"},
        {"colproj", R"({"type":"colproj"})"},
        {"colembed", R"({"type":"colembed"})"}};
    return terms;
  }

  std::string read_file(std::filesystem::path const& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
      throw ParseError(0, "cannot read " + p.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  // A term argument is a file, an inline JSON object, or a builtin name
  // (with or without a .term suffix).
  Term load_term(std::string const& arg) {
    if (std::filesystem::is_regular_file(arg)) {
      return parse_term(read_file(arg));
    }
    if (!arg.empty() && arg.front() == '{') {
      return parse_term(arg);
    }
    std::string name = std::filesystem::path(arg).filename().string();
    if (name.size() > 5 && name.ends_with(".term")) {
      name.resize(name.size() - 5);
    }
    auto it = builtin_terms().find(name);
    if (it == builtin_terms().end()) {
      throw ParseError(0, "no such term file or builtin name: " + arg);
    }
    return parse_term(it->second);
  }

  Flag parse_flag(std::string const& name) {
    auto f = flag_from_name(name);
    if (!f) {
      throw ParseError(0, "unknown class " + name);
    }
    return *f;
  }

  std::string set_to_string(ElementSet const& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
      out += (i == 0 ? "" : ", ") + std::to_string(s[i]);
    }
    return out + "}";
  }

  void print(Options const& opt, json const& j, std::string const& text) {
    if (opt.json()) {
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << text;
    }
  }

  json window_json(WindowReport const& w) {
    json fibers = json::array();
    for (auto const& [v, size] : w.largest_fibers) {
      fibers.push_back({{"value", v}, {"size", size}});
    }
    return json{{"window", w.window},
                {"collisions", w.collisions},
                {"distinct", w.distinct},
                {"largest_fibers", fibers},
                {"max_value", w.max_value},
                {"missing_below_max", w.missing_below_max}};
  }

  std::string window_text(WindowReport const& w) {
    std::ostringstream os;
    os << "window: [0, " << w.window << ") collisions=" << w.collisions
       << " distinct=" << w.distinct << " missing_below_max=" << w.missing_below_max
       << " largest_fibers=";
    for (std::size_t i = 0; i < w.largest_fibers.size(); ++i) {
      os << (i == 0 ? "" : ",") << w.largest_fibers[i].first << ":"
         << w.largest_fibers[i].second;
    }
    os << '\n';
    return os.str();
  }

  int cmd_eval(Options const& opt, std::string const& arg, std::vector<Int> const& points) {
    Term const t = load_term(arg);
    json       values = json::array();
    std::ostringstream os;
    for (Int n : points) {
      if (n < 0) {
        throw InvalidArgument("points must be nonnegative");
      }
      Int const v = t(n);
      values.push_back({{"n", n}, {"value", v}});
      os << n << " -> " << v << '\n';
    }
    print(opt, json{{"term", term_to_json(t)}, {"values", values}}, os.str());
    return kOk;
  }

  int cmd_invariants(Options const& opt, std::string const& arg) {
    Term const t = load_term(arg);
    auto const r = term_invariants(t);
    auto const w = window_report(t, opt.window);
    std::ostringstream os;
    os << "term: " << to_string(t) << '\n'
       << "d = " << r.defect.to_string() << '\n'
       << "c = " << r.collapse.to_string() << '\n'
       << "k = " << r.contractive.to_string() << '\n'
       << "rank = " << r.rank.to_string() << '\n'
       << "image = " << (r.image ? epset_to_json(*r.image).dump() : "unknown") << '\n'
       << "infinite kernel class: " << to_string(r.infinite_kernel_class) << '\n'
       << "source: " << (r.source == Source::Asserted ? "asserted" : "computed") << '\n'
       << window_text(w) << "window consistent: " << (consistent(r, w) ? "yes" : "no")
       << '\n';
    json j = report_to_json(r);
    j["term"]               = term_to_json(t);
    j["window_report"]      = window_json(w);
    j["window_consistent"]  = consistent(r, w);
    print(opt, j, os.str());
    return kOk;
  }

  int cmd_classify(Options const& opt, std::string const& arg) {
    Term const t     = load_term(arg);
    auto const r     = term_invariants(t);
    auto const flags = flags_from_report(r);
    auto const w     = window_report(t, opt.window);
    std::ostringstream os;
    os << "term: " << to_string(t) << '\n';
    for (Flag f : all_flags) {
      os << flag_name(f) << "=" << to_string(flags[f]) << '\n';
    }
    os << "source: " << (flags.source == Source::Asserted ? "asserted" : "computed") << '\n'
       << window_text(w) << "window consistent: " << (consistent(r, w) ? "yes" : "no")
       << '\n';
    print(opt,
          json{{"term", term_to_json(t)},
               {"flags", flags_to_json(flags)},
               {"window_report", window_json(w)},
               {"window_consistent", consistent(r, w)}},
          os.str());
    return kOk;
  }

  int cmd_compose(Options const& opt, std::string const& first, std::string const& second) {
    Term t = compose(load_term(first), load_term(second));
    if (auto map = as_rca(t)) {
      t = Term::rca(*map);
    }
    auto const r = term_invariants(t);
    std::ostringstream os;
    os << "term: " << to_string(t) << '\n'
       << "d = " << r.defect.to_string() << '\n'
       << "c = " << r.collapse.to_string() << '\n'
       << "k = " << r.contractive.to_string() << '\n'
       << "rank = " << r.rank.to_string() << '\n';
    json j    = report_to_json(r);
    j["term"] = term_to_json(t);
    print(opt, j, os.str());
    return kOk;
  }

  int cmd_witness(Options const& opt, std::vector<std::string> const& args) {
    if (args.empty()) {
      throw ParseError(0, "witness needs a construction name");
    }
    std::string const& op   = args[0];
    auto               need = [&](std::size_t count) {
      if (args.size() != count + 1) {
        throw ParseError(0, op + " takes " + std::to_string(count) + " arguments");
      }
    };
    WitnessCertificate cert;
    if (op == "w_inj" || op == "w_sur" || op == "w_cp" || op == "w_left_gen_fi"
        || op == "w_sym_from_inj") {
      need(2);
      Term const x = load_term(args[1]);
      Term const y = load_term(args[2]);
      if (op == "w_inj") {
        cert = w_inj(x, y, opt.window);
      } else if (op == "w_sur") {
        cert = w_sur(x, y, opt.window);
      } else if (op == "w_cp") {
        cert = w_cp(x, y, opt.window);
      } else if (op == "w_left_gen_fi") {
        cert = w_left_gen_fi(x, y, opt.window);
      } else {
        cert = w_sym_from_inj(x, y, opt.window);
      }
    } else if (op == "w_dual" || op == "w_right_gen") {
      need(3);
      Flag const kind = parse_flag(args[1]);
      Term const x    = load_term(args[2]);
      Term const y    = load_term(args[3]);
      if (op == "w_dual") {
        cert = w_dual(kind, x, y, opt.window);
      } else {
        cert = w_right_gen(kind, x, y, opt.window);
      }
    } else if (op == "cp_square") {
      need(1);
      cert = cp_square(load_term(args[1]), opt.window);
    } else {
      throw ParseError(0, "unknown construction " + op);
    }
    std::ostringstream os;
    os << "construction: " << cert.construction << '\n'
       << "equation: " << cert.equation() << '\n'
       << "window: [0, " << cert.window << ")\n"
       << "identity holds: " << (cert.identity_holds ? "yes" : "no");
    if (cert.first_mismatch) {
      os << " (first mismatch at " << *cert.first_mismatch << ")";
    }
    os << '\n';
    for (auto const& r : cert.requirements) {
      os << "require " << r.role << "." << flag_name(r.flag) << "=" << to_string(r.expected)
         << ": observed " << to_string(r.observed) << " ("
         << (r.source == Source::Asserted ? "asserted" : "computed")
         << (r.window_consistent ? ", window consistent" : ", contradicted by window")
         << ") " << (r.satisfied ? "ok" : "FAILED") << '\n';
    }
    for (auto const& [role, term] : cert.factors) {
      os << role << ": " << to_string(term) << '\n';
    }
    os << "verified: " << (cert.verified ? "true" : "false") << '\n';
    print(opt, certificate_to_json(cert), os.str());
    return cert.verified ? kOk : kUnverified;
  }

  int cmd_jset(Options const& opt, std::string const& file, std::string const& avoid_text,
               bool construct) {
    SetFamily const M = parse_family(read_file(file));
    std::ostringstream os;
    json               j;
    auto               list = [](std::vector<ElementSet> const& sets) {
      json out = json::array();
      for (auto const& s : sets) {
        out.push_back(s);
      }
      return out;
    };
    auto const all = enumerate_j(M);
    os << "members: " << M.size() << "\nJ(M): " << all.size() << " sets\n";
    for (auto const& h : all) {
      os << "  " << set_to_string(h) << '\n';
    }
    j["members"] = M.size();
    j["J"]       = list(all);
    if (!avoid_text.empty()) {
      SetFamily const avoid_family = parse_family(avoid_text);
      ElementSet      avoid;
      for (auto const& m : avoid_family.members()) {
        avoid.insert(avoid.end(), m.begin(), m.end());
      }
      avoid         = make_set(std::move(avoid));
      auto const hs = filter_h(M, avoid);
      os << "avoiding " << set_to_string(avoid) << ": " << hs.size() << " sets\n";
      for (auto const& h : hs) {
        os << "  " << set_to_string(h) << '\n';
      }
      j["avoid"]    = avoid;
      j["filtered"] = list(hs);
    }
    if (construct) {
      auto const h = construct_h(M);
      os << "sequential construction: " << set_to_string(h)
         << (is_in_j(h, M) ? " (in J)" : " (NOT in J)") << '\n';
      j["constructed"]         = h;
      j["constructed_in_j"]    = is_in_j(h, M);
    }
    print(opt, j, os.str());
    return kOk;
  }

  MapSet parse_maps(std::vector<std::string> const& literals, int& n) {
    MapSet out;
    for (auto const& lit : literals) {
      FinMap const f = parse_finmap(lit);
      if (n == 0) {
        n = f.points();
      } else if (n != f.points()) {
        throw InvalidArgument("all maps must act on the same number of points");
      }
      out.set(static_cast<std::size_t>(f.id()));
    }
    return out;
  }

  int cmd_theorem1(Options const& opt, std::string const& preset_name,
                   std::vector<std::string> const& w_maps,
                   std::vector<std::string> const& u_maps, int cap) {
    PipelineReport r;
    if (!preset_name.empty()) {
      r = run_preset(preset_name);
    } else {
      int          n = 0;
      MapSet const W = parse_maps(w_maps, n);
      MapSet const U = parse_maps(u_maps, n);
      if (n == 0) {
        throw ParseError(0, "give --preset or maps via --w/--u");
      }
      r = theorem1_pipeline(FullTransformationMonoid(n), W, U, cap);
    }
    std::ostringstream os;
    os << "n = " << r.n << "\n|T_n| = " << r.monoid_size << "\n|W| = " << r.w_size
       << "\n|U| = " << r.u_size << "\ncap = " << r.cap << "\nfamily size = "
       << r.family_size << "\ncandidates = " << r.candidates.size() << '\n';
    json cands = json::array();
    for (auto const& c : r.candidates) {
      os << "candidate: |H| = " << c.H.size() << ", complement size = " << c.complement_size
         << ", closed=" << (c.closed ? "true" : "false")
         << ", maximal=" << (c.maximal ? "true" : "false")
         << ", contains constants=" << (c.contains_constants ? "true" : "false")
         << ", regenerating " << c.regenerating << "/" << c.H.size() << '\n';
      cands.push_back({{"H", c.H},
                       {"H_size", c.H.size()},
                       {"complement_size", c.complement_size},
                       {"closed", c.closed},
                       {"maximal", c.maximal},
                       {"contains_constants", c.contains_constants},
                       {"regenerating", c.regenerating}});
    }
    if (r.spot_witness) {
      os << "sequential construction: |H| = " << r.spot_witness->size()
         << (r.spot_in_j ? " (in J)" : " (NOT in J)") << '\n';
    }
    os << "label: " << r.label << '\n';
    json j{{"n", r.n},
           {"monoid_size", r.monoid_size},
           {"w_size", r.w_size},
           {"u_size", r.u_size},
           {"cap", r.cap},
           {"family_size", r.family_size},
           {"candidates", cands},
           {"label", r.label}};
    j["spot_witness"] = r.spot_witness ? json(*r.spot_witness) : json(nullptr);
    j["spot_in_j"]    = r.spot_in_j;
    print(opt, j, os.str());
    return kOk;
  }

  int cmd_closure(Options const& opt, std::vector<std::string> const& maps) {
    int          n    = 0;
    MapSet const gens = parse_maps(maps, n);
    if (n == 0) {
      throw ParseError(0, "closure needs at least one map");
    }
    FullTransformationMonoid const T(n);
    MapSet const                   S = T.closure(gens);
    auto const                     m = is_maximal(T, S);
    std::ostringstream             os;
    json                           elems = json::array();
    os << "size = " << S.count() << '\n';
    for (Int id : T.ids(S)) {
      os << "  " << T.element(id).to_string() << '\n';
      elems.push_back(T.element(id).images());
    }
    os << "proper=" << (m.proper ? "true" : "false")
       << " maximal=" << (m.maximal ? "true" : "false") << '\n';
    print(opt,
          json{{"size", S.count()},
               {"elements", elems},
               {"proper", m.proper},
               {"maximal", m.maximal}},
          os.str());
    return kOk;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariants, classes and witnesses for transformations of N"};
  app.fallthrough();
  app.require_subcommand(1);
  Options opt;
  app.add_option("--window", opt.window, "Window [0, W) for pointwise checks")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Seed (reports are deterministic given the seed)");
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  std::function<int()> action;

  auto* eval = app.add_subcommand("eval", "Evaluate a term at points");
  std::string      term_a, term_b;
  std::vector<Int> points;
  eval->add_option("term", term_a, "Term file, JSON or builtin name")->required();
  eval->add_option("points", points, "Points to evaluate")->required();
  eval->callback([&] { action = [&] { return cmd_eval(opt, term_a, points); }; });

  auto* inv = app.add_subcommand("invariants", "Invariant report of a term");
  inv->add_option("term", term_a)->required();
  inv->callback([&] { action = [&] { return cmd_invariants(opt, term_a); }; });

  auto* cls = app.add_subcommand("classify", "Class flags of a term");
  cls->add_option("term", term_a)->required();
  cls->callback([&] { action = [&] { return cmd_classify(opt, term_a); }; });

  auto* cmp = app.add_subcommand("compose", "Compose two terms (first, then second)");
  cmp->add_option("first", term_a)->required();
  cmp->add_option("second", term_b)->required();
  cmp->callback([&] { action = [&] { return cmd_compose(opt, term_a, term_b); }; });

  auto* wit = app.add_subcommand("witness", "Build and verify a witness certificate");
  std::vector<std::string> wargs;
  wit->add_option("args", wargs, "Construction name followed by its arguments")
      ->required();
  wit->callback([&] { action = [&] { return cmd_witness(opt, wargs); }; });

  auto* js = app.add_subcommand("jset", "Enumerate J(M) for a family file");
  std::string family_file, avoid;
  bool        construct = false;
  js->add_option("family", family_file, "One set per line")->required();
  js->add_option("--avoid", avoid, "Elements to avoid (filter_h)");
  js->add_flag("--construct", construct, "Also run the sequential construction");
  js->callback([&] { action = [&] { return cmd_jset(opt, family_file, avoid, construct); }; });

  auto* sb = app.add_subcommand("sandbox", "Finite transformation monoids T_n");
  sb->require_subcommand(1);
  auto*                    th = sb->add_subcommand("theorem1", "Run the H(U, W) pipeline");
  std::string              preset_name;
  std::vector<std::string> w_maps, u_maps, maps;
  int                      cap = 1;
  th->add_option("--preset", preset_name)->check(CLI::IsMember({"sym3", "sym4"}));
  th->add_option("--w", w_maps, "Map literal of W, e.g. [1,0,0] (repeat)")
      ->allow_extra_args(false);
  th->add_option("--u", u_maps, "Map literal of U (repeat)")->allow_extra_args(false);
  th->add_option("--cap", cap, "Largest generating set size")->check(CLI::NonNegativeNumber);
  th->callback(
      [&] { action = [&] { return cmd_theorem1(opt, preset_name, w_maps, u_maps, cap); }; });
  auto* cl = sb->add_subcommand("closure", "Subsemigroup generated by maps");
  cl->add_option("--map", maps, "Map literal (repeat)")->required()->allow_extra_args(false);
  cl->callback([&] { action = [&] { return cmd_closure(opt, maps); }; });

  try {
    app.parse(argc, argv);
  } catch (CLI::Success const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return action();
  } catch (ParseError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (InvalidArgument const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPrecondition;
  }
}
