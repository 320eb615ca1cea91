#include "fcalc/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fcalc/corpus.hpp"
#include "fcalc/serialize.hpp"

namespace fcalc {

int default_margin() {
  const char* env = std::getenv("FCALC_MARGIN");
  if (!env || !*env) return 2;
  std::string s(env);
  try {
    std::size_t used = 0;
    int m = std::stoi(s, &used);
    if (used == s.size() && m >= 0) return m;
  } catch (const std::exception&) {
  }
  throw InputError("FCALC_MARGIN must be a non-negative integer, got '" + s + "'");
}

namespace {

struct Options {
  std::string coeff = "Z";
  std::optional<int> N;
  bool json = false;
  std::string out_path;
};

Coeff coeff_of(const Options& o) { return Coeff::parse(o.coeff); }

std::string read_source_text(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "corpus:NAME" builds a corpus entry; anything else is a JSON file ("-" for stdin).
CorpusObject load(const std::string& src, const Options& o) {
  const std::string prefix = "corpus:";
  if (src.rfind(prefix, 0) == 0) {
    Coeff c = coeff_of(o);
    return build(src.substr(prefix.size()), c, o.N.value_or(default_window(c)));
  }
  Json j = parse_json(read_source_text(src));
  if (j.is_object() && j.contains("reps")) throw InputError("'" + src + "' holds cross effects, not a functor");
  CorpusObject obj;
  if (j.is_object() && j.contains("proj")) obj.sharp = sharp_from_json(j);
  else obj.fi = fi_from_json(j);
  if (o.N) {
    if (*o.N > obj.as_fi().N()) throw InputError("--N exceeds the truncation of '" + src + "'");
    if (obj.sharp) obj.sharp = obj.sharp->truncate(*o.N);
    else obj.fi = obj.fi->truncate(*o.N);
  }
  return obj;
}

void write_text(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text << "\n";
    return;
  }
  std::ofstream f(o.out_path);
  if (!f) throw InputError("cannot write '" + o.out_path + "'");
  f << text << "\n";
}

std::string profile_table(const TruncFIModule& F) {
  std::ostringstream os;
  os << "n  profile\n";
  for (int n = 0; n <= F.N(); ++n) os << n << "  " << invariant_factors(F.level(n)).to_string() << "\n";
  return os.str();
}

// Functors go to --out as JSON; stdout gets JSON with --json and a table otherwise.
void emit(const Options& o, const Json& j, const std::string& table, std::ostream& out) {
  if (!o.out_path.empty()) {
    write_text(o, j.dump(2), out);
    out << table << "wrote " << o.out_path << "\n";
  } else if (o.json) {
    out << j.dump(2) << "\n";
  } else {
    out << table;
  }
}

Json degree_json(const std::string& what, const DegreeReport& r) {
  Json j;
  j["what"] = what;
  j["certified"] = r.certified();
  j["value"] = r.kind == DegreeReport::Kind::Value ? Json(std::to_string(r.value))
               : r.kind == DegreeReport::Kind::MinusInfinity ? Json("-inf")
                                                             : Json(nullptr);
  if (r.window_hi >= r.window_lo) j["window"] = {std::to_string(r.window_lo), std::to_string(r.window_hi)};
  j["margin"] = std::to_string(r.margin);
  return j;
}

std::string join(const std::vector<Scalar>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i].get_str();
  return os.str();
}

std::string partial_string(const PartialInjection& p) {
  std::ostringstream os;
  for (int i = 0; i < p.source(); ++i) {
    int v = p.images[static_cast<std::size_t>(i)];
    os << (i ? " " : "") << i << "->" << (v < 0 ? std::string("-") : std::to_string(v));
  }
  return p.source() ? os.str() : std::string("(empty)");
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with truncated functors on finite sets."};
  app.name("fcalc");
  app.require_subcommand(1);
  Options o;
  app.add_option("--coeff", o.coeff, "coefficients: Z, Q or F<p> (for corpus: sources)");
  app.add_option("--N", o.N, "truncation level")->check(CLI::NonNegativeNumber);
  app.add_flag("--json", o.json, "print JSON instead of a table");
  app.add_option("--out", o.out_path, "write the resulting functor as JSON to this file");

  std::string src;
  int margin = -1, x = 1, brute = 2;
  bool strong = false, weak = false, generation = false;
  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto with_src = [&](CLI::App* s) {
    s->add_option("source", src, "JSON file, '-' for stdin, or corpus:NAME")->required();
    return s;
  };

  auto* verify_cmd = with_src(sub("verify", "check the structural relations"));
  verify_cmd->add_option("--brute", brute, "levels for brute-force functoriality (partial injections)")
      ->check(CLI::Range(0, 4));
  auto* degree_cmd = with_src(sub("degree", "strong, weak or generation degree"));
  auto* fs = degree_cmd->add_flag("--strong", strong, "strong degree (default)");
  auto* fw = degree_cmd->add_flag("--weak", weak, "weak degree");
  auto* fg = degree_cmd->add_flag("--generation", generation, "degree of generation");
  fs->excludes(fw)->excludes(fg);
  fw->excludes(fg);
  degree_cmd->add_option("--margin", margin, "stabilisation margin (default FCALC_MARGIN or 2)")
      ->check(CLI::NonNegativeNumber);
  auto* diff_cmd = with_src(sub("diff", "difference functor: cokernel of F -> shift(F, x)"));
  auto* shift_cmd = with_src(sub("shift", "translation by x points"));
  auto* kappa_cmd = with_src(sub("kappa", "kernel of F -> shift(F, x)"));
  for (auto* s : {diff_cmd, shift_cmd, kappa_cmd}) s->add_option("--x", x, "number of added points")->check(CLI::Range(0, 8));
  auto* dims_cmd = with_src(sub("dims", "invariant-factor profiles and finite differences"));
  auto* dkd_cmd = with_src(sub("dk-decompose", "cross effects of a functor on partial injections"));
  auto* dkr_cmd = sub("dk-reconstruct", "functor on partial injections from cross effects");
  dkr_cmd->add_option("reps", src, "JSON file of cross effects")->required();
  auto* alpha_cmd = with_src(sub("alpha", "left Kan extension to partial injections"));
  alpha_cmd->add_option("--margin", margin, "consecutive stable stages required")->check(CLI::NonNegativeNumber);
  auto* six_cmd = with_src(sub("six-term", "check the six-term exact sequence at every level"));

  auto* tilde_cmd = sub("tilde-hom", "hom-set of the nullified category");
  std::string cat = "theta";
  int ta = 0, tb = 0;
  tilde_cmd->add_option("--cat", cat, "theta or sigma");
  tilde_cmd->add_option("a", ta, "source")->required()->check(CLI::Range(0, 6));
  tilde_cmd->add_option("b", tb, "target")->required()->check(CLI::Range(0, 6));

  auto* corpus_cmd = sub("corpus", "named examples");
  corpus_cmd->require_subcommand(1);
  auto* list_cmd = corpus_cmd->add_subcommand("list", "list the entries");
  auto* emit_cmd = corpus_cmd->add_subcommand("emit", "print an entry as JSON");
  std::string entry;
  emit_cmd->add_option("name", entry, "entry, e.g. zgeq(3)")->required();
  auto* check_cmd = corpus_cmd->add_subcommand("check", "evaluate the recorded facts");
  std::vector<std::string> entries;
  check_cmd->add_option("names", entries, "entries (default: one instance of each)");
  for (auto* s : {list_cmd, emit_cmd, check_cmd}) s->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (margin < 0) margin = default_margin();
    if (*verify_cmd) {
      auto obj = load(src, o);
      auto v = obj.sharp ? find_violation(*obj.sharp, brute) : find_violation(*obj.fi);
      if (v) {
        err << "invalid: " << v->message() << "\n";
        return 2;
      }
      out << "ok: " << (obj.sharp ? "functor on partial injections" : "functor on injections") << " over "
          << obj.as_fi().coeff().name() << ", N = " << obj.as_fi().N() << "\n";
      return 0;
    }
    if (*degree_cmd) {
      auto obj = load(src, o);
      const auto& F = obj.as_fi();
      std::string what = weak ? "weak degree" : generation ? "generation degree" : "strong degree";
      DegreeReport r = weak ? weak_degree(F, margin) : generation ? generation_degree(F) : strong_degree(F);
      if (o.json) out << degree_json(what, r).dump(2) << "\n";
      else out << r.describe(what) << "\n";
      return 0;
    }
    if (*diff_cmd || *shift_cmd || *kappa_cmd) {
      auto obj = load(src, o);
      const auto& F = obj.as_fi();
      TruncFIModule G = *diff_cmd ? diff(F, x) : *kappa_cmd ? kappa(F, x) : shift(F, x);
      emit(o, to_json(G), profile_table(G), out);
      return 0;
    }
    if (*dims_cmd) {
      auto obj = load(src, o);
      auto p = dim_profile(obj.as_fi());
      if (o.json) {
        Json j;
        Json prof = Json::array(), diffs = Json::array();
        for (const auto& q : p.profiles) {
          Json t = Json::array();
          for (const auto& d : q.torsion) t.push_back(d.get_str());
          prof.push_back({{"rank", std::to_string(q.free_rank)}, {"torsion", t}});
        }
        for (const auto& row : p.diffs) {
          Json r = Json::array();
          for (long v : row) r.push_back(std::to_string(v));
          diffs.push_back(r);
        }
        j["profiles"] = prof;
        j["diffs"] = diffs;
        j["zero_from"] = Json::array();
        for (int z : p.zero_from) j["zero_from"].push_back(std::to_string(z));
        out << j.dump(2) << "\n";
      } else {
        out << profile_table(obj.as_fi());
        for (std::size_t k = 0; k < p.diffs.size(); ++k) {
          out << "diff^" << k << ":";
          for (long v : p.diffs[k]) out << " " << v;
          if (p.zero_from[k] >= 0) out << "   (zero from " << p.zero_from[k] << ")";
          out << "\n";
        }
      }
      return 0;
    }
    if (*dkd_cmd) {
      auto obj = load(src, o);
      if (!obj.sharp) throw InputError("dk-decompose needs a functor on partial injections (with \"proj\")");
      auto reps = dold_kan_decompose(*obj.sharp);
      std::ostringstream table;
      table << "k  profile  character\n";
      for (const auto& r : reps) {
        table << r.k << "  " << invariant_factors(r.module).to_string();
        if (r.module.coeff().is_field()) table << "  " << join(r.character());
        table << "\n";
      }
      emit(o, to_json(reps), table.str(), out);
      return 0;
    }
    if (*dkr_cmd) {
      if (!o.N) throw InputError("dk-reconstruct needs --N");
      auto reps = reps_from_json(parse_json(read_source_text(src)));
      if (reps.empty()) throw InputError("no cross effects given");
      auto F = dold_kan_reconstruct(reps, *o.N);
      emit(o, to_json(F), profile_table(F.base()), out);
      return 0;
    }
    if (*alpha_cmd) {
      auto obj = load(src, o);
      try {
        auto a = alpha(obj.as_fi(), margin);
        std::ostringstream table;
        table << "certified levels 0.." << a.module.N() << " of " << a.requested_N << ", margin " << a.margin << "\n";
        table << "n  stage  profile\n";
        for (int n = 0; n <= a.module.N(); ++n)
          table << n << "  " << a.stage[static_cast<std::size_t>(n)] << "  "
                << invariant_factors(a.module.level(n)).to_string() << "\n";
        emit(o, to_json(a.module), table.str(), out);
      } catch (const WindowError& e) {
        out << "alpha: not certified (" << e.what() << ")\n";
      }
      return 0;
    }
    if (*six_cmd) {
      auto obj = load(src, o);
      const auto& F = obj.as_fi();
      bool all = true;
      for (int n = 0; n + 2 <= F.N(); ++n) {
        bool ok = check_exact(six_term_at(F, n));
        all = all && ok;
        out << "level " << n << ": " << (ok ? "exact" : "NOT exact") << "\n";
      }
      return all ? 0 : 1;
    }
    if (*tilde_cmd) {
      auto h = tilde_hom(parse_tilde_cat(cat), ta, tb);
      if (o.json) {
        out << to_json(h).dump(2) << "\n";
      } else {
        out << to_string(h.cat) << "~(" << ta << "," << tb << "): " << h.classes.size() << " classes, stable from stage "
            << h.stabilized_at << "\n";
        for (const auto& f : h.classes) out << "  " << partial_string(f.normal) << "\n";
      }
      return 0;
    }
    if (*corpus_cmd) {
      if (*list_cmd) {
        for (const auto& e : corpus_list())
          out << e.name << "  " << e.description << (e.sharp ? "  [partial injections]" : "") << "\n";
        return 0;
      }
      Coeff c = coeff_of(o);
      const int N = o.N.value_or(default_window(c));
      if (*emit_cmd) {
        auto obj = build(entry, c, N);
        write_text(o, (obj.sharp ? to_json(*obj.sharp) : to_json(*obj.fi)).dump(2), out);
        return 0;
      }
      if (entries.empty()) entries = corpus_instances();
      int failed = 0;
      for (const auto& name : entries)
        for (const auto& r : run_oracles(name, c, N)) {
          failed += !r.passed;
          out << (r.passed ? "PASS " : "FAIL ") << r.tag << ": " << r.fact;
          if (!r.detail.empty()) out << "  [" << r.detail << "]";
          out << "\n";
        }
      out << (failed ? std::to_string(failed) + " failed" : std::string("all passed")) << "\n";
      return failed ? 1 : 0;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const WindowError& e) {
    out << "not certified: " << e.what() << "\n";
    return 0;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace fcalc
