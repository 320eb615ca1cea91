#include "fcalc/corpus.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace fcalc {

namespace {

std::size_t idx(int n) { return static_cast<std::size_t>(n); }

Mat basis_matrix(std::size_t rows, std::size_t cols, const std::vector<int>& images) {
  if (images.size() != rows) throw InputError("basis action: wrong number of images");
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    if (images[i] >= 0) m(i, static_cast<std::size_t>(images[i])) = 1;
  return m;
}

template <class Key>
std::map<Key, int> index_of(const std::vector<Key>& basis) {
  std::map<Key, int> m;
  for (std::size_t i = 0; i < basis.size(); ++i) m[basis[i]] = static_cast<int>(i);
  return m;
}

std::vector<int> swap_points(std::vector<int> v, int i) {
  for (int& x : v) x = x == i ? i + 1 : x == i + 1 ? i : x;
  return v;
}

}  // namespace

TruncFIModule from_basis_action(Coeff c, int N, const std::vector<std::size_t>& dims,
                                const std::function<std::vector<int>(int, int)>& sym_images,
                                const std::function<std::vector<int>(int)>& incl_images) {
  std::vector<PresentedModule> levels;
  for (int n = 0; n <= N; ++n) levels.push_back(PresentedModule::free(c, dims.at(idx(n))));
  std::vector<ModuleMap> incl;
  std::vector<std::vector<ModuleMap>> sym(idx(N + 1));
  for (int n = 0; n <= N; ++n) {
    for (int i = 0; i + 1 < n; ++i)
      sym[idx(n)].emplace_back(levels[idx(n)], levels[idx(n)], basis_matrix(dims[idx(n)], dims[idx(n)], sym_images(n, i)));
    if (n < N) incl.emplace_back(levels[idx(n)], levels[idx(n + 1)], basis_matrix(dims[idx(n)], dims[idx(n + 1)], incl_images(n)));
  }
  return TruncFIModule(c, N, std::move(levels), std::move(incl), std::move(sym));
}

TruncFIModule constant_functor(Coeff c, int N) {
  return from_basis_action(c, N, std::vector<std::size_t>(idx(N + 1), 1), [](int, int) { return std::vector<int>{0}; },
                           [](int) { return std::vector<int>{0}; });
}

TruncFIModule atomic_functor(Coeff c, int N, int i) {
  std::vector<std::size_t> dims(idx(N + 1), 0);
  if (i >= 0 && i <= N) dims[idx(i)] = 1;
  return from_basis_action(
      c, N, dims, [&](int n, int) { return std::vector<int>(dims[idx(n)], 0); },
      [&](int n) { return std::vector<int>(dims[idx(n)], -1); });
}

TruncFIModule zgeq_functor(Coeff c, int N, int k) {
  std::vector<std::size_t> dims(idx(N + 1), 0);
  for (int n = std::max(k, 0); n <= N; ++n) dims[idx(n)] = 1;
  return from_basis_action(
      c, N, dims, [&](int n, int) { return std::vector<int>(dims[idx(n)], 0); },
      [&](int n) { return std::vector<int>(dims[idx(n)], 0); });
}

TruncFIModule free_fi(Coeff c, int N, int d) {
  std::vector<std::vector<Injection>> basis;
  std::vector<std::map<Injection, int>> index;
  std::vector<std::size_t> dims;
  for (int n = 0; n <= N; ++n) {
    basis.push_back(all_injections(d, n));
    index.push_back(index_of(basis.back()));
    dims.push_back(basis.back().size());
  }
  return from_basis_action(
      c, N, dims,
      [&](int n, int i) {
        std::vector<int> out;
        for (const auto& f : basis[idx(n)]) out.push_back(index[idx(n)].at(Injection{n, swap_points(f.images, i)}));
        return out;
      },
      [&](int n) {
        std::vector<int> out;
        for (const auto& f : basis[idx(n)]) out.push_back(index[idx(n + 1)].at(Injection{n + 1, f.images}));
        return out;
      });
}

TruncFIModule two_subsets(Coeff c, int N) {
  std::vector<std::vector<std::vector<int>>> basis;
  std::vector<std::map<std::vector<int>, int>> index;
  std::vector<std::size_t> dims;
  for (int n = 0; n <= N; ++n) {
    basis.push_back(subsets_of_size(n, 2));
    index.push_back(index_of(basis.back()));
    dims.push_back(basis.back().size());
  }
  return from_basis_action(
      c, N, dims,
      [&](int n, int i) {
        std::vector<int> out;
        for (const auto& s : basis[idx(n)]) {
          auto t = swap_points(s, i);
          std::sort(t.begin(), t.end());
          out.push_back(index[idx(n)].at(t));
        }
        return out;
      },
      [&](int n) {
        std::vector<int> out;
        for (const auto& s : basis[idx(n)]) out.push_back(index[idx(n + 1)].at(s));
        return out;
      });
}

namespace {

// The map from 2-subsets given at level n by a matrix-valued function.
FIMorphism from_two_subsets(Coeff c, int N, const TruncFIModule& dst, const std::function<Mat(int)>& at) {
  FIMorphism f{two_subsets(c, N), dst, {}};
  for (int n = 0; n <= N; ++n) f.at.emplace_back(f.src.level(n), dst.level(n), at(n));
  return f;
}

}  // namespace

FIMorphism norm_map(Coeff c, int N) {
  TruncFIModule P2 = free_fi(c, N, 2);
  return from_two_subsets(c, N, P2, [&](int n) {
    auto subsets = subsets_of_size(n, 2);
    auto inj = all_injections(2, n);
    auto index = index_of(inj);
    Mat m(subsets.size(), inj.size());
    for (std::size_t r = 0; r < subsets.size(); ++r) {
      int a = subsets[r][0], b = subsets[r][1];
      m(r, idx(index.at(Injection{n, {a, b}}))) += 1;
      m(r, idx(index.at(Injection{n, {b, a}}))) += 1;
    }
    return reduce(c, m);
  });
}

TruncFIModule augmentation_kernel(Coeff c, int N) {
  TruncFIModule P1 = free_fi(c, N, 1), C = constant_functor(c, N);
  FIMorphism aug{P1, C, {}};
  for (int n = 0; n <= N; ++n) {
    Mat m(P1.level(n).gens(), 1);
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, 0) = 1;
    aug.at.emplace_back(P1.level(n), C.level(n), m);
  }
  return kernel(aug).module;
}

Pushout upm_pushout(Coeff c, int N) {
  TruncFIModule C = constant_functor(c, N);
  TruncFIModule sum = direct_sum(free_fi(c, N, 2), C);
  FIMorphism nu = norm_map(c, N);
  FIMorphism glue = from_two_subsets(c, N, sum, [&](int n) {
    // a |-> (nu(a), -aug(a)), so that the cokernel identifies nu(a) with aug(a).
    Mat aug(nu.at[idx(n)].mat().rows(), 1);
    for (std::size_t r = 0; r < aug.rows(); ++r) aug(r, 0) = -1;
    return reduce(c, hstack(nu.at[idx(n)].mat(), aug));
  });
  auto q = cokernel(glue);
  FIMorphism incl{C, q.module, {}};
  for (int n = 0; n <= N; ++n) {
    Mat e(1, sum.level(n).gens());
    e(0, e.cols() - 1) = 1;
    incl.at.push_back(compose(q.proj.at[idx(n)], ModuleMap(C.level(n), sum.level(n), e)));
  }
  return Pushout{q.module, incl};
}

TruncFIModule atomic_sum(Coeff c, int N, int k) {
  TruncFIModule F = atomic_functor(c, N, 0);
  for (int i = 1; i <= k; ++i) F = direct_sum(F, atomic_functor(c, N, i));
  return F;
}

TruncFIModule zgeq_sum(Coeff c, int N) {
  TruncFIModule F = zgeq_functor(c, N, 0);
  for (int i = 1; i <= N; ++i) F = direct_sum(F, zgeq_functor(c, N, i));
  return F;
}

FISharpModule free_sharp(Coeff c, int N, int d) {
  std::vector<std::vector<PartialInjection>> basis;
  std::vector<std::map<PartialInjection, int>> index;
  std::vector<std::size_t> dims;
  for (int n = 0; n <= N; ++n) {
    basis.push_back(all_partial_injections(d, n));
    index.push_back(index_of(basis.back()));
    dims.push_back(basis.back().size());
  }
  TruncFIModule base = from_basis_action(
      c, N, dims,
      [&](int n, int i) {
        std::vector<int> out;
        for (const auto& f : basis[idx(n)]) out.push_back(index[idx(n)].at(PartialInjection{n, swap_points(f.images, i)}));
        return out;
      },
      [&](int n) {
        std::vector<int> out;
        for (const auto& f : basis[idx(n)]) out.push_back(index[idx(n + 1)].at(PartialInjection{n + 1, f.images}));
        return out;
      });
  std::vector<ModuleMap> proj;
  for (int n = 0; n < N; ++n) {
    std::vector<int> out;
    for (const auto& f : basis[idx(n + 1)]) {
      PartialInjection g{n, f.images};
      for (int& x : g.images)
        if (x == n) x = -1;
      out.push_back(index[idx(n)].at(g));
    }
    proj.emplace_back(base.level(n + 1), base.level(n), basis_matrix(dims[idx(n + 1)], dims[idx(n)], out));
  }
  return FISharpModule(std::move(base), std::move(proj));
}

FISharpModule constant_sharp(Coeff c, int N) {
  TruncFIModule base = constant_functor(c, N);
  std::vector<ModuleMap> proj;
  for (int n = 0; n < N; ++n) proj.emplace_back(base.level(n + 1), base.level(n), Mat::identity(1));
  return FISharpModule(std::move(base), std::move(proj));
}

// ---------------------------------------------------------------- names

std::vector<CorpusInfo> corpus_list() {
  return {
      {"const", "constant functor", false},
      {"atomic(i)", "coefficients at level i, zero elsewhere", false},
      {"zgeq(n)", "coefficients at levels >= n, identities between them", false},
      {"P(d)", "free on injections from a d-set", false},
      {"augmentation_kernel", "kernel of the augmentation P(1) -> const", false},
      {"ex_upm_A", "free on 2-subsets (2-injections modulo Sigma_2)", false},
      {"ex_upm_F", "pushout of the norm ex_upm_A -> P(2) and the augmentation ex_upm_A -> const", false},
      {"atomic_sum(k)", "sum of atomic(i) for i <= k", false},
      {"zgeq_sum", "sum of zgeq(i) for i <= N", false},
      {"free_sharp(d)", "free on partial injections from a d-set", true},
      {"const_sharp", "constant functor on partial injections", true},
  };
}

std::vector<std::string> corpus_instances() {
  return {"const",         "atomic(2)",    "zgeq(3)",       "P(1)",          "P(2)",       "augmentation_kernel",
          "ex_upm_A",      "ex_upm_F",     "atomic_sum(3)", "zgeq_sum",      "free_sharp(1)", "free_sharp(2)",
          "const_sharp"};
}

int default_window(const Coeff& c) { return c.kind() == CoeffKind::PrimeField ? 8 : 10; }

namespace {

struct Term {
  std::string name;
  std::optional<int> arg;
};

Term parse_term(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
  auto open = s.find('(');
  if (open == std::string::npos) return Term{s, std::nullopt};
  if (s.back() != ')') throw InputError("corpus name '" + s + "': missing ')'");
  std::string arg = s.substr(open + 1, s.size() - open - 2);
  try {
    std::size_t used = 0;
    int v = std::stoi(arg, &used);
    if (used != arg.size()) throw std::invalid_argument(arg);
    return Term{s.substr(0, open), v};
  } catch (const std::exception&) {
    throw InputError("corpus name '" + s + "': parameter must be an integer");
  }
}

CorpusObject build_term(const Term& t, Coeff c, int N) {
  auto need_arg = [&]() {
    if (!t.arg) throw InputError("corpus entry '" + t.name + "' needs an integer parameter");
    return *t.arg;
  };
  auto no_arg = [&]() {
    if (t.arg) throw InputError("corpus entry '" + t.name + "' takes no parameter");
  };
  CorpusObject o;
  if (t.name == "const") no_arg(), o.fi = constant_functor(c, N);
  else if (t.name == "atomic") o.fi = atomic_functor(c, N, need_arg());
  else if (t.name == "zgeq") o.fi = zgeq_functor(c, N, need_arg());
  else if (t.name == "P") {
    int d = need_arg();
    if (d < 0) throw InputError("P(d) needs d >= 0");
    o.fi = free_fi(c, N, d);
  } else if (t.name == "augmentation_kernel") no_arg(), o.fi = augmentation_kernel(c, N);
  else if (t.name == "ex_upm_A") no_arg(), o.fi = two_subsets(c, N);
  else if (t.name == "ex_upm_F") no_arg(), o.fi = upm_pushout(c, N).module;
  else if (t.name == "atomic_sum") o.fi = atomic_sum(c, N, need_arg());
  else if (t.name == "zgeq_sum") no_arg(), o.fi = zgeq_sum(c, N);
  else if (t.name == "free_sharp") {
    int d = need_arg();
    if (d < 0) throw InputError("free_sharp(d) needs d >= 0");
    o.sharp = free_sharp(c, N, d);
  } else if (t.name == "const_sharp") no_arg(), o.sharp = constant_sharp(c, N);
  else throw InputError("unknown corpus entry '" + t.name + "' (see 'corpus list')");
  return o;
}

std::vector<std::string> split_sum(const std::string& name) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : name) {
    if (ch == '+') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

CorpusObject build(const std::string& name, Coeff c, int N) {
  if (N < 0) throw InputError("truncation must be non-negative");
  CorpusObject total;
  bool first = true;
  for (const auto& part : split_sum(name)) {
    CorpusObject o = build_term(parse_term(part), c, N);
    if (first) {
      total = std::move(o);
      first = false;
      continue;
    }
    if (total.sharp && o.sharp) total.sharp = direct_sum(*total.sharp, *o.sharp);
    else if (total.fi && o.fi) total.fi = direct_sum(*total.fi, *o.fi);
    else throw InputError("cannot add a partial-injection functor to an injection functor in '" + name + "'");
  }
  return total;
}

// ---------------------------------------------------------------- oracles

namespace {

struct Oracles {
  std::vector<OracleResult> out;
  std::string entry;

  void add(const std::string& tag, const std::string& fact, const std::function<std::pair<bool, std::string>()>& check) {
    OracleResult r{entry + "/" + tag, fact, false, ""};
    try {
      auto [ok, detail] = check();
      r.passed = ok;
      r.detail = detail;
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  void degree(const std::string& tag, const std::string& fact, const std::function<DegreeReport()>& compute,
              const std::function<bool(const DegreeReport&)>& ok) {
    add(tag, fact, [&]() {
      auto rep = compute();
      return std::make_pair(ok(rep), rep.describe("degree"));
    });
  }
};

bool profiles_equal(const TruncFIModule& a, const TruncFIModule& b) {
  if (a.N() != b.N()) return false;
  for (int n = 0; n <= a.N(); ++n)
    if (!same_profile(a.level(n), b.level(n))) return false;
  return true;
}

std::string dims_string(const TruncFIModule& F) {
  std::ostringstream os;
  auto p = dim_profile(F);
  for (std::size_t n = 0; n < p.profiles.size(); ++n) os << (n ? " " : "") << p.profiles[n].to_string();
  return os.str();
}

std::pair<bool, std::string> alpha_dims(const TruncFIModule& F, int margin, const std::function<long(int)>& expected) {
  auto a = alpha(F, margin);
  bool ok = true;
  std::ostringstream os;
  for (int n = 0; n <= a.module.N(); ++n) {
    auto p = invariant_factors(a.module.level(n));
    ok = ok && p.torsion.empty() && static_cast<long>(p.free_rank) == expected(n);
    os << (n ? " " : "") << p.free_rank;
  }
  os << " (certified levels 0.." << a.module.N() << ")";
  return {ok, os.str()};
}

bool idempotents_complete(const FISharpModule& F, int n) {
  const std::uint32_t subsets = 1u << n;
  std::vector<ModuleMap> e;
  for (std::uint32_t I = 0; I < subsets; ++I) e.push_back(moebius_idem(F, n, I));
  ModuleMap total = ModuleMap::zero(F.level(n), F.level(n));
  for (std::uint32_t I = 0; I < subsets; ++I) {
    total = total + e[I];
    for (std::uint32_t J = 0; J < subsets; ++J) {
      ModuleMap p = compose(e[I], e[J]);
      if (I == J ? !p.equals(e[I]) : !p.is_zero()) return false;
    }
  }
  return total.equals(ModuleMap::identity(F.level(n)));
}

}  // namespace

std::vector<OracleResult> run_oracles(const std::string& name, Coeff c, int N) {
  Oracles o{{}, name};
  CorpusObject obj = build(name, c, N);
  const TruncFIModule& F = obj.as_fi();
  o.add("structure", "passes the structural relations", [&]() {
    auto v = obj.sharp ? find_violation(*obj.sharp) : find_violation(F);
    return std::make_pair(!v.has_value(), v ? v->message() : std::string("ok"));
  });
  Term t = split_sum(name).size() == 1 ? parse_term(name) : Term{"", std::nullopt};
  const int arg = t.arg.value_or(0);
  using Kind = DegreeReport::Kind;

  if (t.name == "const") {
    o.degree("strong-degree", "strong degree = 0", [&] { return strong_degree(F); }, [](auto& r) { return r.is_value(0); });
    o.degree("generation-degree", "generated in degree 0", [&] { return generation_degree(F); }, [](auto& r) { return r.is_value(0); });
    o.add("not-stably-null", "identities survive to the top level", [&] { return std::make_pair(!is_stably_null(F, 1), std::string()); });
    o.add("alpha-constant", "alpha(const) has rank 1 at every certified level", [&] { return alpha_dims(F, 2, [](int) { return 1L; }); });
  } else if (t.name == "atomic") {
    o.add("kappa", "kappa(Z_i) = Z_i", [&] {
      return std::make_pair(profiles_equal(kappa(F), atomic_functor(c, N - 1, arg)), dims_string(kappa(F)));
    });
    o.add("diff", "diff(Z_i) = Z_{i-1}", [&] {
      return std::make_pair(profiles_equal(diff(F), atomic_functor(c, N - 1, arg - 1)), dims_string(diff(F)));
    });
    if (arg + 1 <= N)
      o.degree("weak-degree", "weak degree = -inf (margin 1)", [&] { return weak_degree(F, 1); },
               [](auto& r) { return r.kind == Kind::MinusInfinity; });
  } else if (t.name == "zgeq") {
    if (arg <= N - 1)
      o.degree("strong-degree", "strong degree = " + std::to_string(arg), [&] { return strong_degree(F); },
               [&](auto& r) { return r.is_value(arg); });
    if (arg <= N - 1)
      o.degree("generation-degree", "generated in degree " + std::to_string(arg), [&] { return generation_degree(F); },
               [&](auto& r) { return r.is_value(arg); });
    o.degree("weak-degree", "weak degree = 0 (margin 1)", [&] { return weak_degree(F, 1); }, [](auto& r) { return r.is_value(0); });
    o.add("diff", "diff(Z_{>=n}) = Z_{n-1}", [&] {
      return std::make_pair(profiles_equal(diff(F), atomic_functor(c, N - 1, arg - 1)), dims_string(diff(F)));
    });
    o.add("kappa", "kappa(Z_{>=n}) = 0", [&] { return std::make_pair(kappa(F).is_zero(), dims_string(kappa(F))); });
  } else if (t.name == "P") {
    if (arg <= N - 1)
      o.degree("strong-degree", "strong degree = " + std::to_string(arg), [&] { return strong_degree(F); },
               [&](auto& r) { return r.is_value(arg); });
    if (arg <= N - 1)
      o.degree("generation-degree", "generated in degree " + std::to_string(arg), [&] { return generation_degree(F); },
               [&](auto& r) { return r.is_value(arg); });
    o.add("kappa", "kappa(P_d) = 0", [&] { return std::make_pair(kappa(F).is_zero(), dims_string(kappa(F))); });
    if (arg == 1)
      o.add("diff", "diff(P_1) = const", [&] {
        return std::make_pair(profiles_equal(diff(F), constant_functor(c, N - 1)), dims_string(diff(F)));
      });
  } else if (t.name == "augmentation_kernel") {
    o.degree("strong-degree", "strong degree = 2", [&] { return strong_degree(F); }, [](auto& r) { return r.is_value(2); });
    o.degree("weak-degree", "weak degree = 1 (margin 2)", [&] { return weak_degree(F, 2); }, [](auto& r) { return r.is_value(1); });
    o.add("diff", "diff(F) = Z_{>=1}", [&] {
      return std::make_pair(profiles_equal(diff(F), zgeq_functor(c, N - 1, 1)), dims_string(diff(F)));
    });
    o.add("shift", "shift(F, 1) = P_1", [&] {
      return std::make_pair(profiles_equal(shift(F, 1), free_fi(c, N - 1, 1)), dims_string(shift(F, 1)));
    });
    o.add("stable-kernel", "stable_kernel(F, 1) = 0", [&] { return std::make_pair(stable_kernel(F, 1).is_zero(), std::string()); });
  } else if (t.name == "ex_upm_A") {
    o.add("alpha-dims", "dim alpha(A)(n) = n(n-1)/2 + n + 1", [&] {
      return alpha_dims(F, 2, [](int n) { return static_cast<long>(n) * (n - 1) / 2 + n + 1; });
    });
  } else if (t.name == "ex_upm_F") {
    o.degree("strong-degree", "strong degree = 2", [&] { return strong_degree(F); }, [](auto& r) { return r.is_value(2); });
    // in the coinvariants 1 = (b,c) + (c,b) = 2 (b,c), so this needs characteristic 2
    if (c.kind() == CoeffKind::PrimeField && c.prime() == 2)
      o.add("unit-kernel", "the alpha unit kills the constant", [&] {
        auto p = upm_pushout(c, N);
        auto a = alpha(p.module, 2);
        auto u = unit_alpha(p.module, a);
        bool ok = true;
        for (int n = 0; n <= u.N(); ++n) {
          ok = ok && p.const_incl.at[idx(n)].is_injective();
          ok = ok && compose(u.at[idx(n)], p.const_incl.at[idx(n)]).is_zero();
        }
        return std::make_pair(ok, "checked levels 0.." + std::to_string(u.N()));
      });
  } else if (t.name == "atomic_sum") {
    if (arg + 1 <= N - 1)
      o.degree("weak-degree", "weak degree = -inf (margin 1)", [&] { return weak_degree(F, 1); },
               [](auto& r) { return r.kind == Kind::MinusInfinity; });
    if (arg <= N - 1)
      o.degree("strong-degree", "strong degree = " + std::to_string(arg), [&] { return strong_degree(F); },
               [&](auto& r) { return r.is_value(arg); });
  } else if (t.name == "zgeq_sum") {
    o.degree("strong-degree", "strong degree not certified", [&] { return strong_degree(F); },
             [](auto& r) { return r.kind == Kind::NotCertified; });
  } else if (t.name == "free_sharp" || t.name == "const_sharp") {
    const FISharpModule& S = *obj.sharp;
    o.add("idempotents", "e_I complete and orthogonal for n <= 4", [&] {
      bool ok = true;
      for (int n = 0; n <= std::min(4, N); ++n) ok = ok && idempotents_complete(S, n);
      return std::make_pair(ok, std::string());
    });
    o.add("cross-effects", "cross-effect ranks", [&] {
      bool ok = true;
      std::ostringstream os;
      for (int k = 0; k <= std::min(4, N); ++k) {
        std::size_t r = invariant_factors(cross_effect(S, k).rep.module).free_rank;
        std::size_t want = t.name == "const_sharp" ? (k == 0 ? 1 : 0) : static_cast<std::size_t>(binomial(arg, k) * falling_factorial(k, k));
        ok = ok && r == want;
        os << (k ? " " : "") << r;
      }
      return std::make_pair(ok, os.str());
    });
  }
  return o.out;
}

}  // namespace fcalc
