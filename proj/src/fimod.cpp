#include "fcalc/fimod.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace fcalc {

namespace {

std::size_t idx(int n) { return static_cast<std::size_t>(n); }

void expect_endpoints(const ModuleMap& f, const PresentedModule& src, const PresentedModule& dst, const std::string& what) {
  if (!(f.src() == src) || !(f.dst() == dst)) throw InputError(what + ": endpoints do not match the levels");
}

Perm transposition(int n, int a, int b) {
  std::vector<int> v(idx(n));
  for (int i = 0; i < n; ++i) v[idx(i)] = i;
  std::swap(v[idx(a)], v[idx(b)]);
  return Perm(std::move(v));
}

}  // namespace

TruncFIModule::TruncFIModule(Coeff c, int N, std::vector<PresentedModule> levels, std::vector<ModuleMap> incl,
                             std::vector<std::vector<ModuleMap>> sym)
    : c_(c), N_(N), levels_(std::move(levels)), incl_(std::move(incl)), sym_(std::move(sym)) {
  if (N_ < 0) throw InputError("truncation level must be non-negative");
  if (levels_.size() != idx(N_ + 1)) throw InputError("expected " + std::to_string(N_ + 1) + " levels");
  if (incl_.size() != idx(N_)) throw InputError("expected " + std::to_string(N_) + " inclusion maps");
  if (sym_.size() != idx(N_ + 1)) throw InputError("expected symmetric-group data for " + std::to_string(N_ + 1) + " levels");
  for (int n = 0; n <= N_; ++n) {
    if (!(level(n).coeff() == c_)) throw InputError("level " + std::to_string(n) + " has the wrong coefficients");
    if (sym_[idx(n)].size() != idx(std::max(n - 1, 0)))
      throw InputError("level " + std::to_string(n) + " needs " + std::to_string(std::max(n - 1, 0)) + " transpositions");
    for (int i = 0; i + 1 < n; ++i)
      expect_endpoints(this->sym(n, i), level(n), level(n), "level " + std::to_string(n) + " s_" + std::to_string(i + 1));
    if (n < N_) expect_endpoints(this->incl(n), level(n), level(n + 1), "inclusion " + std::to_string(n));
  }
}

TruncFIModule TruncFIModule::zero(Coeff c, int N) {
  std::vector<PresentedModule> levels(idx(N + 1), PresentedModule::zero(c));
  std::vector<ModuleMap> incl(idx(N), ModuleMap::identity(PresentedModule::zero(c)));
  std::vector<std::vector<ModuleMap>> sym(idx(N + 1));
  for (int n = 2; n <= N; ++n) sym[idx(n)].assign(idx(n - 1), ModuleMap::identity(PresentedModule::zero(c)));
  return TruncFIModule(c, N, std::move(levels), std::move(incl), std::move(sym));
}

ModuleMap TruncFIModule::act(int n, const Perm& p) const {
  if (p.size() != n) throw InputError("permutation size does not match the level");
  auto word = p.adjacent_word();
  Mat m = Mat::identity(level(n).gens());
  for (auto it = word.rbegin(); it != word.rend(); ++it) m = mul(c_, m, sym(n, *it).mat());
  return ModuleMap(level(n), level(n), std::move(m));
}

ModuleMap TruncFIModule::incl_chain(int n, int m) const {
  if (n > m || m > N_) throw InputError("incl_chain: bad level range");
  Mat mat = Mat::identity(level(n).gens());
  for (int k = n; k < m; ++k) mat = mul(c_, mat, incl(k).mat());
  return ModuleMap(level(n), level(m), std::move(mat));
}

ModuleMap TruncFIModule::injection(const Injection& f) const {
  if (!f.valid()) throw InputError("not an injection");
  const int n = f.source(), m = f.target;
  return compose(act(m, f.completing_perm()), incl_chain(n, m));
}

TruncFIModule TruncFIModule::truncate(int M) const {
  if (M > N_ || M < 0) throw InputError("cannot truncate to level " + std::to_string(M));
  if (M == N_) return *this;
  return TruncFIModule(c_, M, std::vector<PresentedModule>(levels_.begin(), levels_.begin() + M + 1),
                       std::vector<ModuleMap>(incl_.begin(), incl_.begin() + M),
                       std::vector<std::vector<ModuleMap>>(sym_.begin(), sym_.begin() + M + 1));
}

bool TruncFIModule::is_zero() const {
  return std::all_of(levels_.begin(), levels_.end(), [](const PresentedModule& m) { return is_zero_module(m); });
}

// ---------------------------------------------------------------- verification

std::string Violation::message() const {
  return "level " + std::to_string(level) + ", generator " + generator + ": " + what;
}

std::optional<Violation> find_violation(const TruncFIModule& F) {
  auto gen = [](int i) { return "s_" + std::to_string(i + 1); };
  for (int n = 0; n <= F.N(); ++n) {
    const ModuleMap id = ModuleMap::identity(F.level(n));
    for (int i = 0; i + 1 < n; ++i) {
      const ModuleMap& s = F.sym(n, i);
      if (!s.is_well_defined()) return Violation{n, gen(i), "matrix does not respect the relations"};
      if (!compose(s, s).equals(id)) return Violation{n, gen(i), "not an involution"};
    }
    for (int i = 0; i + 2 < n; ++i) {
      const ModuleMap &a = F.sym(n, i), &b = F.sym(n, i + 1);
      if (!compose(a, compose(b, a)).equals(compose(b, compose(a, b))))
        return Violation{n, gen(i), "braid relation with " + gen(i + 1) + " fails"};
    }
    for (int i = 0; i + 1 < n; ++i)
      for (int j = i + 2; j + 1 < n; ++j)
        if (!compose(F.sym(n, i), F.sym(n, j)).equals(compose(F.sym(n, j), F.sym(n, i))))
          return Violation{n, gen(i), "does not commute with " + gen(j)};
  }
  for (int n = 0; n < F.N(); ++n) {
    const ModuleMap& inc = F.incl(n);
    const std::string iname = "incl_" + std::to_string(n);
    if (!inc.is_well_defined()) return Violation{n, iname, "matrix does not respect the relations"};
    for (int i = 0; i + 1 < n; ++i)
      if (!compose(inc, F.sym(n, i)).equals(compose(F.sym(n + 1, i), inc)))
        return Violation{n, iname, "not equivariant for " + gen(i)};
    if (n + 2 <= F.N()) {
      ModuleMap two = compose(F.incl(n + 1), inc);
      if (!compose(F.sym(n + 2, n), two).equals(two))
        return Violation{n, iname, "the two added points are not interchangeable"};
    }
  }
  return std::nullopt;
}

void verify(const TruncFIModule& F) {
  if (auto v = find_violation(F)) throw InputError(v->message());
}

// ---------------------------------------------------------------- morphisms

bool FIMorphism::is_natural() const {
  for (int n = 0; n <= N(); ++n) {
    const ModuleMap& f = at[idx(n)];
    if (!f.is_well_defined()) return false;
    for (int i = 0; i + 1 < n; ++i)
      if (!compose(f, src.sym(n, i)).equals(compose(dst.sym(n, i), f))) return false;
    if (n < N() && !compose(at[idx(n + 1)], src.incl(n)).equals(compose(dst.incl(n), f))) return false;
  }
  return true;
}

bool FIMorphism::is_iso() const {
  return std::all_of(at.begin(), at.end(), [](const ModuleMap& f) { return f.is_iso(); });
}
bool FIMorphism::is_injective() const {
  return std::all_of(at.begin(), at.end(), [](const ModuleMap& f) { return f.is_injective(); });
}
bool FIMorphism::is_zero() const {
  return std::all_of(at.begin(), at.end(), [](const ModuleMap& f) { return f.is_zero(); });
}

FIMorphism identity(const TruncFIModule& F) {
  FIMorphism m{F, F, {}};
  for (const auto& L : F.levels()) m.at.push_back(ModuleMap::identity(L));
  return m;
}

FIMorphism compose(const FIMorphism& g, const FIMorphism& f) {
  const int N = std::min(f.N(), g.N());
  FIMorphism r{f.src.truncate(N), g.dst.truncate(N), {}};
  for (int n = 0; n <= N; ++n) r.at.push_back(compose(g.at[idx(n)], f.at[idx(n)]));
  return r;
}

FISimplified simplify(const TruncFIModule& F) {
  std::vector<Simplified> s;
  for (const auto& L : F.levels()) s.push_back(simplify(L));
  std::vector<PresentedModule> levels;
  std::vector<ModuleMap> incl;
  std::vector<std::vector<ModuleMap>> sym(idx(F.N() + 1));
  for (const auto& x : s) levels.push_back(x.module);
  for (int n = 0; n <= F.N(); ++n) {
    const auto& sn = s[idx(n)];
    for (int i = 0; i + 1 < n; ++i) sym[idx(n)].push_back(compose(sn.to_simple, compose(F.sym(n, i), sn.from_simple)));
    if (n < F.N()) incl.push_back(compose(s[idx(n + 1)].to_simple, compose(F.incl(n), sn.from_simple)));
  }
  TruncFIModule G(F.coeff(), F.N(), std::move(levels), std::move(incl), std::move(sym));
  FIMorphism to{F, G, {}}, from{G, F, {}};
  for (const auto& x : s) {
    to.at.push_back(x.to_simple);
    from.at.push_back(x.from_simple);
  }
  return FISimplified{std::move(G), std::move(to), std::move(from)};
}

TruncFIModule induced_sub(const TruncFIModule& F, const std::vector<ModuleMap>& incls) {
  if (incls.size() != idx(F.N() + 1)) throw InputError("induced_sub: one inclusion per level expected");
  std::vector<PresentedModule> levels;
  std::vector<ModuleMap> incl;
  std::vector<std::vector<ModuleMap>> sym(idx(F.N() + 1));
  for (const auto& i : incls) levels.push_back(i.src());
  auto lift = [](const ModuleMap& g, const ModuleMap& through, const std::string& what) {
    auto l = lift_through(g, through);
    if (!l) throw InputError("induced_sub: subobjects are not stable under " + what);
    return *l;
  };
  for (int n = 0; n <= F.N(); ++n) {
    const ModuleMap& in = incls[idx(n)];
    for (int i = 0; i + 1 < n; ++i) sym[idx(n)].push_back(lift(compose(F.sym(n, i), in), in, "the symmetric group"));
    if (n < F.N()) incl.push_back(lift(compose(F.incl(n), in), incls[idx(n + 1)], "inclusions"));
  }
  return TruncFIModule(F.coeff(), F.N(), std::move(levels), std::move(incl), std::move(sym));
}

FIKernel kernel(const FIMorphism& f) {
  std::vector<ModuleMap> incls;
  for (const auto& m : f.at) incls.push_back(kernel(m).incl);
  TruncFIModule src = f.src.truncate(f.N());
  auto s = simplify(induced_sub(src, incls));
  FIMorphism incl{s.module, src, {}};
  for (int n = 0; n <= f.N(); ++n) incl.at.push_back(compose(incls[idx(n)], s.from.at[idx(n)]));
  return FIKernel{std::move(s.module), std::move(incl)};
}

FICokernel cokernel(const FIMorphism& f) {
  const TruncFIModule dst = f.dst.truncate(f.N());
  std::vector<CokernelResult> q;
  for (const auto& m : f.at) q.push_back(cokernel(m));
  std::vector<PresentedModule> levels;
  std::vector<ModuleMap> incl;
  std::vector<std::vector<ModuleMap>> sym(idx(f.N() + 1));
  for (const auto& x : q) levels.push_back(x.module);
  for (int n = 0; n <= f.N(); ++n) {
    for (int i = 0; i + 1 < n; ++i) sym[idx(n)].emplace_back(levels[idx(n)], levels[idx(n)], dst.sym(n, i).mat());
    if (n < f.N()) incl.emplace_back(levels[idx(n)], levels[idx(n + 1)], dst.incl(n).mat());
  }
  auto s = simplify(TruncFIModule(dst.coeff(), f.N(), std::move(levels), std::move(incl), std::move(sym)));
  FIMorphism proj{dst, s.module, {}};
  for (int n = 0; n <= f.N(); ++n) proj.at.push_back(compose(s.to.at[idx(n)], q[idx(n)].proj));
  return FICokernel{std::move(s.module), std::move(proj)};
}

// ---------------------------------------------------------------- calculus

TruncFIModule shift(const TruncFIModule& F, int x) {
  if (x < 0 || x > F.N()) throw InputError("shift by " + std::to_string(x) + " exceeds the truncation " + std::to_string(F.N()));
  if (x == 0) return F;
  const int N = F.N() - x;
  std::vector<PresentedModule> levels;
  std::vector<ModuleMap> incl;
  std::vector<std::vector<ModuleMap>> sym(idx(N + 1));
  for (int n = 0; n <= N; ++n) {
    levels.push_back(F.level(n + x));
    for (int i = 0; i + 1 < n; ++i) sym[idx(n)].push_back(F.sym(n + x, x + i));
    if (n < N) incl.push_back(F.incl(n + x));
  }
  return TruncFIModule(F.coeff(), N, std::move(levels), std::move(incl), std::move(sym));
}

FIMorphism unit_map(const TruncFIModule& F, int x) {
  TruncFIModule T = shift(F, x);
  FIMorphism u{F.truncate(T.N()), T, {}};
  for (int n = 0; n <= T.N(); ++n) {
    Injection f{n + x, {}};
    for (int i = 0; i < n; ++i) f.images.push_back(x + i);
    u.at.push_back(F.injection(f));
  }
  return u;
}

TruncFIModule diff(const TruncFIModule& F, int x) { return cokernel(unit_map(F, x)).module; }
TruncFIModule kappa(const TruncFIModule& F, int x) { return kernel(unit_map(F, x)).module; }

namespace {

// Composites F(n) -> F(N) for every n.
std::vector<ModuleMap> maps_to_top(const TruncFIModule& F) {
  std::vector<ModuleMap> top(idx(F.N() + 1));
  top[idx(F.N())] = ModuleMap::identity(F.level(F.N()));
  for (int n = F.N() - 1; n >= 0; --n) top[idx(n)] = compose(top[idx(n + 1)], F.incl(n));
  return top;
}

int window_or_throw(const TruncFIModule& F, int margin) {
  if (margin < 1) throw InputError("stability margin must be at least 1");
  const int W = F.N() - margin;
  if (W < 0) throw WindowError("window empty: margin " + std::to_string(margin) + " exceeds truncation " + std::to_string(F.N()));
  return W;
}

}  // namespace

TruncFIModule stable_kernel(const TruncFIModule& F, int margin) {
  const int W = window_or_throw(F, margin);
  auto top = maps_to_top(F);
  std::vector<ModuleMap> incls;
  for (int n = 0; n <= W; ++n) incls.push_back(kernel(top[idx(n)]).incl);
  return simplify(induced_sub(F.truncate(W), incls)).module;
}

bool is_stably_null(const TruncFIModule& F, int margin) {
  const int W = window_or_throw(F, margin);
  auto top = maps_to_top(F);
  for (int n = 0; n <= W; ++n)
    if (!top[idx(n)].is_zero()) return false;
  return true;
}

std::string DegreeReport::value_string() const {
  switch (kind) {
    case Kind::Value: return std::to_string(value);
    case Kind::MinusInfinity: return "-inf";
    case Kind::NotCertified: return "not certified";
  }
  return "?";
}

std::string DegreeReport::describe(const std::string& what) const {
  std::ostringstream os;
  os << what << " = " << value_string();
  if (window_hi >= window_lo) os << ", window [" << window_lo << "," << window_hi << "]";
  if (margin > 0) os << ", margin " << margin;
  return os.str();
}

DegreeReport strong_degree(const TruncFIModule& F) {
  DegreeReport r;
  if (F.is_zero()) {
    r.kind = DegreeReport::Kind::MinusInfinity;
    r.window_hi = F.N();
    return r;
  }
  TruncFIModule G = F;
  for (int d = 0; G.N() >= 1; ++d) {
    G = diff(G);
    if (G.is_zero()) {
      r.kind = DegreeReport::Kind::Value;
      r.value = d;
      r.window_hi = G.N();
      return r;
    }
  }
  return r;
}

DegreeReport weak_degree(const TruncFIModule& F, int margin) {
  DegreeReport r;
  r.margin = margin;
  if (margin < 1) throw InputError("stability margin must be at least 1");
  TruncFIModule G = F;
  for (int d = -1;; ++d) {
    if (G.N() - margin < 0) return r;
    if (is_stably_null(G, margin)) {
      r.kind = d < 0 ? DegreeReport::Kind::MinusInfinity : DegreeReport::Kind::Value;
      r.value = d;
      r.window_hi = G.N() - margin;
      return r;
    }
    if (G.N() < 1) return r;
    G = diff(G);
  }
}

DegreeReport generation_degree(const TruncFIModule& F) {
  DegreeReport r;
  if (F.is_zero()) {
    r.kind = DegreeReport::Kind::MinusInfinity;
    r.window_hi = F.N();
    return r;
  }
  // Level n is generated by level n - 1 iff the translates of the image of
  // incl by coset representatives (k n-1) of Sigma_{n-1} in Sigma_n span it.
  int last_bad = 0;
  for (int n = 1; n <= F.N(); ++n) {
    Mat span = F.level(n).rels();
    for (int k = 0; k < n; ++k) {
      Mat moved = k == n - 1 ? F.incl(n - 1).mat() : mul(F.coeff(), F.incl(n - 1).mat(), F.act(n, transposition(n, k, n - 1)).mat());
      span = vstack(span, moved);
    }
    if (!is_zero_module(PresentedModule(F.coeff(), F.level(n).gens(), span))) last_bad = n;
  }
  r.value = last_bad;
  r.window_lo = last_bad;
  r.window_hi = F.N();
  r.kind = last_bad < F.N() ? DegreeReport::Kind::Value : DegreeReport::Kind::NotCertified;
  if (!r.certified()) r.window_hi = -1;
  return r;
}

DimProfile dim_profile(const TruncFIModule& F) {
  DimProfile p;
  std::vector<long> ranks;
  for (const auto& L : F.levels()) {
    p.profiles.push_back(invariant_factors(L));
    ranks.push_back(static_cast<long>(p.profiles.back().free_rank));
  }
  p.diffs.push_back(ranks);
  while (p.diffs.back().size() > 1) {
    const auto& prev = p.diffs.back();
    std::vector<long> next;
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) next.push_back(prev[i + 1] - prev[i]);
    p.diffs.push_back(std::move(next));
  }
  for (const auto& row : p.diffs) {
    int z = static_cast<int>(row.size());
    while (z > 0 && row[idx(z - 1)] == 0) --z;
    p.zero_from.push_back(z == static_cast<int>(row.size()) ? -1 : z);
  }
  return p;
}

// ---------------------------------------------------------------- Schur functors

namespace {

std::vector<std::vector<int>> multisets(int g, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < g; ++i) {
      cur.push_back(i);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::size_t schur_dim(Schur s, int g, int k) {
  switch (s) {
    case Schur::Tensor: {
      std::size_t d = 1;
      for (int i = 0; i < k; ++i) d *= static_cast<std::size_t>(g);
      return d;
    }
    case Schur::Symmetric: return multisets(g, k).size();
    case Schur::Exterior: return static_cast<std::size_t>(binomial(g, k));
  }
  return 0;
}

Mat schur_matrix(const Coeff& c, const Mat& m, Schur s, int k) {
  const int g = static_cast<int>(m.rows()), h = static_cast<int>(m.cols());
  switch (s) {
    case Schur::Tensor: {
      Mat r = Mat::identity(1);
      for (int i = 0; i < k; ++i) r = kron(c, r, m);
      return r;
    }
    case Schur::Exterior: {
      auto rows = subsets_of_size(g, k), cols = subsets_of_size(h, k);
      Mat r(rows.size(), cols.size());
      for (std::size_t a = 0; a < rows.size(); ++a) {
        std::vector<std::size_t> ri(rows[a].begin(), rows[a].end());
        Mat sub = m.select_rows(ri);
        for (std::size_t b = 0; b < cols.size(); ++b) {
          std::vector<std::size_t> ci(cols[b].begin(), cols[b].end());
          r(a, b) = determinant(c, sub.select_cols(ci));
        }
      }
      return r;
    }
    case Schur::Symmetric: {
      auto rows = multisets(g, k), cols = multisets(h, k);
      std::map<std::vector<int>, std::size_t> col_index;
      for (std::size_t b = 0; b < cols.size(); ++b) col_index[cols[b]] = b;
      Mat r(rows.size(), cols.size());
      for (std::size_t a = 0; a < rows.size(); ++a) {
        std::map<std::vector<int>, Scalar> poly{{{}, Scalar(1)}};
        for (int factor : rows[a]) {
          std::map<std::vector<int>, Scalar> next;
          for (const auto& [mono, coef] : poly)
            for (int l = 0; l < h; ++l) {
              const Scalar& e = m(static_cast<std::size_t>(factor), static_cast<std::size_t>(l));
              if (sgn(e) == 0) continue;
              auto mm = mono;
              mm.insert(std::upper_bound(mm.begin(), mm.end(), l), l);
              next[mm] += coef * e;
            }
          poly = std::move(next);
        }
        for (const auto& [mono, coef] : poly) r(a, col_index.at(mono)) = c.reduce(coef);
      }
      return r;
    }
  }
  return Mat();
}

void require_field(const Coeff& c, const std::string& what) {
  if (!c.is_field()) throw InputError(what + " requires field coefficients, got " + c.name());
}

}  // namespace

TruncFIModule postcompose(const TruncFIModule& F, Schur s, int k) {
  require_field(F.coeff(), "postcompose");
  if (k < 0) throw InputError("postcompose: negative power");
  for (int n = 0; n <= F.N(); ++n)
    if (!F.level(n).is_free_presentation())
      throw InputError("postcompose: level " + std::to_string(n) + " has a nonzero relation row; present it on a basis first");
  const Coeff& c = F.coeff();
  std::vector<PresentedModule> levels;
  for (const auto& L : F.levels()) levels.push_back(PresentedModule::free(c, schur_dim(s, static_cast<int>(L.gens()), k)));
  std::vector<ModuleMap> incl;
  std::vector<std::vector<ModuleMap>> sym(idx(F.N() + 1));
  for (int n = 0; n <= F.N(); ++n) {
    for (int i = 0; i + 1 < n; ++i)
      sym[idx(n)].emplace_back(levels[idx(n)], levels[idx(n)], schur_matrix(c, F.sym(n, i).mat(), s, k));
    if (n < F.N()) incl.emplace_back(levels[idx(n)], levels[idx(n + 1)], schur_matrix(c, F.incl(n).mat(), s, k));
  }
  return TruncFIModule(c, F.N(), std::move(levels), std::move(incl), std::move(sym));
}

TruncFIModule direct_sum(const TruncFIModule& F, const TruncFIModule& G) {
  if (!(F.coeff() == G.coeff())) throw InputError("direct sum of functors with different coefficients");
  if (F.N() != G.N()) throw InputError("direct sum of functors with different truncations");
  std::vector<PresentedModule> levels;
  std::vector<ModuleMap> incl;
  std::vector<std::vector<ModuleMap>> sym(idx(F.N() + 1));
  for (int n = 0; n <= F.N(); ++n) {
    levels.push_back(direct_sum(F.level(n), G.level(n)));
    for (int i = 0; i + 1 < n; ++i) sym[idx(n)].push_back(direct_sum(F.sym(n, i), G.sym(n, i)));
    if (n < F.N()) incl.push_back(direct_sum(F.incl(n), G.incl(n)));
  }
  return TruncFIModule(F.coeff(), F.N(), std::move(levels), std::move(incl), std::move(sym));
}

TruncFIModule tensor(const TruncFIModule& F0, const TruncFIModule& G0) {
  if (!(F0.coeff() == G0.coeff())) throw InputError("tensor product of functors with different coefficients");
  if (F0.N() != G0.N()) throw InputError("tensor product of functors with different truncations");
  require_field(F0.coeff(), "tensor");
  const TruncFIModule F = simplify(F0).module, G = simplify(G0).module;
  const Coeff& c = F.coeff();
  std::vector<PresentedModule> levels;
  std::vector<ModuleMap> incl;
  std::vector<std::vector<ModuleMap>> sym(idx(F.N() + 1));
  for (int n = 0; n <= F.N(); ++n) levels.push_back(PresentedModule::free(c, F.level(n).gens() * G.level(n).gens()));
  for (int n = 0; n <= F.N(); ++n) {
    for (int i = 0; i + 1 < n; ++i)
      sym[idx(n)].emplace_back(levels[idx(n)], levels[idx(n)], kron(c, F.sym(n, i).mat(), G.sym(n, i).mat()));
    if (n < F.N()) incl.emplace_back(levels[idx(n)], levels[idx(n + 1)], kron(c, F.incl(n).mat(), G.incl(n).mat()));
  }
  return TruncFIModule(c, F.N(), std::move(levels), std::move(incl), std::move(sym));
}

// ---------------------------------------------------------------- six-term sequence

std::vector<ModuleMap> six_term_at(const TruncFIModule& F, int n) {
  if (n < 0 || n + 2 > F.N()) throw WindowError("six-term sequence needs levels up to n + 2");
  Injection u{n + 1, {}}, v{n + 2, {0}};
  for (int i = 0; i < n; ++i) u.images.push_back(i + 1);
  for (int j = 1; j <= n; ++j) v.images.push_back(j + 1);
  return snake_sequence(F.injection(u), F.injection(v));
}

bool verify_six_term(const TruncFIModule& F) {
  if (F.N() < 2) throw WindowError("six-term sequence needs truncation at least 2");
  for (int n = 0; n + 2 <= F.N(); ++n)
    if (!check_exact(six_term_at(F, n))) return false;
  return true;
}

}  // namespace fcalc
