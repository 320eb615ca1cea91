#include "fcalc/fisharp.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace fcalc {

namespace {

std::size_t idx(int n) { return static_cast<std::size_t>(n); }

Perm adjacent_free_perm(const std::vector<int>& images) { return Perm(images); }

}  // namespace

FISharpModule::FISharpModule(TruncFIModule base, std::vector<ModuleMap> proj) : base_(std::move(base)), proj_(std::move(proj)) {
  if (proj_.size() != idx(base_.N())) throw InputError("expected " + std::to_string(base_.N()) + " projection maps");
  for (int n = 0; n < base_.N(); ++n)
    if (!(proj_[idx(n)].src() == base_.level(n + 1)) || !(proj_[idx(n)].dst() == base_.level(n)))
      throw InputError("projection " + std::to_string(n) + ": endpoints do not match the levels");
}

ModuleMap FISharpModule::partial(const PartialInjection& f) const {
  if (!f.valid()) throw InputError("not a partial injection");
  const int n = f.source(), m = f.target;
  if (n > N() || m > N()) throw InputError("partial injection leaves the truncation window");
  auto dom = f.domain();
  const int k = static_cast<int>(dom.size());
  // rho moves the domain, in order, to the front.
  std::vector<int> rho(idx(n), -1);
  for (int j = 0; j < k; ++j) rho[idx(dom[idx(j)])] = j;
  int next = k;
  for (int i = 0; i < n; ++i)
    if (rho[idx(i)] < 0) rho[idx(i)] = next++;
  Mat mat = base_.act(n, adjacent_free_perm(rho)).mat();
  for (int l = n; l > k; --l) mat = mul(coeff(), mat, proj(l - 1).mat());
  Injection g{m, {}};
  for (int j = 0; j < k; ++j) g.images.push_back(f.images[idx(dom[idx(j)])]);
  mat = mul(coeff(), mat, base_.injection(g).mat());
  return ModuleMap(level(n), level(m), std::move(mat));
}

FISharpModule FISharpModule::truncate(int M) const {
  if (M == N()) return *this;
  return FISharpModule(base_.truncate(M), std::vector<ModuleMap>(proj_.begin(), proj_.begin() + M));
}

std::optional<Violation> find_violation(const FISharpModule& F, int brute_bound) {
  if (auto v = find_violation(F.base())) return v;
  auto gen = [](int i) { return "s_" + std::to_string(i + 1); };
  for (int n = 0; n < F.N(); ++n) {
    const std::string pname = "proj_" + std::to_string(n);
    const ModuleMap& p = F.proj(n);
    if (!p.is_well_defined()) return Violation{n + 1, pname, "matrix does not respect the relations"};
    if (!compose(p, F.base().incl(n)).equals(ModuleMap::identity(F.level(n))))
      return Violation{n, pname, "proj after incl is not the identity"};
    for (int i = 0; i + 1 < n; ++i)
      if (!compose(p, F.base().sym(n + 1, i)).equals(compose(F.base().sym(n, i), p)))
        return Violation{n + 1, pname, "not equivariant for " + gen(i)};
    if (n + 2 <= F.N()) {
      ModuleMap two = compose(p, F.proj(n + 1));
      if (!compose(two, F.base().sym(n + 2, n)).equals(two))
        return Violation{n + 2, pname, "dropping the last two points depends on their order"};
    }
    if (n >= 1) {
      ModuleMap lhs = compose(p, compose(F.base().sym(n + 1, n - 1), F.base().incl(n)));
      ModuleMap rhs = compose(F.base().incl(n - 1), F.proj(n - 1));
      if (!lhs.equals(rhs)) return Violation{n, pname, "does not commute with moving the last point"};
    }
  }
  const int b = std::min(brute_bound, F.N());
  std::map<std::pair<int, int>, std::vector<std::pair<PartialInjection, ModuleMap>>> hom;
  for (int x = 0; x <= b; ++x)
    for (int y = 0; y <= b; ++y)
      for (const auto& f : all_partial_injections(x, y)) hom[{x, y}].emplace_back(f, F.partial(f));
  for (int x = 0; x <= b; ++x)
    for (int y = 0; y <= b; ++y)
      for (int z = 0; z <= b; ++z)
        for (const auto& [f, Ff] : hom[{x, y}])
          for (const auto& [g, Fg] : hom[{y, z}]) {
            auto gf = g.after(f);
            const auto& list = hom[{x, z}];
            auto it = std::find_if(list.begin(), list.end(), [&](const auto& e) { return e.first == gf; });
            if (!it->second.equals(compose(Fg, Ff)))
              return Violation{x, to_string(gf), "not functorial: differs from " + to_string(g) + " after " + to_string(f)};
          }
  return std::nullopt;
}

void verify(const FISharpModule& F, int brute_bound) {
  if (auto v = find_violation(F, brute_bound)) throw InputError(v->message());
}

FISharpSimplified simplify(const FISharpModule& F) {
  auto s = simplify(F.base());
  std::vector<ModuleMap> proj;
  for (int n = 0; n < F.N(); ++n) proj.push_back(compose(s.to.at[idx(n)], compose(F.proj(n), s.from.at[idx(n + 1)])));
  return FISharpSimplified{FISharpModule(s.module, std::move(proj)), s.to.at, s.from.at};
}

FISharpModule direct_sum(const FISharpModule& F, const FISharpModule& G) {
  auto base = direct_sum(F.base(), G.base());
  std::vector<ModuleMap> proj;
  for (int n = 0; n < F.N(); ++n) proj.push_back(direct_sum(F.proj(n), G.proj(n)));
  return FISharpModule(std::move(base), std::move(proj));
}

bool is_natural(const FISharpModule& src, const FISharpModule& dst, const std::vector<ModuleMap>& at) {
  const int N = static_cast<int>(at.size()) - 1;
  FIMorphism m{src.base().truncate(N), dst.base().truncate(N), at};
  if (!m.is_natural()) return false;
  for (int n = 0; n < N; ++n)
    if (!compose(at[idx(n)], src.proj(n)).equals(compose(dst.proj(n), at[idx(n + 1)]))) return false;
  return true;
}

// ---------------------------------------------------------------- idempotents

ModuleMap epsilon_idem(const FISharpModule& F, int n, std::uint32_t subset) {
  if (n < 0 || n > F.N()) throw InputError("level " + std::to_string(n) + " outside the truncation");
  if (n < 32 && (subset >> n) != 0) throw InputError("subset is not contained in {1.." + std::to_string(n) + "}");
  PartialInjection f{n, std::vector<int>(idx(n), -1)};
  for (int i = 0; i < n; ++i)
    if (subset & (1u << i)) f.images[idx(i)] = i;
  return F.partial(f);
}

ModuleMap moebius_idem(const FISharpModule& F, int n, std::uint32_t subset) {
  ModuleMap e = epsilon_idem(F, n, subset);
  Mat total(e.mat().rows(), e.mat().cols());
  const int size = std::popcount(subset);
  // Sum over J subset of I of (-1)^{|I|-|J|} eps_J.
  for (std::uint32_t J = subset;; J = (J - 1) & subset) {
    Mat m = epsilon_idem(F, n, J).mat();
    total = (size - std::popcount(J)) % 2 ? sub(F.coeff(), total, m) : add(F.coeff(), total, m);
    if (J == 0) break;
  }
  return ModuleMap(F.level(n), F.level(n), std::move(total));
}

// ---------------------------------------------------------------- Sigma_k representations

ModuleMap SymRep::act(const Perm& p) const {
  if (p.size() != k) throw InputError("permutation size does not match the representation");
  auto word = p.adjacent_word();
  Mat m = Mat::identity(module.gens());
  for (auto it = word.rbegin(); it != word.rend(); ++it) m = mul(module.coeff(), m, sym.at(idx(*it)).mat());
  return ModuleMap(module, module, std::move(m));
}

std::vector<Scalar> SymRep::character() const {
  std::vector<Scalar> chi;
  if (!module.coeff().is_field()) return chi;
  auto s = simplify(module);
  for (const auto& lambda : partitions(k)) {
    ModuleMap g = compose(s.to_simple, compose(act(perm_with_cycle_type(lambda)), s.from_simple));
    chi.push_back(trace(module.coeff(), g.mat()));
  }
  return chi;
}

std::optional<std::string> SymRep::violation() const {
  if (sym.size() != idx(std::max(k - 1, 0))) return "degree " + std::to_string(k) + ": wrong number of transpositions";
  const ModuleMap id = ModuleMap::identity(module);
  for (int i = 0; i + 1 < k; ++i) {
    const ModuleMap& s = sym[idx(i)];
    if (!(s.src() == module) || !(s.dst() == module)) return "degree " + std::to_string(k) + ": s_" + std::to_string(i + 1) + " has wrong endpoints";
    if (!s.is_well_defined() || !compose(s, s).equals(id))
      return "degree " + std::to_string(k) + ": s_" + std::to_string(i + 1) + " is not an involution";
    if (i + 2 < k) {
      const ModuleMap& t = sym[idx(i + 1)];
      if (!compose(s, compose(t, s)).equals(compose(t, compose(s, t))))
        return "degree " + std::to_string(k) + ": braid relation fails at s_" + std::to_string(i + 1);
    }
    for (int j = i + 2; j + 1 < k; ++j)
      if (!compose(s, sym[idx(j)]).equals(compose(sym[idx(j)], s)))
        return "degree " + std::to_string(k) + ": s_" + std::to_string(i + 1) + " and s_" + std::to_string(j + 1) + " do not commute";
  }
  return std::nullopt;
}

bool same_rep(const SymRep& a, const SymRep& b) {
  if (a.k != b.k || !same_profile(a.module, b.module)) return false;
  return a.character() == b.character();
}

namespace {

SymRep rep_from_mats(Coeff c, int k, std::size_t dim, const std::vector<Mat>& mats) {
  SymRep r{k, PresentedModule::free(c, dim), {}};
  for (const auto& m : mats) r.sym.emplace_back(r.module, r.module, m);
  return r;
}

}  // namespace

SymRep trivial_rep(Coeff c, int k) {
  return rep_from_mats(c, k, 1, std::vector<Mat>(idx(std::max(k - 1, 0)), Mat::identity(1)));
}

SymRep sign_rep(Coeff c, int k) {
  return rep_from_mats(c, k, 1, std::vector<Mat>(idx(std::max(k - 1, 0)), Mat::from_ints({{-1}})));
}

SymRep permutation_rep(Coeff c, int k) {
  std::vector<Mat> mats;
  for (int i = 0; i + 1 < k; ++i) {
    Mat m = Mat::identity(idx(k));
    m(idx(i), idx(i)) = 0;
    m(idx(i + 1), idx(i + 1)) = 0;
    m(idx(i), idx(i + 1)) = 1;
    m(idx(i + 1), idx(i)) = 1;
    mats.push_back(std::move(m));
  }
  return rep_from_mats(c, k, idx(k), mats);
}

SymRep zero_rep(Coeff c, int k) { return rep_from_mats(c, k, 0, std::vector<Mat>(idx(std::max(k - 1, 0)), Mat(0, 0))); }

SymRep direct_sum(const SymRep& a, const SymRep& b) {
  if (a.k != b.k) throw InputError("direct sum of representations of different symmetric groups");
  SymRep r{a.k, direct_sum(a.module, b.module), {}};
  for (std::size_t i = 0; i < a.sym.size(); ++i) r.sym.push_back(direct_sum(a.sym[i], b.sym[i]));
  return r;
}

SymRep change_basis(const SymRep& r, const Mat& P) {
  ModuleMap p(r.module, r.module, P);
  ModuleMap pinv = inverse(p);
  SymRep out{r.k, r.module, {}};
  for (const auto& s : r.sym) out.sym.push_back(compose(pinv, compose(s, p)));
  return out;
}

// ---------------------------------------------------------------- cross-effects

namespace {

// The quotient of level k by extra relation rows, with the action of F's own
// transpositions, simplified.
SymRep quotient_rep(const TruncFIModule& F, int k, const Mat& extra, ModuleMap* from_quotient) {
  const PresentedModule& L = F.level(k);
  PresentedModule Q(F.coeff(), L.gens(), vstack(L.rels(), extra.rows() ? extra : Mat(0, L.gens())));
  auto s = simplify(Q);
  SymRep r{k, s.module, {}};
  for (int i = 0; i + 1 < k; ++i) {
    ModuleMap act(Q, Q, F.sym(k, i).mat());
    r.sym.push_back(compose(s.to_simple, compose(act, s.from_simple)));
  }
  if (from_quotient) *from_quotient = s.from_simple;
  return r;
}

}  // namespace

CrossEffect cross_effect(const FISharpModule& F, int k) {
  if (k < 0 || k > F.N()) throw InputError("cross-effect degree " + std::to_string(k) + " outside the truncation");
  const std::uint32_t full = k == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << k) - 1);
  ModuleMap e = moebius_idem(F, k, full);
  Mat ker = kernel(e).incl.mat();
  ModuleMap from;
  SymRep rep = quotient_rep(F.base(), k, ker, &from);
  // Im e is F(k)/ker e; e itself induces the inclusion back into F(k).
  ModuleMap into(from.dst(), F.level(k), e.mat());
  return CrossEffect{rep, compose(into, from)};
}

SymRep cross_effect_cokernel(const TruncFIModule& F, int k) {
  if (k < 0 || k > F.N()) throw InputError("cross-effect degree " + std::to_string(k) + " outside the truncation");
  Mat images(0, F.level(k).gens());
  for (int i = 0; i < k; ++i) {
    Injection f{k, {}};
    for (int j = 0; j + 1 < k; ++j) f.images.push_back(j < i ? j : j + 1);
    images = vstack(images, F.injection(f).mat());
  }
  return quotient_rep(F, k, images, nullptr);
}

SymRepList dold_kan_decompose(const FISharpModule& F) {
  SymRepList reps;
  for (int k = 0; k <= F.N(); ++k) reps.push_back(cross_effect(F, k).rep);
  return reps;
}

namespace {

struct DKLevel {
  std::vector<std::size_t> offset;  // by subset bitmask
  PresentedModule module;
};

const SymRep* rep_at(const SymRepList& reps, int k) { return k < static_cast<int>(reps.size()) ? &reps[idx(k)] : nullptr; }

DKLevel dk_level(const SymRepList& reps, const Coeff& c, int n) {
  DKLevel L;
  Mat rels(0, 0);
  std::size_t total = 0;
  std::vector<const Mat*> blocks;
  for (std::uint32_t S = 0; S < (1u << n); ++S) {
    L.offset.push_back(total);
    const SymRep* r = rep_at(reps, std::popcount(S));
    if (r) total += r->module.gens();
  }
  Mat R(0, total);
  for (std::uint32_t S = 0; S < (1u << n); ++S) {
    const SymRep* r = rep_at(reps, std::popcount(S));
    if (!r) continue;
    const Mat& rr = r->module.rels();
    Mat block(rr.rows(), total);
    for (std::size_t i = 0; i < rr.rows(); ++i)
      for (std::size_t j = 0; j < rr.cols(); ++j) block(i, L.offset[S] + j) = rr(i, j);
    R = vstack(R, block);
  }
  L.module = PresentedModule(c, total, R);
  return L;
}

Mat dk_matrix(const SymRepList& reps, const DKLevel& src, const DKLevel& dst, const PartialInjection& f) {
  const int n = f.source();
  Mat m(src.module.gens(), dst.module.gens());
  for (std::uint32_t S = 0; S < (1u << n); ++S) {
    const int k = std::popcount(S);
    const SymRep* r = rep_at(reps, k);
    if (!r || r->module.gens() == 0) continue;
    std::vector<int> elems;
    bool inside = true;
    std::uint32_t T = 0;
    for (int i = 0; i < n; ++i)
      if (S & (1u << i)) {
        elems.push_back(i);
        if (f.images[idx(i)] < 0) inside = false;
        else T |= 1u << f.images[idx(i)];
      }
    if (!inside) continue;
    // pi(j) = rank of f(o_S(j)) inside f(S).
    std::vector<int> pi;
    for (int e : elems) {
      int img = f.images[idx(e)];
      pi.push_back(std::popcount(T & ((1u << img) - 1)));
    }
    Mat block = r->act(Perm(pi)).mat();
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j) m(src.offset[S] + i, dst.offset[T] + j) = block(i, j);
  }
  return m;
}

}  // namespace

FISharpModule dold_kan_reconstruct(const SymRepList& reps, int N) {
  if (reps.empty()) throw InputError("empty representation list");
  if (N < 0 || N > 20) throw InputError("reconstruction window must be between 0 and 20");
  const Coeff c = reps.front().module.coeff();
  for (std::size_t k = 0; k < reps.size(); ++k) {
    if (reps[k].k != static_cast<int>(k)) throw InputError("representation " + std::to_string(k) + " has the wrong degree");
    if (!(reps[k].module.coeff() == c)) throw InputError("representations over different coefficients");
  }
  std::vector<DKLevel> L;
  for (int n = 0; n <= N; ++n) L.push_back(dk_level(reps, c, n));
  std::vector<PresentedModule> levels;
  for (const auto& l : L) levels.push_back(l.module);
  std::vector<ModuleMap> incl, proj;
  std::vector<std::vector<ModuleMap>> sym(idx(N + 1));
  for (int n = 0; n <= N; ++n) {
    for (int i = 0; i + 1 < n; ++i) {
      PartialInjection s{n, {}};
      for (int j = 0; j < n; ++j) s.images.push_back(j == i ? i + 1 : j == i + 1 ? i : j);
      sym[idx(n)].emplace_back(levels[idx(n)], levels[idx(n)], dk_matrix(reps, L[idx(n)], L[idx(n)], s));
    }
    if (n < N) {
      PartialInjection up{n + 1, {}}, down{n, {}};
      for (int j = 0; j < n; ++j) up.images.push_back(j);
      for (int j = 0; j <= n; ++j) down.images.push_back(j < n ? j : -1);
      incl.emplace_back(levels[idx(n)], levels[idx(n + 1)], dk_matrix(reps, L[idx(n)], L[idx(n + 1)], up));
      proj.emplace_back(levels[idx(n + 1)], levels[idx(n)], dk_matrix(reps, L[idx(n + 1)], L[idx(n)], down));
    }
  }
  return FISharpModule(TruncFIModule(c, N, std::move(levels), std::move(incl), std::move(sym)), std::move(proj));
}

std::vector<ModuleMap> dold_kan_witness(const FISharpModule& F, const FISharpModule& rebuilt) {
  const int N = std::min(F.N(), rebuilt.N());
  std::vector<CrossEffect> ce;
  for (int k = 0; k <= N; ++k) ce.push_back(cross_effect(F, k));
  std::vector<ModuleMap> at;
  for (int n = 0; n <= N; ++n) {
    Mat rows(0, F.level(n).gens());
    for (std::uint32_t S = 0; S < (1u << n); ++S) {
      const int k = std::popcount(S);
      Injection o{n, {}};
      for (int i = 0; i < n; ++i)
        if (S & (1u << i)) o.images.push_back(i);
      rows = vstack(rows, mul(F.coeff(), ce[idx(k)].incl.mat(), F.base().injection(o).mat()));
    }
    at.emplace_back(rebuilt.level(n), F.level(n), rows.rows() ? rows : Mat(rebuilt.level(n).gens(), F.level(n).gens()));
  }
  return at;
}

// ---------------------------------------------------------------- alpha

namespace {

struct Stages {
  const TruncFIModule& F;
  std::map<std::pair<int, int>, PresentedModule> cache;

  // Sigma_m-coinvariants of F(n + m), Sigma_m on the last m points.
  const PresentedModule& at(int n, int m) {
    auto key = std::make_pair(n, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<ModuleMap> action;
    for (int i = 0; i + 1 < m; ++i) action.push_back(F.sym(n + m, n + i));
    return cache.emplace(key, coinvariants(F.level(n + m), action).module).first->second;
  }
  ModuleMap transition(int n, int m) { return ModuleMap(at(n, m), at(n, m + 1), F.incl(n + m).mat()); }
  // Stage a -> stage b of level n, inverting transitions when going down.
  ModuleMap transport(int n, int a, int b) {
    ModuleMap r = ModuleMap::identity(at(n, a));
    for (int m = a; m < b; ++m) r = compose(transition(n, m), r);
    for (int m = a; m > b; --m) {
      ModuleMap t = transition(n, m - 1);
      if (!t.is_iso()) throw WindowError("alpha: stage transition is not invertible at level " + std::to_string(n));
      r = compose(inverse(t), r);
    }
    return r;
  }
};

}  // namespace

AlphaResult alpha(const TruncFIModule& F, int margin) {
  if (margin < 1) throw InputError("stability margin must be at least 1");
  const int N = F.N();
  int floor = 0;
  auto gd = generation_degree(F);
  if (gd.kind == DegreeReport::Kind::Value) floor = gd.value;
  Stages st{F, {}};
  std::vector<int> stage;
  for (int n = 0; n <= N; ++n) {
    int found = -1;
    for (int m = floor; n + m + margin <= N && found < 0; ++m) {
      bool ok = true;
      for (int j = 0; j < margin && ok; ++j) ok = st.transition(n, m + j).is_iso();
      if (ok) found = m;
    }
    if (found < 0) break;
    stage.push_back(found);
  }
  if (stage.empty()) throw WindowError("alpha: no level stabilises within the window (margin " + std::to_string(margin) + ")");

  // Assemble as many consecutive levels as the transports allow.
  int top = static_cast<int>(stage.size()) - 1;
  std::vector<ModuleMap> incl, proj;
  for (int n = 0; n < top; ++n) {
    const int s = stage[idx(n)], t = stage[idx(n + 1)];
    try {
      Injection skip{n + 1 + s, {}};
      for (int i = 0; i < n + s; ++i) skip.images.push_back(i < n ? i : i + 1);
      if (n + 1 + s > N) throw WindowError("alpha: inclusion leaves the window");
      ModuleMap up(st.at(n, s), st.at(n + 1, s), F.injection(skip).mat());
      ModuleMap in = compose(st.transport(n + 1, s, t), up);
      ModuleMap down(st.at(n + 1, t), st.at(n, t + 1), Mat::identity(F.level(n + 1 + t).gens()));
      ModuleMap pr = compose(st.transport(n, t + 1, s), down);
      incl.push_back(in);
      proj.push_back(pr);
    } catch (const WindowError&) {
      top = n;
      break;
    }
  }
  incl.resize(idx(top));
  proj.resize(idx(top));
  std::vector<PresentedModule> levels;
  std::vector<std::vector<ModuleMap>> sym(idx(top + 1));
  for (int n = 0; n <= top; ++n) {
    const int s = stage[idx(n)];
    levels.push_back(st.at(n, s));
    for (int i = 0; i + 1 < n; ++i) sym[idx(n)].emplace_back(levels.back(), levels.back(), F.sym(n + s, i).mat());
  }
  FISharpModule raw(TruncFIModule(F.coeff(), top, std::move(levels), std::move(incl), std::move(sym)), std::move(proj));
  auto s = simplify(raw);
  stage.resize(idx(top + 1));
  return AlphaResult{std::move(s.module), std::move(stage), std::move(s.to), margin, N};
}

TruncFIModule eta_restrict(const FISharpModule& F) { return F.base(); }

FIMorphism unit_alpha(const TruncFIModule& F, const AlphaResult& a) {
  const int N = a.module.N();
  FIMorphism u{F.truncate(N), a.module.base(), {}};
  for (int n = 0; n <= N; ++n) {
    const int s = a.stage[idx(n)];
    const ModuleMap& to = a.to[idx(n)];
    ModuleMap into(F.level(n), to.src(), F.incl_chain(n, n + s).mat());
    u.at.push_back(compose(to, into));
  }
  return u;
}

}  // namespace fcalc
