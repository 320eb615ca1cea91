// One line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "fcalc/cattilde.hpp"
#include "fcalc/corpus.hpp"

using namespace fcalc;

namespace {

const Coeff Z = Coeff::integers();
const Coeff Q = Coeff::rationals();
const Coeff F2 = Coeff::prime_field(2);

std::size_t idx(int n) { return static_cast<std::size_t>(n); }

long rank_of(const PresentedModule& m) { return static_cast<long>(invariant_factors(m).free_rank); }

long choose(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long fact(long k) { return k <= 1 ? 1 : k * fact(k - 1); }

// Collects failures; the first few are echoed.
struct Check {
  int failures = 0;
  std::ostringstream notes;
  void operator()(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ < 3) notes << (failures > 1 ? "; " : "") << what;
  }
};

bool same_dims(const TruncFIModule& a, const TruncFIModule& b) {
  if (a.N() != b.N()) return false;
  for (int n = 0; n <= a.N(); ++n)
    if (!same_profile(a.level(n), b.level(n))) return false;
  return true;
}

// ---------------------------------------------------------------- criteria

void c1(Check& ok) {
  for (int n = 0; n <= 6; ++n) ok(strong_degree(zgeq_functor(Z, 12, n)).is_value(n), "zgeq(" + std::to_string(n) + ")");
  ok(strong_degree(augmentation_kernel(Z, 10)).is_value(2), "augmentation kernel");
  for (int d = 0; d <= 3; ++d) ok(strong_degree(free_fi(Z, 8, d)).is_value(d), "P(" + std::to_string(d) + ")");
}

void c2(Check& ok) {
  ok(weak_degree(augmentation_kernel(Z, 10), 2).is_value(1), "augmentation kernel");
  ok(weak_degree(atomic_sum(Z, 10, 6), 1).kind == DegreeReport::Kind::MinusInfinity, "sum of atomic functors");
  for (int n = 0; n <= 6; ++n) ok(weak_degree(zgeq_functor(Z, 10, n), 1).is_value(0), "zgeq(" + std::to_string(n) + ")");
}

void c3(Check& ok) {
  for (int n = 0; n <= 6; ++n)
    ok(same_dims(diff(zgeq_functor(Z, 10, n)), atomic_functor(Z, 9, n - 1)), "diff zgeq(" + std::to_string(n) + ")");
  ok(same_dims(diff(free_fi(Z, 10, 1)), constant_functor(Z, 9)), "diff P(1)");

  // shift(K, 1) = P_1 through e_i |-> e_{1+i} - e_0, the added point being 0
  TruncFIModule P1 = free_fi(Z, 10, 1), C = constant_functor(Z, 10);
  FIMorphism aug{P1, C, {}};
  for (int n = 0; n <= 10; ++n) aug.at.emplace_back(P1.level(n), C.level(n), Mat::from_ints(std::vector<std::vector<long>>(idx(n), {1}), 1));
  FIKernel K = kernel(aug);
  TruncFIModule S = shift(K.module, 1);
  TruncFIModule P = free_fi(Z, 9, 1);
  FIMorphism w{P, S, {}};
  for (int n = 0; n <= 9; ++n) {
    Mat m(idx(n), idx(n + 1));
    for (int i = 0; i < n; ++i) m(idx(i), idx(i + 1)) = 1, m(idx(i), 0) = -1;
    auto lifted = lift_through(ModuleMap(P.level(n), P1.level(n + 1), m), K.incl.at[idx(n + 1)]);
    ok(lifted.has_value(), "witness does not land in the kernel");
    if (!lifted) return;
    w.at.push_back(ModuleMap(P.level(n), S.level(n), lifted->mat()));
  }
  ok(w.is_natural(), "witness not natural");
  ok(w.is_iso(), "witness not an isomorphism");
}

void c4(Check& ok) {
  ok(verify_six_term(zgeq_functor(Z, 10, 2)), "zgeq(2) over Z");
  ok(verify_six_term(augmentation_kernel(Z, 10)), "augmentation kernel over Z");
  ok(verify_six_term(zgeq_functor(F2, 8, 2)), "zgeq(2) over F2");
  ok(verify_six_term(augmentation_kernel(F2, 8)), "augmentation kernel over F2");
  ok(verify_six_term(free_fi(F2, 8, 2)), "P(2) over F2");
}

void c5(Check& ok) {
  std::vector<std::string> names;
  for (const auto& e : corpus_list())
    if (e.sharp) names.push_back(e.name);
  for (const auto& c : {Z, F2, Q})
    for (const std::string name : {"const_sharp", "free_sharp(0)", "free_sharp(1)", "free_sharp(2)", "free_sharp(3)",
                                   "free_sharp(1)+const_sharp"}) {
      FISharpModule F = *build(name, c, 4).sharp;
      std::vector<long> cr;
      for (int k = 0; k <= 4; ++k) cr.push_back(rank_of(cross_effect(F, k).rep.module));
      for (int n = 0; n <= 4; ++n) {
        const std::string at = name + " over " + c.name() + " at " + std::to_string(n);
        ModuleMap total = ModuleMap::zero(F.level(n), F.level(n));
        std::vector<ModuleMap> e;
        for (std::uint32_t I : all_subsets(n)) e.push_back(moebius_idem(F, n, I));
        for (std::size_t i = 0; i < e.size(); ++i) {
          total = total + e[i];
          for (std::size_t j = 0; j < e.size(); ++j) {
            ModuleMap p = compose(e[i], e[j]);
            ok(i == j ? p.equals(e[i]) : p.is_zero(), "e_I e_J wrong for " + at);
          }
        }
        ok(total.equals(ModuleMap::identity(F.level(n))), "idempotents do not sum to 1 for " + at);
        long s = 0;
        for (int k = 0; k <= n; ++k) s += choose(n, k) * cr[idx(k)];
        ok(rank_of(F.level(n)) == s, "dimension identity fails for " + at);
      }
    }
  ok(!names.empty(), "no partial-injection entries in the corpus");
}

// Dense random bases make rational entries explode, so changes of basis are
// products of sparse unitriangular matrices (and a permutation).
Mat random_invertible(const Coeff& c, std::size_t n, std::mt19937& rng) {
  auto unitriangular = [&](bool upper) {
    Mat m = Mat::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if ((upper ? j > i : j < i) && rng() % (n + 1) < 2) m(i, j) = rng() % 2 ? 1 : -1;
    return m;
  };
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  Mat p = Mat::identity(n).select_rows(perm);
  return reduce(c, mul(c, mul(c, unitriangular(false), p), unitriangular(true)));
}

FISharpModule scramble(const FISharpModule& F, std::mt19937& rng) {
  const Coeff& c = F.coeff();
  std::vector<ModuleMap> to, from;  // new -> old, old -> new
  for (int n = 0; n <= F.N(); ++n) {
    ModuleMap p(F.level(n), F.level(n), random_invertible(c, F.level(n).gens(), rng));
    to.push_back(p);
    from.push_back(inverse(p));
  }
  auto conj = [&](const ModuleMap& m, int a, int b) { return compose(from[idx(b)], compose(m, to[idx(a)])); };
  std::vector<ModuleMap> incl, proj;
  std::vector<std::vector<ModuleMap>> sym(idx(F.N() + 1));
  for (int n = 0; n <= F.N(); ++n) {
    for (int i = 0; i + 1 < n; ++i) sym[idx(n)].push_back(conj(F.base().sym(n, i), n, n));
    if (n < F.N()) {
      incl.push_back(conj(F.base().incl(n), n, n + 1));
      proj.push_back(conj(F.proj(n), n + 1, n));
    }
  }
  return FISharpModule(TruncFIModule(c, F.N(), F.base().levels(), incl, sym), proj);
}

SymRep random_rep(const Coeff& c, int k, std::mt19937& rng) {
  SymRep r = zero_rep(c, k);
  int budget = static_cast<int>(rng() % 5);
  while (budget > 0) {
    int pick = static_cast<int>(rng() % 3);
    SymRep piece = pick == 0 ? trivial_rep(c, k) : pick == 1 ? sign_rep(c, k) : permutation_rep(c, k);
    int d = static_cast<int>(piece.module.gens());
    if (d > budget) break;
    r = direct_sum(r, piece);
    budget -= d;
  }
  return change_basis(r, random_invertible(c, r.module.gens(), rng));
}

void c6(Check& ok) {
  std::mt19937 rng(20240601);
  for (const auto& c : {F2, Q})
    for (int trial = 0; trial < 50; ++trial) {
      const int N = 1 + static_cast<int>(rng() % 5);
      SymRepList reps;
      for (int k = 0; k <= N; ++k) reps.push_back(random_rep(c, k, rng));
      const std::string at = c.name() + " trial " + std::to_string(trial);
      FISharpModule F = dold_kan_reconstruct(reps, N);
      ok(!find_violation(F), "reconstruction not a functor, " + at);
      auto back = dold_kan_decompose(F);
      ok(back.size() == reps.size(), "wrong number of cross effects, " + at);
      for (std::size_t k = 0; k < std::min(back.size(), reps.size()); ++k) ok(same_rep(back[k], reps[k]), "cross effect differs, " + at);

      FISharpModule G = scramble(F, rng);
      ok(!find_violation(G), "scrambled module not a functor, " + at);
      FISharpModule R = dold_kan_reconstruct(dold_kan_decompose(G), N);
      auto w = dold_kan_witness(G, R);
      ok(is_natural(R, G, w), "witness not natural, " + at);
      for (int n = 0; n <= N; ++n) {
        ok(w[idx(n)].is_iso(), "witness not invertible, " + at);
        ok(same_profile(R.level(n), G.level(n)), "profiles differ, " + at);
      }
    }
}

void c7(Check& ok) {
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) {
      long want = 0;
      for (int k = 0; k <= std::min(a, b); ++k) want += choose(a, k) * choose(b, k) * fact(k);
      ok(static_cast<long>(tilde_hom(TildeCat::Theta, a, b).classes.size()) == want, "theta count");
    }
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c)
        for (const auto& f : tilde_hom(TildeCat::Theta, a, b).classes)
          for (const auto& g : tilde_hom(TildeCat::Theta, b, c).classes) {
            std::vector<int> want;
            for (int x : f.normal.images) want.push_back(x < 0 ? -1 : g.normal.images[idx(x)]);
            ok(tilde_compose(g, f).normal.images == want, "composition table");
          }
  for (int n = 0; n <= 5; ++n)
    for (int m = 0; m <= 5; ++m)
      ok(static_cast<long>(tilde_hom(TildeCat::Sigma, n, m).classes.size()) == (n >= m ? fact(n) / fact(n - m) : 0), "sigma count");
  for (int a = 0; a <= 5; ++a) {
    ok(tilde_hom(TildeCat::Theta, a, 0).classes.size() == 1, "theta(a,0)");
    ok(tilde_hom(TildeCat::Sigma, a, 0).classes.size() == 1, "sigma(a,0)");
  }
}

void c8(Check& ok) {
  auto dims = [&](const TruncFIModule& F, const std::function<long(long)>& want, const std::string& what) {
    AlphaResult a = alpha(F, 2);
    ok(a.module.N() >= 4, what + ": certified window too short");
    for (int n = 0; n <= a.module.N(); ++n) ok(rank_of(a.module.level(n)) == want(n), what + " at " + std::to_string(n));
  };
  dims(two_subsets(F2, 8), [](long n) { return n * (n - 1) / 2 + n + 1; }, "alpha(A)");
  dims(free_fi(F2, 8, 2), [](long n) { return n * (n - 1) + 2 * n + 1; }, "alpha(P_2)");
  Pushout p = upm_pushout(F2, 8);
  AlphaResult a = alpha(p.module, 2);
  FIMorphism u = unit_alpha(p.module, a);
  ok(u.N() >= 4, "alpha(F) window too short");
  for (int n = 0; n <= u.N(); ++n) {
    const ModuleMap& c = p.const_incl.at[idx(n)];
    ok(c.is_injective() && !c.is_zero(), "constant not a nonzero subfunctor at " + std::to_string(n));
    ok(compose(u.at[idx(n)], c).is_zero(), "constant survives at " + std::to_string(n));
    ok(!kernel(u.at[idx(n)]).module.gens() || rank_of(kernel(u.at[idx(n)]).module) > 0, "zero kernel at " + std::to_string(n));
  }
}

void c9(Check& ok) {
  for (const auto& c : {F2, Q})
    for (const auto& name : corpus_instances()) {
      const TruncFIModule F = build(name, c, default_window(c)).as_fi();
      const std::string at = name + " over " + c.name();
      DegreeReport s = strong_degree(F);
      // 1 + the last level where some kappa(diff^k F), k <= d, is nonzero
      int n0 = 0;
      TruncFIModule G = F;
      const int d = s.is_value(s.value) ? s.value : 0;
      for (int k = 0; k <= d && G.N() >= 1; ++k) {
        TruncFIModule K = kappa(G);
        for (int n = 0; n <= K.N(); ++n)
          if (!is_zero_module(K.level(n))) n0 = std::max(n0, n + 1);
        G = diff(G);
      }
      TruncFIModule D = diff(F), K = kappa(F);
      int kappa_top = 0;
      for (int n = 0; n <= K.N(); ++n)
        if (!is_zero_module(K.level(n))) kappa_top = n + 1;
      for (int n = kappa_top; n < F.N(); ++n)
        ok(rank_of(F.level(n + 1)) == rank_of(F.level(n)) + rank_of(D.level(n)), "recursion fails for " + at);
      if (s.kind != DegreeReport::Kind::Value) continue;
      auto p = dim_profile(F);
      const std::size_t row = idx(s.value + 1);
      ok(row < p.diffs.size(), "no difference row for " + at);
      if (row >= p.diffs.size()) continue;
      for (std::size_t n = idx(n0); n < p.diffs[row].size(); ++n) ok(p.diffs[row][n] == 0, "row d+1 nonzero for " + at);
    }
}

void c10(Check& ok) {
  ok(strong_degree(postcompose(free_fi(Q, 8, 1), Schur::Exterior, 2)).is_value(2), "exterior square");
  ok(strong_degree(postcompose(free_fi(Q, 8, 1), Schur::Tensor, 2)).is_value(2), "tensor square");
}

// Rank over Q and gcd of entries, computed directly.
long rational_rank(Mat m) {
  long r = 0;
  for (std::size_t col = 0; col < m.cols() && idx(static_cast<int>(r)) < m.rows(); ++col) {
    std::size_t piv = idx(static_cast<int>(r));
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(idx(static_cast<int>(r)), j));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == idx(static_cast<int>(r)) || m(i, col) == 0) continue;
      Scalar f = m(i, col) / m(idx(static_cast<int>(r)), col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(idx(static_cast<int>(r)), j);
    }
    ++r;
  }
  return r;
}

void c11(Check& ok) {
  std::mt19937 rng(500);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 8;
    Mat m(rows, cols);
    mpz_class g = 0;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        m(i, j) = static_cast<long>(rng() % 19) - 9;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m(i, j).get_num().get_mpz_t());
      }
    SmithForm s = snf(m);
    const std::string at = "matrix " + std::to_string(trial);
    ok(mul(Z, mul(Z, s.U, m), s.V) == s.D, "U m V != D, " + at);
    ok(abs(determinant(Z, s.U)) == 1 && abs(determinant(Z, s.V)) == 1, "not unimodular, " + at);
    long nonzero = 0;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        if (i != j) ok(s.D(i, j) == 0, "off-diagonal entry, " + at);
        else if (s.D(i, j) != 0) ++nonzero, ok(s.D(i, j) > 0, "negative diagonal, " + at);
      }
    for (std::size_t i = 0; i + 1 < std::min(rows, cols); ++i)
      if (s.D(i + 1, i + 1) != 0)
        ok(s.D(i, i) != 0 && mpz_divisible_p(s.D(i + 1, i + 1).get_num().get_mpz_t(), s.D(i, i).get_num().get_mpz_t()),
           "divisibility chain, " + at);
    ok(nonzero == rational_rank(m), "rank, " + at);
    if (g != 0) ok(s.D(0, 0) == Scalar(g), "first invariant factor is not the gcd, " + at);
    if (rows == cols) ok(abs(determinant(Z, m)) == abs(determinant(Z, s.D)), "determinant, " + at);
  }
  for (const auto& c : {Z, Q, F2})
    for (const auto& name : corpus_instances()) {
      CorpusObject obj = build(name, c, default_window(c));
      auto v = obj.sharp ? find_violation(*obj.sharp) : find_violation(*obj.fi);
      ok(!v, name + " over " + c.name() + ": " + (v ? v->message() : ""));
      DegreeReport s = strong_degree(obj.as_fi()), g = generation_degree(obj.as_fi());
      if (s.certified() && g.certified())
        ok(s.kind == g.kind && (s.kind != DegreeReport::Kind::Value || s.value == g.value),
           "generation degree " + g.value_string() + " vs strong degree " + s.value_string() + " for " + name);
    }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* what;
    void (*run)(Check&);
    double limit;  // seconds, 0 for none
  };
  const Criterion all[] = {
      {1, "strong degrees", c1, 10},
      {2, "weak degrees", c2, 0},
      {3, "difference and shift identities", c3, 0},
      {4, "six-term exact sequence", c4, 0},
      {5, "idempotent calculus", c5, 0},
      {6, "Dold-Kan round trips", c6, 30},
      {7, "nullified category counts and composition", c7, 0},
      {8, "Kan extension dimensions and unit kernel", c8, 0},
      {9, "difference recursion and polynomial dimensions", c9, 0},
      {10, "degree of composites", c10, 0},
      {11, "Smith form, structure and generation degree suites", c11, 60},
  };
  int failed = 0;
  for (const auto& c : all) {
    Check check;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(check);
    } catch (const std::exception& e) {
      check(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0 && secs > c.limit) check(false, "took longer than " + std::to_string(static_cast<int>(c.limit)) + " s");
    const bool pass = check.failures == 0;
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.what;
    std::cout.precision(2);
    std::cout << " (" << std::fixed << secs << " s)";
    if (!pass) std::cout << " -- " << check.failures << " failure(s): " << check.notes.str();
    std::cout << std::endl;
  }
  return failed ? 1 : 0;
}
