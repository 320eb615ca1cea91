#include <doctest.h>

#include "fcalc/corpus.hpp"
#include "fcalc/error.hpp"

using namespace fcalc;

namespace {

const Coeff Z = Coeff::integers();
const Coeff Q = Coeff::rationals();
const Coeff F2 = Coeff::prime_field(2);

long rank_at(const TruncFIModule& F, int n) {
  auto p = invariant_factors(F.level(n));
  return static_cast<long>(p.free_rank);
}

long falling(long n, long d) {
  long r = 1;
  for (long i = 0; i < d; ++i) r *= n - i;
  return n < d ? 0 : r;
}

long choose(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("free functor ranks and functoriality") {
  for (int d = 0; d <= 3; ++d) {
    auto P = free_fi(Z, 5, d);
    CHECK_FALSE(find_violation(P));
    for (int n = 0; n <= 5; ++n) CHECK(rank_at(P, n) == falling(n, d));
  }
  // F(g o f) = F(g) F(f) for every pair of composable injections among small levels
  auto P = free_fi(Q, 4, 2);
  for (int a = 0; a <= 2; ++a)
    for (int b = a; b <= 3; ++b)
      for (int c = b; c <= 4; ++c)
        for (const auto& f : all_injections(a, b))
          for (const auto& g : all_injections(b, c))
            CHECK(P.injection(g.after(f)).equals(compose(P.injection(g), P.injection(f))));
}

TEST_CASE("verify rejects broken relations") {
  auto C = constant_functor(Q, 3);
  CHECK_FALSE(find_violation(C));
  auto syms = C.syms();
  syms[3][1] = ModuleMap(C.level(3), C.level(3), Mat::from_ints({{2}}));
  TruncFIModule bad(Q, 3, C.levels(), C.incls(), syms);
  auto v = find_violation(bad);
  REQUIRE(v);
  CHECK(v->level == 3);
  CHECK_THROWS_AS(verify(bad), InputError);

  // sign action at level 2 but trivial at level 3: inclusion not equivariant
  syms = C.syms();
  syms[2][0] = ModuleMap(C.level(2), C.level(2), Mat::from_ints({{-1}}));
  TruncFIModule bad2(Q, 3, C.levels(), C.incls(), syms);
  CHECK(find_violation(bad2));

  // shape errors are caught at construction
  CHECK_THROWS_AS(TruncFIModule(Q, 3, C.levels(), {}, C.syms()), InputError);
}

TEST_CASE("shift and difference of free functors") {
  // injections d -> n+1 either miss the new point or hit it: diff P_d = d P_{d-1}
  for (int d = 1; d <= 3; ++d) {
    auto P = free_fi(Z, 6, d);
    auto u = unit_map(P, 1);
    CHECK(u.is_natural());
    CHECK(u.is_injective());
    auto T = shift(P, 1);
    CHECK_FALSE(find_violation(T));
    auto D = diff(P);
    CHECK_FALSE(find_violation(D));
    for (int n = 0; n <= 5; ++n) {
      CHECK(rank_at(T, n) == falling(n + 1, d));
      CHECK(rank_at(D, n) == d * falling(n, d - 1));
      CHECK(invariant_factors(D.level(n)).torsion.empty());
    }
    CHECK(kappa(P).is_zero());
  }
  auto T2 = shift(free_fi(Z, 6, 2), 2);
  for (int n = 0; n <= 4; ++n) CHECK(rank_at(T2, n) == falling(n + 2, 2));
}

TEST_CASE("difference of the Z_{>=n} family") {
  for (int k = 0; k <= 4; ++k) {
    auto F = zgeq_functor(Z, 8, k);
    auto D = diff(F), K = kappa(F);
    for (int n = 0; n <= 7; ++n) {
      CHECK(rank_at(D, n) == (n == k - 1 ? 1 : 0));
      CHECK(K.level(n).gens() == 0);
    }
  }
  // kappa of an atomic functor is itself
  auto A = atomic_functor(Z, 6, 3);
  auto K = kappa(A);
  for (int n = 0; n <= 5; ++n) CHECK(rank_at(K, n) == (n == 3 ? 1 : 0));
}

TEST_CASE("strong degrees") {
  for (int k = 0; k <= 6; ++k) CHECK(strong_degree(zgeq_functor(Z, 12, k)).is_value(k));
  auto r = strong_degree(zgeq_functor(Z, 10, 4));
  CHECK(r.describe("strong degree") == "strong degree = 4, window [0,5]");
  CHECK(strong_degree(augmentation_kernel(Z, 10)).is_value(2));
  for (int d = 0; d <= 2; ++d) CHECK(strong_degree(free_fi(Z, 7, d)).is_value(d));
  CHECK(strong_degree(TruncFIModule::zero(Z, 4)).kind == DegreeReport::Kind::MinusInfinity);
  CHECK(strong_degree(zgeq_sum(Z, 6)).kind == DegreeReport::Kind::NotCertified);
  CHECK(strong_degree(atomic_sum(Q, 8, 3)).is_value(3));
}

TEST_CASE("weak degrees") {
  CHECK(weak_degree(augmentation_kernel(Z, 10), 2).is_value(1));
  CHECK(weak_degree(atomic_sum(Z, 10, 6), 1).kind == DegreeReport::Kind::MinusInfinity);
  for (int k = 0; k <= 5; ++k) CHECK(weak_degree(zgeq_functor(Z, 10, k), 1).is_value(0));
  CHECK(weak_degree(free_fi(Q, 6, 2), 1).is_value(2));
  CHECK(is_stably_null(atomic_sum(Z, 6, 3), 1));
  CHECK_FALSE(is_stably_null(constant_functor(Z, 6), 1));
}

TEST_CASE("generation degree agrees with strong degree") {
  std::vector<TruncFIModule> fs = {constant_functor(Z, 7), zgeq_functor(Z, 7, 3), free_fi(Z, 6, 2),
                                   augmentation_kernel(Z, 7), atomic_sum(Z, 7, 2), upm_pushout(F2, 6).module};
  for (const auto& F : fs) {
    auto s = strong_degree(F), g = generation_degree(F);
    REQUIRE(s.certified());
    REQUIRE(g.certified());
    CHECK(s.value_string() == g.value_string());
  }
}

TEST_CASE("augmentation kernel") {
  auto K = augmentation_kernel(Z, 8);
  CHECK_FALSE(find_violation(K));
  for (int n = 0; n <= 8; ++n) CHECK(rank_at(K, n) == std::max(n - 1, 0));
  auto D = diff(K);
  for (int n = 0; n <= 7; ++n) CHECK(rank_at(D, n) == (n >= 1 ? 1 : 0));
  CHECK(stable_kernel(K, 1).is_zero());
}

TEST_CASE("dimension profile and finite differences") {
  auto p = dim_profile(free_fi(Q, 7, 2));
  // n(n-1): differences 2n, then 2, then 0
  CHECK(p.diffs[0][5] == 20);
  CHECK(p.diffs[1][3] == 6);
  CHECK(p.diffs[2][0] == 2);
  CHECK(p.zero_from[3] == 0);
  CHECK(p.zero_from[2] == -1);
  // dims(F)(n+1) = dims(F)(n) + dims(diff F)(n) when kappa vanishes
  auto F = two_subsets(Q, 7);
  auto D = diff(F);
  for (int n = 0; n < 7; ++n) CHECK(rank_at(F, n + 1) == rank_at(F, n) + rank_at(D, n));
}

TEST_CASE("Schur functors of P_1") {
  auto P1 = free_fi(Q, 6, 1);
  auto L2 = postcompose(P1, Schur::Exterior, 2);
  auto T2 = postcompose(P1, Schur::Tensor, 2);
  auto S2 = postcompose(P1, Schur::Symmetric, 2);
  for (const auto* F : {&L2, &T2, &S2}) CHECK_FALSE(find_violation(*F));
  for (int n = 0; n <= 6; ++n) {
    CHECK(rank_at(L2, n) == choose(n, 2));
    CHECK(rank_at(T2, n) == n * n);
    CHECK(rank_at(S2, n) == choose(n + 1, 2));
  }
  CHECK(strong_degree(postcompose(free_fi(Q, 8, 1), Schur::Exterior, 2)).is_value(2));
  CHECK(strong_degree(tensor(P1, P1)).is_value(2));
  CHECK_THROWS_AS(postcompose(free_fi(Z, 3, 1), Schur::Tensor, 2), InputError);
}

TEST_CASE("six-term sequence") {
  CHECK(verify_six_term(zgeq_functor(Z, 8, 2)));
  CHECK(verify_six_term(augmentation_kernel(Z, 7)));
  CHECK(verify_six_term(free_fi(F2, 6, 2)));
  auto seq = six_term_at(free_fi(Q, 5, 1), 2);
  CHECK(seq.size() == 7);
  CHECK(check_exact(seq));
}

TEST_CASE("kernels and cokernels of natural maps") {
  auto nu = norm_map(Z, 5);
  CHECK(nu.is_natural());
  CHECK(nu.is_injective());
  auto q = cokernel(nu);
  CHECK_FALSE(find_violation(q.module));
  // P_2 / norm: free part of rank n(n-1)/2 and no torsion over Z
  for (int n = 0; n <= 5; ++n) {
    auto p = invariant_factors(q.module.level(n));
    CHECK(static_cast<long>(p.free_rank) == choose(n, 2));
    CHECK(p.torsion.empty());
  }
  auto k = kernel(nu);
  CHECK(k.module.is_zero());
  auto po = upm_pushout(F2, 5);
  CHECK(po.const_incl.is_natural());
  for (int n = 0; n <= 5; ++n) CHECK(rank_at(po.module, n) == choose(n, 2) + 1);
}

TEST_CASE("simplify is an isomorphism") {
  auto S = simplify(augmentation_kernel(Z, 5));
  CHECK(S.to.is_natural());
  CHECK(S.to.is_iso());
  CHECK(compose(S.from, S.to).at[3].equals(ModuleMap::identity(S.to.src.level(3))));
}
