#include <doctest.h>

#include <random>

#include "fcalc/corpus.hpp"
#include "fcalc/error.hpp"

using namespace fcalc;

namespace {

const Coeff Z = Coeff::integers();
const Coeff Q = Coeff::rationals();
const Coeff F2 = Coeff::prime_field(2);
const Coeff F3 = Coeff::prime_field(3);

long rank_at(const PresentedModule& m) { return static_cast<long>(invariant_factors(m).free_rank); }

long choose(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long fact(long k) { return k <= 1 ? 1 : k * fact(k - 1); }

// Partial injections d -> n counted by the size of their domain.
long partial_count(long d, long n) {
  long s = 0;
  for (long k = 0; k <= std::min(d, n); ++k) s += choose(d, k) * choose(n, k) * fact(k);
  return s;
}

long fixed_points(const std::vector<int>& cycle_type) {
  long f = 0;
  for (int p : cycle_type) f += p == 1;
  return f;
}

}  // namespace

TEST_CASE("free partial-injection functors") {
  for (int d = 0; d <= 2; ++d) {
    auto F = free_sharp(Q, 4, d);
    CHECK_FALSE(find_violation(F, 3));
    for (int n = 0; n <= 4; ++n) CHECK(rank_at(F.level(n)) == partial_count(d, n));
  }
  // functoriality on all composable partial injections among levels <= 3
  auto F = free_sharp(Z, 3, 2);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c)
        for (const auto& f : all_partial_injections(a, b))
          for (const auto& g : all_partial_injections(b, c))
            CHECK(F.partial(g.after(f)).equals(compose(F.partial(g), F.partial(f))));
}

TEST_CASE("verify rejects a bad projection") {
  auto C = constant_sharp(Q, 3);
  CHECK_FALSE(find_violation(C));
  auto proj = C.projs();
  proj[1] = ModuleMap::zero(C.level(2), C.level(1));
  FISharpModule bad(C.base(), proj);
  CHECK(find_violation(bad));
  CHECK_THROWS_AS(verify(bad), InputError);
}

TEST_CASE("idempotents are complete and orthogonal") {
  for (const auto& F : {free_sharp(Z, 4, 1), free_sharp(F2, 4, 2), constant_sharp(Q, 4)}) {
    for (int n = 0; n <= 4; ++n) {
      ModuleMap total = ModuleMap::zero(F.level(n), F.level(n));
      for (std::uint32_t I : all_subsets(n)) {
        ModuleMap e = moebius_idem(F, n, I);
        total = total + e;
        for (std::uint32_t J : all_subsets(n)) {
          ModuleMap p = compose(e, moebius_idem(F, n, J));
          CHECK((I == J ? p.equals(e) : p.is_zero()));
        }
      }
      CHECK(total.equals(ModuleMap::identity(F.level(n))));
    }
  }
  // epsilon of the full set is the identity, of the empty set the map through level 0
  auto F = free_sharp(Q, 3, 1);
  CHECK(epsilon_idem(F, 3, 0b111).equals(ModuleMap::identity(F.level(3))));
  CHECK(rank_at(image(epsilon_idem(F, 3, 0)).module) == 1);
}

TEST_CASE("cross effects of free functors") {
  for (int d = 0; d <= 3; ++d) {
    auto F = free_sharp(Q, 4, d);
    for (int k = 0; k <= 4; ++k) {
      auto ce = cross_effect(F, k);
      CHECK_FALSE(ce.rep.violation());
      CHECK(rank_at(ce.rep.module) == choose(d, k) * fact(k));
      CHECK(ce.incl.is_injective());
      // the cokernel description of the cross effect gives the same representation
      CHECK(same_rep(ce.rep, cross_effect_cokernel(F.base(), k)));
    }
  }
  // cr_k of the free functor on a k-set is the regular representation
  auto ce = cross_effect(free_sharp(Q, 3, 3), 3).rep.character();
  auto parts = partitions(3);
  REQUIRE(ce.size() == parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) CHECK(ce[i] == (parts[i].size() == 3 ? 6 : 0));
}

TEST_CASE("dimension identity through cross effects") {
  for (const auto& F : {free_sharp(F2, 4, 2), free_sharp(Z, 4, 1), constant_sharp(Q, 4)}) {
    auto reps = dold_kan_decompose(F);
    for (int n = 0; n <= 4; ++n) {
      long s = 0;
      for (int k = 0; k <= n; ++k) s += choose(n, k) * rank_at(reps[static_cast<std::size_t>(k)].module);
      CHECK(rank_at(F.level(n)) == s);
    }
  }
}

TEST_CASE("representations of symmetric groups") {
  for (const auto& c : {Q, F3}) {
    for (int k = 1; k <= 4; ++k) {
      auto P = permutation_rep(c, k);
      CHECK_FALSE(P.violation());
      auto ch = P.character();
      auto parts = partitions(k);
      for (std::size_t i = 0; i < parts.size(); ++i) CHECK(ch[i] == c.reduce(Scalar(fixed_points(parts[i]))));
      auto sgn = sign_rep(c, k).character();
      for (std::size_t i = 0; i < parts.size(); ++i) {
        long odd = 0;
        for (int p : parts[i]) odd += (p % 2 == 0);
        CHECK(sgn[i] == c.reduce(Scalar(odd % 2 ? -1 : 1)));
      }
    }
  }
  auto P = permutation_rep(Q, 3);
  Mat B = Mat::from_ints({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
  CHECK(same_rep(P, change_basis(P, B)));
  CHECK_FALSE(same_rep(P, direct_sum(trivial_rep(Q, 3), direct_sum(trivial_rep(Q, 3), trivial_rep(Q, 3)))));
  CHECK_FALSE(same_rep(trivial_rep(Q, 2), sign_rep(Q, 2)));
  // over F_2 sign and trivial coincide
  CHECK(same_rep(trivial_rep(F2, 3), sign_rep(F2, 3)));
}

TEST_CASE("Dold-Kan round trips") {
  std::mt19937 rng(7);
  for (const auto& c : {F2, Q}) {
    for (int trial = 0; trial < 6; ++trial) {
      SymRepList reps;
      for (int k = 0; k <= 3; ++k) {
        SymRep r = zero_rep(c, k);
        int pieces = static_cast<int>(rng() % 3);
        for (int i = 0; i < pieces; ++i) r = direct_sum(r, rng() % 2 ? trivial_rep(c, k) : sign_rep(c, k));
        reps.push_back(r);
      }
      auto F = dold_kan_reconstruct(reps, 4);
      CHECK_FALSE(find_violation(F));
      auto back = dold_kan_decompose(F);
      REQUIRE(back.size() == reps.size() + 1);
      for (std::size_t k = 0; k < reps.size(); ++k) CHECK(same_rep(back[k], reps[k]));
      auto w = dold_kan_witness(F, dold_kan_reconstruct(back, 4));
      CHECK(is_natural(dold_kan_reconstruct(back, 4), F, w));
      for (const auto& m : w) CHECK(m.is_iso());
    }
  }
  auto F = free_sharp(Z, 3, 2);
  auto rebuilt = dold_kan_reconstruct(dold_kan_decompose(F), 3);
  auto w = dold_kan_witness(F, rebuilt);
  CHECK(is_natural(rebuilt, F, w));
  for (const auto& m : w) CHECK(m.is_iso());
}

TEST_CASE("left Kan extension along the inclusion") {
  // alpha(P_2) over F_2: partial injections 2 -> n
  auto a = alpha(free_fi(F2, 8, 2), 2);
  CHECK(a.module.N() >= 4);
  CHECK_FALSE(find_violation(a.module));
  for (int n = 0; n <= a.module.N(); ++n) CHECK(rank_at(a.module.level(n)) == partial_count(2, n));
  auto u = unit_alpha(free_fi(F2, 8, 2), a);
  CHECK(u.is_natural());
  CHECK(u.is_injective());
  // the constant functor extends to the constant functor
  auto c = alpha(constant_functor(Q, 7), 2);
  for (int n = 0; n <= c.module.N(); ++n) CHECK(rank_at(c.module.level(n)) == 1);
  CHECK(eta_restrict(c.module) == c.module.base());
  // alpha of an atomic functor vanishes
  auto z = alpha(atomic_functor(Q, 6, 2), 1);
  CHECK(z.module.base().is_zero());
}
