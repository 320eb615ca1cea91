#pragma once

// Truncated functors on finite sets and partially defined injections. Beyond
// the FI data we keep proj[n] : level n+1 -> level n, the partial injection
// forgetting the last point; every other partial injection is a composite of
// proj, incl and permutations.

#include <cstdint>
#include <optional>
#include <vector>

#include "fcalc/fimod.hpp"

namespace fcalc {

class FISharpModule {
 public:
  FISharpModule() = default;
  FISharpModule(TruncFIModule base, std::vector<ModuleMap> proj);

  const TruncFIModule& base() const { return base_; }
  const Coeff& coeff() const { return base_.coeff(); }
  int N() const { return base_.N(); }
  const PresentedModule& level(int n) const { return base_.level(n); }
  const ModuleMap& proj(int n) const { return proj_.at(static_cast<std::size_t>(n)); }
  const std::vector<ModuleMap>& projs() const { return proj_; }

  /// F(f) for a partial injection f : n -> m.
  ModuleMap partial(const PartialInjection& f) const;
  FISharpModule truncate(int M) const;

  friend bool operator==(const FISharpModule&, const FISharpModule&) = default;

 private:
  TruncFIModule base_;
  std::vector<ModuleMap> proj_;
};

/// Structural relations plus brute-force functoriality on all partial
/// injections between levels <= brute_bound.
std::optional<Violation> find_violation(const FISharpModule& F, int brute_bound = 2);
void verify(const FISharpModule& F, int brute_bound = 2);

struct FISharpSimplified {
  FISharpModule module;
  std::vector<ModuleMap> to, from;
};
FISharpSimplified simplify(const FISharpModule& F);
FISharpModule direct_sum(const FISharpModule& F, const FISharpModule& G);

/// Maps F(n) -> G(n) commuting with sym, incl and proj.
bool is_natural(const FISharpModule& src, const FISharpModule& dst, const std::vector<ModuleMap>& at);

// ---------------------------------------------------------------- idempotents

/// Subsets of {0..n-1} are bitmasks.
ModuleMap epsilon_idem(const FISharpModule& F, int n, std::uint32_t subset);
ModuleMap moebius_idem(const FISharpModule& F, int n, std::uint32_t subset);

/// A representation of Sigma_k by adjacent transpositions.
struct SymRep {
  int k = 0;
  PresentedModule module;
  std::vector<ModuleMap> sym;

  ModuleMap act(const Perm& p) const;
  /// Traces on cycle-type representatives, partitions in the order of partitions(k).
  std::vector<Scalar> character() const;
  std::optional<std::string> violation() const;
};
/// Profiles agree, and over fields the characters agree too.
bool same_rep(const SymRep& a, const SymRep& b);
SymRep trivial_rep(Coeff c, int k);
SymRep sign_rep(Coeff c, int k);
SymRep permutation_rep(Coeff c, int k);
SymRep zero_rep(Coeff c, int k);
SymRep direct_sum(const SymRep& a, const SymRep& b);
/// Conjugate the action by an invertible change of basis (free modules).
SymRep change_basis(const SymRep& r, const Mat& P);

using SymRepList = std::vector<SymRep>;

struct CrossEffect {
  SymRep rep;
  ModuleMap incl;  // rep -> F(k), an isomorphism onto Im e_{[k]}
};
/// Image of e_{0..k-1} at level k with the restricted action.
CrossEffect cross_effect(const FISharpModule& F, int k);
/// F(k) modulo the images of the k coface injections k-1 -> k.
SymRep cross_effect_cokernel(const TruncFIModule& F, int k);

SymRepList dold_kan_decompose(const FISharpModule& F);
/// Level n is the sum over subsets S of {0..n-1} of reps[|S|].
FISharpModule dold_kan_reconstruct(const SymRepList& reps, int N);
/// The natural isomorphism reconstruct(decompose(F)) -> F, levelwise.
std::vector<ModuleMap> dold_kan_witness(const FISharpModule& F, const FISharpModule& rebuilt);

// ---------------------------------------------------------------- Kan extension

struct AlphaResult {
  FISharpModule module;      // certified levels only
  std::vector<int> stage;    // stabilisation stage per certified level
  std::vector<ModuleMap> to; // stage coinvariants -> module level
  int margin = 0;
  int requested_N = 0;
};
/// Level n is the stabilised chain of Sigma_m-coinvariants of F(n + m), the
/// Sigma_m acting on the last m points. A level is certified once `margin`
/// consecutive transitions are isomorphisms inside the window.
AlphaResult alpha(const TruncFIModule& F, int margin);
TruncFIModule eta_restrict(const FISharpModule& F);
FIMorphism unit_alpha(const TruncFIModule& F, const AlphaResult& a);

}  // namespace fcalc
