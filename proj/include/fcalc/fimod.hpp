#pragma once

// Truncated functors on finite sets and injections, given by their values on
// {0..n-1} for n <= N, the adjacent transpositions at each level and the
// inclusion adding a new last point.

#include <optional>
#include <string>
#include <vector>

#include "fcalc/combinat.hpp"
#include "fcalc/exactlin.hpp"

namespace fcalc {

class TruncFIModule {
 public:
  TruncFIModule() = default;
  /// sym[n] holds n - 1 maps (s_0 .. s_{n-2}, s_i swapping points i and i+1);
  /// incl[n] : level n -> level n + 1. Shapes are checked, relations are not
  /// (see verify).
  TruncFIModule(Coeff c, int N, std::vector<PresentedModule> levels, std::vector<ModuleMap> incl,
                std::vector<std::vector<ModuleMap>> sym);
  static TruncFIModule zero(Coeff c, int N);

  const Coeff& coeff() const { return c_; }
  int N() const { return N_; }
  const PresentedModule& level(int n) const { return levels_.at(static_cast<std::size_t>(n)); }
  const ModuleMap& incl(int n) const { return incl_.at(static_cast<std::size_t>(n)); }
  const ModuleMap& sym(int n, int i) const {
    return sym_.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(i));
  }
  const std::vector<PresentedModule>& levels() const { return levels_; }
  const std::vector<ModuleMap>& incls() const { return incl_; }
  const std::vector<std::vector<ModuleMap>>& syms() const { return sym_; }

  /// F(p) for a permutation of {0..n-1}.
  ModuleMap act(int n, const Perm& p) const;
  /// The composite of inclusions level n -> level m (n <= m).
  ModuleMap incl_chain(int n, int m) const;
  /// F(f) for an injection f : n -> m.
  ModuleMap injection(const Injection& f) const;

  /// Levels 0..M only.
  TruncFIModule truncate(int M) const;
  bool is_zero() const;

  friend bool operator==(const TruncFIModule&, const TruncFIModule&) = default;

 private:
  Coeff c_;
  int N_ = -1;
  std::vector<PresentedModule> levels_;
  std::vector<ModuleMap> incl_;
  std::vector<std::vector<ModuleMap>> sym_;
};

/// First failed structural relation, if any.
struct Violation {
  int level = 0;
  std::string generator;  // e.g. "s_1", "incl_3"
  std::string what;
  std::string message() const;
};
std::optional<Violation> find_violation(const TruncFIModule& F);
/// Throws InputError carrying the violation message.
void verify(const TruncFIModule& F);

/// A levelwise family of maps F(n) -> G(n), n <= min(N_F, N_G).
struct FIMorphism {
  TruncFIModule src, dst;
  std::vector<ModuleMap> at;

  int N() const { return static_cast<int>(at.size()) - 1; }
  bool is_natural() const;
  bool is_iso() const;
  bool is_injective() const;
  bool is_zero() const;
};
FIMorphism identity(const TruncFIModule& F);
FIMorphism compose(const FIMorphism& g, const FIMorphism& f);

struct FIKernel {
  TruncFIModule module;
  FIMorphism incl;
};
struct FICokernel {
  TruncFIModule module;
  FIMorphism proj;
};
FIKernel kernel(const FIMorphism& f);
FICokernel cokernel(const FIMorphism& f);

/// Same functor with every level replaced by a minimal presentation.
struct FISimplified {
  TruncFIModule module;
  FIMorphism to, from;
};
FISimplified simplify(const TruncFIModule& F);

/// Substructure from levelwise injections closed under the structure maps.
TruncFIModule induced_sub(const TruncFIModule& F, const std::vector<ModuleMap>& incls);

// ---------------------------------------------------------------- calculus

/// Translation: level n is F(n + x). The x added points come first, so the
/// inclusions are F's own and s_i acts as F's s_{x+i}.
TruncFIModule shift(const TruncFIModule& F, int x);
/// F -> shift(F, x), at level n the injection i |-> x + i.
FIMorphism unit_map(const TruncFIModule& F, int x);
TruncFIModule diff(const TruncFIModule& F, int x = 1);
TruncFIModule kappa(const TruncFIModule& F, int x = 1);

/// Kernel of F(n) -> F(N) for n <= N - margin.
TruncFIModule stable_kernel(const TruncFIModule& F, int margin);
bool is_stably_null(const TruncFIModule& F, int margin);

struct DegreeReport {
  enum class Kind { Value, MinusInfinity, NotCertified };
  Kind kind = Kind::NotCertified;
  int value = 0;
  int window_lo = 0, window_hi = -1;
  int margin = 0;

  bool certified() const { return kind != Kind::NotCertified; }
  bool is_value(int d) const { return kind == Kind::Value && value == d; }
  std::string value_string() const;
  /// "strong degree = 4, window [0,5]".
  std::string describe(const std::string& what) const;
};

DegreeReport strong_degree(const TruncFIModule& F);
DegreeReport weak_degree(const TruncFIModule& F, int margin);
DegreeReport generation_degree(const TruncFIModule& F);

struct DimProfile {
  std::vector<Profile> profiles;
  std::vector<std::vector<long>> diffs;  // diffs[0] = ranks, diffs[k+1] = finite differences of diffs[k]
  /// Least index from which diffs[k] is identically zero, or -1 when it never is.
  std::vector<int> zero_from;
};
DimProfile dim_profile(const TruncFIModule& F);

enum class Schur { Tensor, Symmetric, Exterior };
/// Levelwise Schur functor; field coefficients and relation-free levels only.
TruncFIModule postcompose(const TruncFIModule& F, Schur s, int k);

TruncFIModule direct_sum(const TruncFIModule& F, const TruncFIModule& G);
TruncFIModule tensor(const TruncFIModule& F, const TruncFIModule& G);

/// The snake sequence 0 -> k_1 -> k_2 -> t k_1 -> d_1 -> d_2 -> t d_1 -> 0 at
/// level n (the maps u = unit and v = shifted unit), for n <= N - 2.
std::vector<ModuleMap> six_term_at(const TruncFIModule& F, int n);
bool verify_six_term(const TruncFIModule& F);

}  // namespace fcalc
