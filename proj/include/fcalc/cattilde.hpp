#pragma once

// The nullified category M~ for M = Theta (finite sets, injections) and
// M = Sigma (finite sets, bijections). A morphism a -> b of M~ is a class of
// pairs (t, f : a -> b + t) under post-composition with the maps b + t ->
// b + t' of M that fix b; the classes are computed by union-find over the
// stages t = 0, 1, ... and named by the partial injection a -> b they induce.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fcalc/combinat.hpp"

namespace fcalc {

enum class TildeCat { Theta, Sigma };
std::string to_string(TildeCat c);
/// "theta" or "sigma" (case-insensitive, also "Θ"/"Σ").
TildeCat parse_tilde_cat(const std::string& s);

struct TildeHom {
  TildeCat cat = TildeCat::Theta;
  int a = 0, b = 0;
  /// Partial injection a -> b: the representative restricted to the preimage of b.
  PartialInjection normal;
  /// A representative f : a -> b + t; the points outside the domain go to b, b+1, ... in order.
  int t = 0;
  Injection rep;

  friend bool operator==(const TildeHom& x, const TildeHom& y) {
    return x.cat == y.cat && x.a == y.a && x.b == y.b && x.normal == y.normal;
  }
};

/// The chain of colimits over stages t <= T of M(a, b + t).
class TildeColimit {
 public:
  TildeColimit(TildeCat cat, int a, int b);

  /// Include every stage up to T.
  void extend(int T);
  int stages() const { return T_; }
  /// Number of classes of the colimit over t <= T.
  std::size_t classes_up_to(int T);
  /// Whether the map colim_{t <= T} -> colim_{t <= T+1} is a bijection.
  bool transition_bijective(int T);
  /// Class of the element (t, f), by its least representative.
  std::pair<int, Injection> class_of(int t, const Injection& f);
  /// Every element of every class induces the same partial injection.
  bool normal_forms_consistent();

 private:
  struct Elem {
    int t;
    Injection f;
  };
  int find(int x);
  void unite(int x, int y);
  int id_of(int t, const std::vector<int>& images) const;

  TildeCat cat_;
  int a_, b_, T_ = -1;
  std::vector<Elem> elems_;
  std::vector<int> parent_;
  std::map<std::pair<int, std::vector<int>>, int> index_;
};

struct TildeHomSet {
  TildeCat cat = TildeCat::Theta;
  int a = 0, b = 0;
  /// First stage T from which the next two transitions are bijective.
  int stabilized_at = 0;
  std::vector<TildeHom> classes;  // sorted by normal form
};

/// Stabilisation is guaranteed from t = a for Theta and t = max(a - b, 0) for Sigma.
int guaranteed_stage(TildeCat cat, int a, int b);
TildeHomSet tilde_hom(TildeCat cat, int a, int b);

/// The class with the given normal form (InputError if there is none).
TildeHom tilde_from_normal(TildeCat cat, const PartialInjection& p, int a);
TildeHom tilde_identity(TildeCat cat, int a);
/// Image of a morphism of M.
TildeHom tilde_eta(TildeCat cat, const Injection& f);
/// g after f; the class of (g' + id_t) o f' : a -> c + u + t.
TildeHom tilde_compose(const TildeHom& g, const TildeHom& f);
/// f + g : a + a' -> b + b'.
TildeHom tilde_sum(const TildeHom& f, const TildeHom& g);

/// Associativity, unit laws, interchange of + with composition and
/// injectivity of eta, for objects <= bound. First failure, if any.
std::optional<std::string> verify_axioms(TildeCat cat, int bound);

}  // namespace fcalc
