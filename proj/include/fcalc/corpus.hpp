#pragma once

// Named example functors, and the facts known about them.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fcalc/fisharp.hpp"

namespace fcalc {

/// A functor given on bases: images[...] = -1 sends a basis vector to zero.
/// sym_images(n, i) and incl_images(n) list, for each basis vector of the
/// source level, the index of its image basis vector.
TruncFIModule from_basis_action(Coeff c, int N, const std::vector<std::size_t>& dims,
                                const std::function<std::vector<int>(int, int)>& sym_images,
                                const std::function<std::vector<int>(int)>& incl_images);

TruncFIModule constant_functor(Coeff c, int N);
/// Z_i: the coefficients at level i, zero elsewhere. atomic(-1) is zero.
TruncFIModule atomic_functor(Coeff c, int N, int i);
/// Z_{>=n}.
TruncFIModule zgeq_functor(Coeff c, int N, int n);
/// P_d: free on injections d -> n.
TruncFIModule free_fi(Coeff c, int N, int d);
/// Kernel of the augmentation P_1 -> constant.
TruncFIModule augmentation_kernel(Coeff c, int N);
/// Free on 2-subsets of n.
TruncFIModule two_subsets(Coeff c, int N);
/// The norm {a,b} |-> (a,b) + (b,a) from two_subsets into P_2.
FIMorphism norm_map(Coeff c, int N);

/// Pushout of the norm and the augmentation of 2-subsets onto the constant,
/// together with the inclusion of the constant.
struct Pushout {
  TruncFIModule module;
  FIMorphism const_incl;
};
Pushout upm_pushout(Coeff c, int N);

/// sum of atomic(i) for i <= k.
TruncFIModule atomic_sum(Coeff c, int N, int k);
/// sum of Z_{>=i} for i <= N.
TruncFIModule zgeq_sum(Coeff c, int N);

/// Free on partial injections d -> n.
FISharpModule free_sharp(Coeff c, int N, int d);
FISharpModule constant_sharp(Coeff c, int N);

struct CorpusObject {
  std::optional<TruncFIModule> fi;
  std::optional<FISharpModule> sharp;
  const TruncFIModule& as_fi() const { return sharp ? sharp->base() : *fi; }
};

struct CorpusInfo {
  std::string name;
  std::string description;
  bool sharp = false;
};
std::vector<CorpusInfo> corpus_list();
/// One concrete instance of every entry, parameters filled in.
std::vector<std::string> corpus_instances();
/// Names as in corpus_list(), with integer parameters in parentheses, joined by '+'.
CorpusObject build(const std::string& name, Coeff c, int N);
/// 10 over Z and Q, 8 over finite fields.
int default_window(const Coeff& c);

struct OracleResult {
  std::string tag;
  std::string fact;
  bool passed = false;
  std::string detail;
};
/// Every recorded fact about the named entry, evaluated.
std::vector<OracleResult> run_oracles(const std::string& name, Coeff c, int N);

}  // namespace fcalc
