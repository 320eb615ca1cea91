#pragma once

// Finite-set combinatorics on the skeleton {0, ..., n-1}: permutations,
// injections and partially defined injections, plus the factorisations the
// functor code relies on.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fcalc {

/// A permutation in one-line notation: p[i] is the image of point i.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images);

  static Perm identity(int n);
  /// The adjacent transposition exchanging points i and i + 1.
  static Perm adjacent(int n, int i);

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return img_; }

  /// (*this) after other.
  Perm after(const Perm& other) const;
  Perm inverse() const;
  bool is_identity() const;

  /// A word i_1, ..., i_k with *this = s_{i_1} o s_{i_2} o ... o s_{i_k};
  /// apply s_{i_k} first.
  std::vector<int> adjacent_word() const;

  /// Cycle type, sorted descending.
  std::vector<int> cycle_type() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<int> img_;
};

/// An everywhere-defined injection {0..n-1} -> {0..m-1}.
struct Injection {
  int target = 0;
  std::vector<int> images;

  int source() const { return static_cast<int>(images.size()); }
  Injection after(const Injection& f) const;  // (*this) o f
  bool valid() const;

  /// A permutation sigma of the target with sigma(i) = images[i] for i < n
  /// and the remaining points listed in increasing order; then
  /// *this = sigma o (standard inclusion).
  Perm completing_perm() const;

  friend bool operator==(const Injection&, const Injection&) = default;
  friend auto operator<=>(const Injection&, const Injection&) = default;
};

/// A partially defined injection {0..n-1} -> {0..m-1}; undefined points are
/// recorded as -1.
struct PartialInjection {
  int target = 0;
  std::vector<int> images;

  int source() const { return static_cast<int>(images.size()); }
  PartialInjection after(const PartialInjection& f) const;  // (*this) o f
  bool valid() const;
  std::vector<int> domain() const;
  int rank() const;

  friend bool operator==(const PartialInjection&, const PartialInjection&) = default;
  friend auto operator<=>(const PartialInjection&, const PartialInjection&) = default;
};

std::vector<Perm> all_perms(int n);
std::vector<Injection> all_injections(int n, int m);
std::vector<PartialInjection> all_partial_injections(int n, int m);
/// All k-subsets of {0..n-1}, each sorted, in lexicographic order.
std::vector<std::vector<int>> subsets_of_size(int n, int k);
/// All subsets of {0..n-1} encoded as bitmasks, 0 .. 2^n - 1.
std::vector<std::uint32_t> all_subsets(int n);
/// Integer partitions of k, each sorted descending, in reverse lexicographic order.
std::vector<std::vector<int>> partitions(int k);
/// A permutation of {0..k-1} whose cycle type is the given partition.
Perm perm_with_cycle_type(const std::vector<int>& partition);

std::uint64_t binomial(int n, int k);
std::uint64_t falling_factorial(int n, int k);
/// Number of partial injections from an a-set to a b-set.
std::uint64_t partial_injection_count(int a, int b);

std::string to_string(const Perm& p);
std::string to_string(const PartialInjection& f);

}  // namespace fcalc
