#pragma once

// Exact linear algebra over Z, Q and F_p.
//
// Conventions: vectors are rows. A ModuleMap's matrix has one row per source
// generator holding that generator's image in target coordinates, so the
// image of v is v * mat and (g o f).mat = f.mat * g.mat. A PresentedModule
// is R^gens modulo the row span of its relation matrix.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fcalc/error.hpp"

namespace fcalc {

using Scalar = mpq_class;

enum class CoeffKind { Integers, Rationals, PrimeField };

class Coeff {
 public:
  Coeff() = default;
  static Coeff integers() { return Coeff(CoeffKind::Integers, 0); }
  static Coeff rationals() { return Coeff(CoeffKind::Rationals, 0); }
  static Coeff prime_field(unsigned long p);
  /// "Z", "Q", "F2", "F<p>".
  static Coeff parse(std::string_view text);

  CoeffKind kind() const { return kind_; }
  unsigned long prime() const { return p_; }
  bool is_field() const { return kind_ != CoeffKind::Integers; }
  std::string name() const;

  Scalar reduce(const Scalar& x) const;
  Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
  /// Multiplicative inverse; throws unless the element is a unit.
  Scalar inv(const Scalar& a) const;
  bool is_unit(const Scalar& a) const;

  friend bool operator==(const Coeff&, const Coeff&) = default;

 private:
  Coeff(CoeffKind k, unsigned long p) : kind_(k), p_(p) {}
  CoeffKind kind_ = CoeffKind::Integers;
  unsigned long p_ = 0;
};

class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Mat identity(std::size_t n);
  static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
  static Mat from_rows(const std::vector<std::vector<Scalar>>& rows, std::size_t cols = 0);
  static Mat from_ints(const std::vector<std::vector<long>>& rows, std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<Scalar> row(std::size_t i) const;
  bool is_zero() const;
  bool row_is_zero(std::size_t i) const;

  Mat transpose() const;
  Mat select_rows(const std::vector<std::size_t>& idx) const;
  Mat select_cols(const std::vector<std::size_t>& idx) const;
  Mat row_range(std::size_t begin, std::size_t end) const;
  Mat col_range(std::size_t begin, std::size_t end) const;

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> a_;
};

Mat reduce(const Coeff& c, Mat m);
Mat mul(const Coeff& c, const Mat& a, const Mat& b);
Mat add(const Coeff& c, const Mat& a, const Mat& b);
Mat sub(const Coeff& c, const Mat& a, const Mat& b);
Mat scale(const Coeff& c, const Scalar& s, const Mat& a);
Mat vstack(const Mat& top, const Mat& bottom);
Mat hstack(const Mat& left, const Mat& right);
Mat block_diag(const Mat& a, const Mat& b);
Mat kron(const Coeff& c, const Mat& a, const Mat& b);
/// Exact determinant of a square matrix (fraction-free over Z, Gaussian over fields).
Scalar determinant(const Coeff& c, const Mat& m);
Scalar trace(const Coeff& c, const Mat& m);
std::string to_string(const Mat& m);

/// U * m * V = D with U, V invertible over the coefficient ring and D diagonal.
/// Over Z this is the Smith normal form (positive diagonal, d1 | d2 | ...);
/// over a field the diagonal is 1, ..., 1, 0, ..., 0. Vinv is V^{-1}.
struct Diagonalization {
  Mat U, D, V, Vinv;
  std::size_t rank = 0;
  Scalar diag(std::size_t i) const { return D(i, i); }
};

Diagonalization diagonalize(const Coeff& c, const Mat& m);

struct SmithForm {
  Mat U, D, V;
};
/// Smith normal form over Z.
SmithForm snf(const Mat& m);

/// Solves y * B = v for many right-hand sides against a fixed B.
class LeftSolver {
 public:
  LeftSolver(const Coeff& c, const Mat& B);
  std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& v) const;
  std::size_t rank() const { return d_.rank; }
  /// Rows spanning { y : y * B = 0 }.
  Mat left_kernel() const;

 private:
  Coeff c_;
  std::size_t rows_ = 0, cols_ = 0;
  Diagonalization d_;
};

/// A basis (rows) of the row span of m, as a lattice over Z or a subspace over a field.
Mat row_span_basis(const Coeff& c, const Mat& m);

class PresentedModule {
 public:
  PresentedModule() = default;
  PresentedModule(Coeff c, std::size_t gens, Mat rels);
  static PresentedModule free(Coeff c, std::size_t gens);
  static PresentedModule zero(Coeff c) { return free(c, 0); }

  const Coeff& coeff() const { return c_; }
  std::size_t gens() const { return gens_; }
  const Mat& rels() const { return rels_; }
  /// True when every relation row is zero.
  bool is_free_presentation() const { return rels_.is_zero(); }
  /// Whether v (in generator coordinates) is zero in the module.
  bool is_zero_element(const std::vector<Scalar>& v) const;

  friend bool operator==(const PresentedModule&, const PresentedModule&) = default;

 private:
  Coeff c_;
  std::size_t gens_ = 0;
  Mat rels_;
};

class ModuleMap {
 public:
  ModuleMap() = default;
  /// Checks shapes only; use is_well_defined() for the relation condition.
  ModuleMap(PresentedModule src, PresentedModule dst, Mat mat);
  static ModuleMap identity(const PresentedModule& m);
  static ModuleMap zero(const PresentedModule& src, const PresentedModule& dst);

  const PresentedModule& src() const { return src_; }
  const PresentedModule& dst() const { return dst_; }
  const Mat& mat() const { return mat_; }
  const Coeff& coeff() const { return src_.coeff(); }

  bool is_well_defined() const;
  /// The map sends every generator to zero in dst.
  bool is_zero() const;
  bool equals(const ModuleMap& other) const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_iso() const { return is_injective() && is_surjective(); }
  /// Same presentation data; equals() compares as maps.
  friend bool operator==(const ModuleMap&, const ModuleMap&) = default;

 private:
  PresentedModule src_, dst_;
  Mat mat_;
};

/// g after f.
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
ModuleMap operator+(const ModuleMap& a, const ModuleMap& b);
ModuleMap operator-(const ModuleMap& a, const ModuleMap& b);
ModuleMap scaled(const Scalar& s, const ModuleMap& f);
ModuleMap direct_sum(const ModuleMap& a, const ModuleMap& b);
PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b);

struct KernelResult {
  PresentedModule module;
  ModuleMap incl;
};
struct CokernelResult {
  PresentedModule module;
  ModuleMap proj;
};

KernelResult kernel(const ModuleMap& f);
CokernelResult cokernel(const ModuleMap& f);
/// The submodule generated by the given elements (rows, in m's coordinates).
KernelResult submodule(const PresentedModule& m, const Mat& elements);
/// Image of f as a submodule of f.dst.
KernelResult image(const ModuleMap& f);

/// Factor g : A -> B through an injective incl : K -> B; nullopt if g does not land in K.
std::optional<ModuleMap> lift_through(const ModuleMap& g, const ModuleMap& incl);
/// A right inverse of a surjective map (a preimage for every target generator).
std::optional<ModuleMap> section_of(const ModuleMap& surj);
/// The inverse of an isomorphism.
ModuleMap inverse(const ModuleMap& iso);

/// Complete isomorphism invariant of a finitely generated module.
struct Profile {
  std::size_t free_rank = 0;
  std::vector<mpz_class> torsion;  // invariant factors > 1, in divisibility order

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  /// Over a field: {dimension}; over Z: free rank followed by the torsion factors.
  std::vector<mpz_class> to_list() const;
  std::string to_string() const;
  friend bool operator==(const Profile&, const Profile&) = default;
};

Profile invariant_factors(const PresentedModule& m);
/// Free rank (dimension over a field).
std::size_t image_rank(const PresentedModule& m);
bool is_zero_module(const PresentedModule& m);
bool same_profile(const PresentedModule& a, const PresentedModule& b);

/// An equivalent presentation with no redundant generators; over a field the
/// result is free. to_simple : m -> module and from_simple : module -> m are
/// mutually inverse isomorphisms.
struct Simplified {
  PresentedModule module;
  ModuleMap to_simple;
  ModuleMap from_simple;
};
Simplified simplify(const PresentedModule& m);

/// True iff image = kernel at every interior joint of the sequence.
/// Throws InputError when consecutive maps are not composable.
bool check_exact(const std::vector<ModuleMap>& seq);

/// m modulo the span of (g - id) v over all actions g and generators v.
CokernelResult coinvariants(const PresentedModule& m, const std::vector<ModuleMap>& action);

/// For composable u : A -> B, v : B -> C, the seven maps of
/// 0 -> Ker u -> Ker vu -> Ker v -> Coker u -> Coker vu -> Coker v -> 0.
std::vector<ModuleMap> snake_sequence(const ModuleMap& u, const ModuleMap& v);

}  // namespace fcalc
