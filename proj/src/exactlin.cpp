#include "fcalc/exactlin.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace fcalc {

// ---------------------------------------------------------------- Coeff

namespace {

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Coeff Coeff::prime_field(unsigned long p) {
  if (!is_prime(p)) throw InputError("coefficient field F" + std::to_string(p) + ": modulus is not prime");
  return Coeff(CoeffKind::PrimeField, p);
}

Coeff Coeff::parse(std::string_view text) {
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  if (text.size() >= 2 && text[0] == 'F') {
    unsigned long p = 0;
    auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), p);
    if (ec == std::errc() && ptr == text.data() + text.size()) return prime_field(p);
  }
  throw InputError("unknown coefficient ring '" + std::string(text) + "' (expected Z, Q or F<p>)");
}

std::string Coeff::name() const {
  switch (kind_) {
    case CoeffKind::Integers: return "Z";
    case CoeffKind::Rationals: return "Q";
    case CoeffKind::PrimeField: return "F" + std::to_string(p_);
  }
  return "?";
}

Scalar Coeff::reduce(const Scalar& x) const {
  switch (kind_) {
    case CoeffKind::Rationals: return x;
    case CoeffKind::Integers:
      if (x.get_den() != 1) throw InputError("non-integer entry " + x.get_str() + " over Z");
      return x;
    case CoeffKind::PrimeField: {
      if (mpz_cmp_ui(x.get_den_mpz_t(), 1) == 0 && mpz_sgn(x.get_num_mpz_t()) >= 0 &&
          mpz_cmp_ui(x.get_num_mpz_t(), p_) < 0)
        return x;
      mpz_class p(p_);
      mpz_class num = x.get_num() % p;
      if (num < 0) num += p;
      if (x.get_den() != 1) {
        mpz_class den = x.get_den() % p;
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
          throw InputError("entry " + x.get_str() + " has a denominator divisible by " + std::to_string(p_));
        num = (num * inv) % p;
      }
      return Scalar(num);
    }
  }
  return x;
}

bool Coeff::is_unit(const Scalar& a) const {
  if (kind_ == CoeffKind::Integers) return a == 1 || a == -1;
  return sgn(reduce(a)) != 0;
}

Scalar Coeff::inv(const Scalar& a) const {
  if (!is_unit(a)) throw InputError("inverse of a non-unit " + a.get_str() + " over " + name());
  if (kind_ == CoeffKind::PrimeField) return reduce(Scalar(1) / reduce(a));
  return Scalar(1) / a;
}

// ---------------------------------------------------------------- Mat

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<Scalar>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  Mat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::from_ints(const std::vector<std::vector<long>>& rows, std::size_t cols) {
  std::vector<std::vector<Scalar>> r;
  r.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<Scalar> s;
    for (long v : row) s.emplace_back(v);
    r.push_back(std::move(s));
  }
  return from_rows(r, cols);
}

std::vector<Scalar> Mat::row(std::size_t i) const {
  return std::vector<Scalar>(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                             a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

bool Mat::row_is_zero(std::size_t i) const {
  for (std::size_t j = 0; j < cols_; ++j)
    if (sgn((*this)(i, j)) != 0) return false;
  return true;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::select_rows(const std::vector<std::size_t>& idx) const {
  Mat m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

Mat Mat::select_cols(const std::vector<std::size_t>& idx) const {
  Mat m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

Mat Mat::row_range(std::size_t begin, std::size_t end) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = begin; i < end; ++i) idx.push_back(i);
  return select_rows(idx);
}

Mat Mat::col_range(std::size_t begin, std::size_t end) const {
  std::vector<std::size_t> idx;
  for (std::size_t j = begin; j < end; ++j) idx.push_back(j);
  return select_cols(idx);
}

Mat reduce(const Coeff& c, Mat m) {
  if (c.kind() == CoeffKind::Rationals) return m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = c.reduce(m(i, j));
  return m;
}

Mat mul(const Coeff& c, const Mat& a, const Mat& b) {
  if (a.cols() != b.rows())
    throw InputError("matrix product shape mismatch: " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
  Mat r(a.rows(), b.cols());
  auto integral = [](const Mat& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (mpz_cmp_ui(m(i, j).get_den_mpz_t(), 1) != 0) return false;
    return true;
  };
  if (integral(a) && integral(b)) {
    // accumulate numerators in mpz; rational additions would canonicalise every step
    std::vector<mpz_class> acc(b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (auto& x : acc) x = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        mpz_srcptr aik = a(i, k).get_num_mpz_t();
        if (mpz_sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols(); ++j) {
          mpz_srcptr bkj = b(k, j).get_num_mpz_t();
          if (mpz_sgn(bkj) != 0) mpz_addmul(acc[j].get_mpz_t(), aik, bkj);
        }
      }
      for (std::size_t j = 0; j < b.cols(); ++j) mpq_set_z(r(i, j).get_mpq_t(), acc[j].get_mpz_t());
    }
    return reduce(c, std::move(r));
  }
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Scalar& bkj = b(k, j);
        if (sgn(bkj) == 0) continue;
        r(i, j) += aik * bkj;
      }
    }
  return reduce(c, std::move(r));
}

Mat add(const Coeff& c, const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix sum shape mismatch");
  Mat r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) += b(i, j);
  return reduce(c, std::move(r));
}

Mat sub(const Coeff& c, const Mat& a, const Mat& b) { return add(c, a, scale(c, Scalar(-1), b)); }

Mat scale(const Coeff& c, const Scalar& s, const Mat& a) {
  Mat r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) *= s;
  return reduce(c, std::move(r));
}

Mat vstack(const Mat& top, const Mat& bottom) {
  if (top.rows() == 0) {
    Mat r = bottom;
    if (bottom.rows() == 0) return Mat(0, std::max(top.cols(), bottom.cols()));
    return r;
  }
  if (bottom.rows() == 0) return top;
  if (top.cols() != bottom.cols()) throw InputError("vstack: column mismatch");
  Mat r(top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) r(i, j) = top(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) r(top.rows() + i, j) = bottom(i, j);
  return r;
}

Mat hstack(const Mat& left, const Mat& right) { return vstack(left.transpose(), right.transpose()).transpose(); }

Mat block_diag(const Mat& a, const Mat& b) {
  Mat r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

Mat kron(const Coeff& c, const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return reduce(c, std::move(r));
}

Scalar determinant(const Coeff& c, const Mat& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  const Coeff field = c.is_field() ? c : Coeff::rationals();
  Mat a = m;
  Scalar det = 1;
  const std::size_t n = m.rows();
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t p = t;
    while (p < n && sgn(a(p, t)) == 0) ++p;
    if (p == n) return 0;
    if (p != t) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(t, j));
      det = -det;
    }
    det = field.mul(det, a(t, t));
    Scalar inv = field.inv(a(t, t));
    for (std::size_t i = t + 1; i < n; ++i) {
      if (sgn(a(i, t)) == 0) continue;
      Scalar f = field.mul(a(i, t), inv);
      for (std::size_t j = t; j < n; ++j) a(i, j) = field.sub(a(i, j), field.mul(f, a(t, j)));
    }
  }
  return c.reduce(det);
}

Scalar trace(const Coeff& c, const Mat& m) {
  Scalar t = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return c.reduce(t);
}

std::string to_string(const Mat& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------- diagonalisation

namespace {

// Row/column operation bookkeeping shared by the integer and field routines:
// A is transformed in place while U accumulates row operations and V, Vinv
// accumulate column operations.
template <class T>
struct Work {
  std::size_t r, c;
  std::vector<T> A, U, V, Vinv;

  Work(std::size_t rows, std::size_t cols) : r(rows), c(cols), A(rows * cols), U(rows * rows), V(cols * cols), Vinv(cols * cols) {
    for (std::size_t i = 0; i < r; ++i) U[i * r + i] = 1;
    for (std::size_t j = 0; j < c; ++j) V[j * c + j] = Vinv[j * c + j] = 1;
  }
  T& a(std::size_t i, std::size_t j) { return A[i * c + j]; }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < c; ++j) std::swap(A[i * c + j], A[k * c + j]);
    for (std::size_t j = 0; j < r; ++j) std::swap(U[i * r + j], U[k * r + j]);
  }
  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < r; ++i) std::swap(A[i * c + j], A[i * c + k]);
    for (std::size_t i = 0; i < c; ++i) std::swap(V[i * c + j], V[i * c + k]);
    for (std::size_t i = 0; i < c; ++i) std::swap(Vinv[j * c + i], Vinv[k * c + i]);
  }
  // row_i += q * row_t
  template <class Red>
  void add_row(std::size_t i, std::size_t t, const T& q, Red red) {
    for (std::size_t j = 0; j < c; ++j)
      if (A[t * c + j] != 0) A[i * c + j] = red(A[i * c + j] + q * A[t * c + j]);
    for (std::size_t j = 0; j < r; ++j)
      if (U[t * r + j] != 0) U[i * r + j] = red(U[i * r + j] + q * U[t * r + j]);
  }
  // col_j += q * col_t
  template <class Red>
  void add_col(std::size_t j, std::size_t t, const T& q, Red red) {
    for (std::size_t i = 0; i < r; ++i)
      if (A[i * c + t] != 0) A[i * c + j] = red(A[i * c + j] + q * A[i * c + t]);
    for (std::size_t i = 0; i < c; ++i)
      if (V[i * c + t] != 0) V[i * c + j] = red(V[i * c + j] + q * V[i * c + t]);
    for (std::size_t i = 0; i < c; ++i)
      if (Vinv[j * c + i] != 0) Vinv[t * c + i] = red(Vinv[t * c + i] - q * Vinv[j * c + i]);
  }
  template <class Red>
  void scale_row(std::size_t i, const T& s, Red red) {
    for (std::size_t j = 0; j < c; ++j) A[i * c + j] = red(A[i * c + j] * s);
    for (std::size_t j = 0; j < r; ++j) U[i * r + j] = red(U[i * r + j] * s);
  }
};

template <class T>
Mat to_mat(const std::vector<T>& v, std::size_t rows, std::size_t cols) {
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Scalar(v[i * cols + j]);
  return m;
}

Diagonalization smith_integers(const Mat& m) {
  const std::size_t r = m.rows(), c = m.cols();
  Work<mpz_class> w(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      if (m(i, j).get_den() != 1) throw InputError("non-integer entry in an integer matrix");
      w.a(i, j) = m(i, j).get_num();
    }
  auto id = [](const mpz_class& x) { return x; };
  std::size_t t = 0;
  const std::size_t lim = std::min(r, c);
  for (; t < lim; ++t) {
    // Minimal-absolute-value pivot in the trailing block.
    std::size_t pi = r, pj = c;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j)
        if (w.a(i, j) != 0 && (pi == r || abs(w.a(i, j)) < abs(w.a(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == r) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);
    while (true) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (w.a(i, t) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), w.a(i, t).get_mpz_t(), w.a(t, t).get_mpz_t());
        if (q != 0) w.add_row(i, t, -q, id);
        if (w.a(i, t) != 0) dirty = true;
      }
      if (dirty) {
        std::size_t best = t;
        for (std::size_t i = t + 1; i < r; ++i)
          if (w.a(i, t) != 0 && abs(w.a(i, t)) < abs(w.a(best, t))) best = i;
        w.swap_rows(t, best);
        continue;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (w.a(t, j) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), w.a(t, j).get_mpz_t(), w.a(t, t).get_mpz_t());
        if (q != 0) w.add_col(j, t, -q, id);
        if (w.a(t, j) != 0) dirty = true;
      }
      if (dirty) {
        std::size_t best = t;
        for (std::size_t j = t + 1; j < c; ++j)
          if (w.a(t, j) != 0 && abs(w.a(t, j)) < abs(w.a(t, best))) best = j;
        w.swap_cols(t, best);
        continue;
      }
      // Row and column are clear; enforce divisibility of the trailing block.
      std::size_t bad = r;
      for (std::size_t i = t + 1; i < r && bad == r; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (!mpz_divisible_p(w.a(i, j).get_mpz_t(), w.a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == r) break;
      w.add_row(t, bad, mpz_class(1), id);
    }
    if (w.a(t, t) < 0) w.scale_row(t, mpz_class(-1), id);
  }
  Diagonalization d;
  d.U = to_mat(w.U, r, r);
  d.D = to_mat(w.A, r, c);
  d.V = to_mat(w.V, c, c);
  d.Vinv = to_mat(w.Vinv, c, c);
  d.rank = t;
  return d;
}

Diagonalization diagonalize_field(const Coeff& coeff, const Mat& m) {
  const std::size_t r = m.rows(), c = m.cols();
  Work<Scalar> w(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) w.a(i, j) = coeff.reduce(m(i, j));
  auto red = [&coeff](const Scalar& x) { return coeff.reduce(x); };
  std::size_t t = 0;
  const std::size_t lim = std::min(r, c);
  for (; t < lim; ++t) {
    std::size_t pi = r, pj = c;
    for (std::size_t j = t; j < c && pi == r; ++j)
      for (std::size_t i = t; i < r; ++i)
        if (sgn(w.a(i, j)) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == r) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);
    w.scale_row(t, coeff.inv(w.a(t, t)), red);
    for (std::size_t i = t + 1; i < r; ++i)
      if (sgn(w.a(i, t)) != 0) w.add_row(i, t, Scalar(-w.a(i, t)), red);
    for (std::size_t j = t + 1; j < c; ++j)
      if (sgn(w.a(t, j)) != 0) w.add_col(j, t, Scalar(-w.a(t, j)), red);
  }
  Diagonalization d;
  d.U = to_mat(w.U, r, r);
  d.D = to_mat(w.A, r, c);
  d.V = to_mat(w.V, c, c);
  d.Vinv = to_mat(w.Vinv, c, c);
  d.rank = t;
  return d;
}

}  // namespace

Diagonalization diagonalize(const Coeff& c, const Mat& m) {
  if (c.kind() == CoeffKind::Integers) return smith_integers(m);
  return diagonalize_field(c, m);
}

SmithForm snf(const Mat& m) {
  auto d = smith_integers(m);
  return SmithForm{std::move(d.U), std::move(d.D), std::move(d.V)};
}

// ---------------------------------------------------------------- solving

LeftSolver::LeftSolver(const Coeff& c, const Mat& B) : c_(c), rows_(B.rows()), cols_(B.cols()), d_(diagonalize(c, B)) {}

std::optional<std::vector<Scalar>> LeftSolver::solve(const std::vector<Scalar>& v) const {
  if (v.size() != cols_) throw InputError("LeftSolver: right-hand side has wrong length");
  // y B = v  <=>  (y U^{-1}) D = v V.
  std::vector<Scalar> vv(cols_);
  for (std::size_t j = 0; j < cols_; ++j) {
    Scalar s = 0;
    for (std::size_t k = 0; k < cols_; ++k)
      if (sgn(v[k]) != 0 && sgn(d_.V(k, j)) != 0) s += v[k] * d_.V(k, j);
    vv[j] = c_.reduce(s);
  }
  std::vector<Scalar> z(rows_);
  for (std::size_t i = 0; i < cols_; ++i) {
    if (i < d_.rank) {
      const Scalar& di = d_.D(i, i);
      if (c_.kind() == CoeffKind::Integers) {
        if (!mpz_divisible_p(vv[i].get_num().get_mpz_t(), di.get_num().get_mpz_t())) return std::nullopt;
        z[i] = vv[i] / di;
      } else {
        z[i] = c_.mul(vv[i], c_.inv(di));
      }
    } else if (sgn(vv[i]) != 0) {
      return std::nullopt;
    }
  }
  std::vector<Scalar> y(rows_);
  for (std::size_t j = 0; j < rows_; ++j) {
    Scalar s = 0;
    for (std::size_t i = 0; i < std::min(rows_, d_.rank); ++i)
      if (sgn(z[i]) != 0 && sgn(d_.U(i, j)) != 0) s += z[i] * d_.U(i, j);
    y[j] = c_.reduce(s);
  }
  return y;
}

Mat LeftSolver::left_kernel() const { return d_.U.row_range(d_.rank, rows_); }

Mat row_span_basis(const Coeff& c, const Mat& m) {
  auto d = diagonalize(c, m);
  Mat basis(d.rank, m.cols());
  for (std::size_t i = 0; i < d.rank; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) basis(i, j) = c.reduce(d.D(i, i) * d.Vinv(i, j));
  return basis;
}

// ---------------------------------------------------------------- modules

PresentedModule::PresentedModule(Coeff c, std::size_t gens, Mat rels) : c_(c), gens_(gens), rels_(std::move(rels)) {
  if (rels_.rows() == 0) rels_ = Mat(0, gens_);
  if (rels_.cols() != gens_)
    throw InputError("relation matrix has " + std::to_string(rels_.cols()) + " columns but the module has " +
                     std::to_string(gens_) + " generators");
  rels_ = reduce(c_, std::move(rels_));
}

PresentedModule PresentedModule::free(Coeff c, std::size_t gens) { return PresentedModule(c, gens, Mat(0, gens)); }

bool PresentedModule::is_zero_element(const std::vector<Scalar>& v) const {
  bool all_zero = std::all_of(v.begin(), v.end(), [this](const Scalar& x) { return sgn(c_.reduce(x)) == 0; });
  if (all_zero) return true;
  if (rels_.rows() == 0) return false;
  return LeftSolver(c_, rels_).solve(v).has_value();
}

ModuleMap::ModuleMap(PresentedModule src, PresentedModule dst, Mat mat)
    : src_(std::move(src)), dst_(std::move(dst)), mat_(std::move(mat)) {
  if (!(src_.coeff() == dst_.coeff())) throw InputError("module map between different coefficient rings");
  if (mat_.rows() == 0 && mat_.cols() == 0) mat_ = Mat(src_.gens(), dst_.gens());
  if (mat_.rows() != src_.gens() || mat_.cols() != dst_.gens())
    throw InputError("map matrix is " + std::to_string(mat_.rows()) + "x" + std::to_string(mat_.cols()) +
                     " but source/target have " + std::to_string(src_.gens()) + "/" +
                     std::to_string(dst_.gens()) + " generators");
  mat_ = reduce(src_.coeff(), std::move(mat_));
}

ModuleMap ModuleMap::identity(const PresentedModule& m) { return ModuleMap(m, m, Mat::identity(m.gens())); }

ModuleMap ModuleMap::zero(const PresentedModule& src, const PresentedModule& dst) {
  return ModuleMap(src, dst, Mat(src.gens(), dst.gens()));
}

namespace {

bool rows_in_span(const Coeff& c, const Mat& rows, const Mat& span) {
  std::optional<LeftSolver> solver;
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    if (rows.row_is_zero(i)) continue;
    if (span.rows() == 0) return false;
    if (!solver) solver.emplace(c, span);
    if (!solver->solve(rows.row(i))) return false;
  }
  return true;
}

}  // namespace

bool ModuleMap::is_well_defined() const {
  return rows_in_span(coeff(), mul(coeff(), src_.rels(), mat_), dst_.rels());
}

bool ModuleMap::is_zero() const { return rows_in_span(coeff(), mat_, dst_.rels()); }

bool ModuleMap::equals(const ModuleMap& other) const {
  if (!(src_ == other.src_) || !(dst_ == other.dst_)) return false;
  return (*this - other).is_zero();
}

bool ModuleMap::is_injective() const { return is_zero_module(kernel(*this).module); }
bool ModuleMap::is_surjective() const { return is_zero_module(cokernel(*this).module); }

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (!(f.dst() == g.src())) throw InputError("compose: target of the first map is not the source of the second");
  return ModuleMap(f.src(), g.dst(), mul(f.coeff(), f.mat(), g.mat()));
}

ModuleMap operator+(const ModuleMap& a, const ModuleMap& b) {
  if (!(a.src() == b.src()) || !(a.dst() == b.dst())) throw InputError("sum of maps with different endpoints");
  return ModuleMap(a.src(), a.dst(), add(a.coeff(), a.mat(), b.mat()));
}

ModuleMap operator-(const ModuleMap& a, const ModuleMap& b) {
  if (!(a.src() == b.src()) || !(a.dst() == b.dst())) throw InputError("difference of maps with different endpoints");
  return ModuleMap(a.src(), a.dst(), sub(a.coeff(), a.mat(), b.mat()));
}

ModuleMap scaled(const Scalar& s, const ModuleMap& f) { return ModuleMap(f.src(), f.dst(), scale(f.coeff(), s, f.mat())); }

PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b) {
  if (!(a.coeff() == b.coeff())) throw InputError("direct sum of modules over different rings");
  return PresentedModule(a.coeff(), a.gens() + b.gens(), block_diag(a.rels(), b.rels()));
}

ModuleMap direct_sum(const ModuleMap& a, const ModuleMap& b) {
  return ModuleMap(direct_sum(a.src(), b.src()), direct_sum(a.dst(), b.dst()), block_diag(a.mat(), b.mat()));
}

namespace {

// The module L / rels where L is a lattice (subspace) containing rels, given
// by a basis; returns it together with the inclusion into the ambient module.
KernelResult sublattice_quotient(const PresentedModule& ambient, const Mat& basis) {
  const Coeff& c = ambient.coeff();
  Mat rel_coords(ambient.rels().rows(), basis.rows());
  if (ambient.rels().rows() > 0) {
    LeftSolver solver(c, basis);
    for (std::size_t i = 0; i < ambient.rels().rows(); ++i) {
      auto y = solver.solve(ambient.rels().row(i));
      if (!y) throw InputError("map is not well defined on the source presentation");
      for (std::size_t j = 0; j < basis.rows(); ++j) rel_coords(i, j) = (*y)[j];
    }
  }
  PresentedModule sub(c, basis.rows(), rel_coords);
  return KernelResult{sub, ModuleMap(sub, ambient, basis)};
}

}  // namespace

KernelResult kernel(const ModuleMap& f) {
  const Coeff& c = f.coeff();
  const std::size_t g = f.src().gens();
  Mat B = vstack(f.mat(), f.dst().rels());
  if (B.cols() == 0) return sublattice_quotient(f.src(), Mat::identity(g));
  LeftSolver solver(c, B);
  Mat X = solver.left_kernel().col_range(0, g);
  return sublattice_quotient(f.src(), row_span_basis(c, X));
}

CokernelResult cokernel(const ModuleMap& f) {
  const PresentedModule& dst = f.dst();
  PresentedModule q(dst.coeff(), dst.gens(), vstack(dst.rels(), f.mat()));
  return CokernelResult{q, ModuleMap(dst, q, Mat::identity(dst.gens()))};
}

KernelResult submodule(const PresentedModule& m, const Mat& elements) {
  if (elements.rows() > 0 && elements.cols() != m.gens()) throw InputError("submodule: element length mismatch");
  Mat all = vstack(elements.rows() ? elements : Mat(0, m.gens()), m.rels());
  return sublattice_quotient(m, row_span_basis(m.coeff(), all));
}

KernelResult image(const ModuleMap& f) { return submodule(f.dst(), f.mat()); }

std::optional<ModuleMap> lift_through(const ModuleMap& g, const ModuleMap& incl) {
  if (!(g.dst() == incl.dst())) throw InputError("lift_through: maps have different targets");
  const Coeff& c = g.coeff();
  const std::size_t k = incl.src().gens();
  Mat lifted(g.src().gens(), k);
  Mat B = vstack(incl.mat(), incl.dst().rels());
  if (B.rows() == 0) {
    if (!g.mat().is_zero()) return std::nullopt;
    return ModuleMap(g.src(), incl.src(), lifted);
  }
  LeftSolver solver(c, B);
  for (std::size_t i = 0; i < g.src().gens(); ++i) {
    auto y = solver.solve(g.mat().row(i));
    if (!y) return std::nullopt;
    for (std::size_t j = 0; j < k; ++j) lifted(i, j) = (*y)[j];
  }
  return ModuleMap(g.src(), incl.src(), lifted);
}

std::optional<ModuleMap> section_of(const ModuleMap& surj) {
  const Coeff& c = surj.coeff();
  const std::size_t g = surj.src().gens(), h = surj.dst().gens();
  Mat pre(h, g);
  Mat B = vstack(surj.mat(), surj.dst().rels());
  if (h == 0) return ModuleMap(surj.dst(), surj.src(), pre);
  if (B.rows() == 0) return std::nullopt;
  LeftSolver solver(c, B);
  for (std::size_t j = 0; j < h; ++j) {
    std::vector<Scalar> e(h);
    e[j] = 1;
    auto y = solver.solve(e);
    if (!y) return std::nullopt;
    for (std::size_t i = 0; i < g; ++i) pre(j, i) = (*y)[i];
  }
  return ModuleMap(surj.dst(), surj.src(), pre);
}

ModuleMap inverse(const ModuleMap& iso) {
  auto s = section_of(iso);
  if (!s || !s->is_well_defined() || !iso.is_injective()) throw InputError("inverse: map is not an isomorphism");
  return *s;
}

// ---------------------------------------------------------------- profiles

std::vector<mpz_class> Profile::to_list() const {
  std::vector<mpz_class> out{mpz_class(static_cast<unsigned long>(free_rank))};
  out.insert(out.end(), torsion.begin(), torsion.end());
  return out;
}

std::string Profile::to_string() const {
  std::ostringstream os;
  os << free_rank;
  if (!torsion.empty()) {
    os << " [";
    for (std::size_t i = 0; i < torsion.size(); ++i) os << (i ? "," : "") << torsion[i].get_str();
    os << ']';
  }
  return os.str();
}

Profile invariant_factors(const PresentedModule& m) {
  Profile p;
  if (m.rels().rows() == 0) {
    p.free_rank = m.gens();
    return p;
  }
  auto d = diagonalize(m.coeff(), m.rels());
  p.free_rank = m.gens() - d.rank;
  if (m.coeff().kind() == CoeffKind::Integers)
    for (std::size_t i = 0; i < d.rank; ++i)
      if (d.D(i, i) != 1) p.torsion.push_back(d.D(i, i).get_num());
  return p;
}

std::size_t image_rank(const PresentedModule& m) { return invariant_factors(m).free_rank; }
bool is_zero_module(const PresentedModule& m) { return invariant_factors(m).is_zero(); }
bool same_profile(const PresentedModule& a, const PresentedModule& b) {
  return a.coeff() == b.coeff() && invariant_factors(a) == invariant_factors(b);
}

Simplified simplify(const PresentedModule& m) {
  const Coeff& c = m.coeff();
  if (m.rels().is_zero()) {
    PresentedModule s = PresentedModule::free(c, m.gens());
    return Simplified{s, ModuleMap(m, s, Mat::identity(m.gens())), ModuleMap(s, m, Mat::identity(m.gens()))};
  }
  auto d = diagonalize(c, m.rels());
  std::vector<std::size_t> kept;
  std::vector<Scalar> kept_diag;
  for (std::size_t i = 0; i < m.gens(); ++i) {
    if (i < d.rank && c.is_unit(d.D(i, i))) continue;
    kept.push_back(i);
    kept_diag.push_back(i < d.rank ? d.D(i, i) : Scalar(0));
  }
  std::vector<std::vector<Scalar>> rel_rows;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    if (sgn(kept_diag[k]) == 0) continue;
    std::vector<Scalar> row(kept.size());
    row[k] = kept_diag[k];
    rel_rows.push_back(std::move(row));
  }
  PresentedModule s(c, kept.size(), Mat::from_rows(rel_rows, kept.size()));
  ModuleMap to(m, s, d.V.select_cols(kept));
  ModuleMap from(s, m, d.Vinv.select_rows(kept));
  return Simplified{s, to, from};
}

// ---------------------------------------------------------------- sequences

bool check_exact(const std::vector<ModuleMap>& seq) {
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (!(seq[i].dst() == seq[i + 1].src()))
      throw InputError("check_exact: maps " + std::to_string(i) + " and " + std::to_string(i + 1) + " are not composable");
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const ModuleMap& f = seq[i];
    const ModuleMap& g = seq[i + 1];
    if (!compose(g, f).is_zero()) return false;
    auto ker = kernel(g);
    auto into = lift_through(f, ker.incl);
    if (!into) return false;
    if (!into->is_surjective()) return false;
  }
  return true;
}

CokernelResult coinvariants(const PresentedModule& m, const std::vector<ModuleMap>& action) {
  const Coeff& c = m.coeff();
  Mat rels = m.rels();
  for (const auto& g : action) {
    if (!(g.src() == m) || !(g.dst() == m)) throw InputError("coinvariants: action is not an endomorphism of the module");
    if (!g.is_well_defined()) throw InputError("coinvariants: action matrix is not well defined on the presentation");
    rels = vstack(rels, sub(c, g.mat(), Mat::identity(m.gens())));
  }
  PresentedModule q(c, m.gens(), rels);
  return CokernelResult{q, ModuleMap(m, q, Mat::identity(m.gens()))};
}

std::vector<ModuleMap> snake_sequence(const ModuleMap& u, const ModuleMap& v) {
  const ModuleMap vu = compose(v, u);
  const PresentedModule zero = PresentedModule::zero(u.coeff());
  auto ku = kernel(u), kvu = kernel(vu), kv = kernel(v);
  auto cu = cokernel(u), cvu = cokernel(vu), cv = cokernel(v);

  auto m1 = lift_through(ku.incl, kvu.incl);
  auto m2 = lift_through(compose(u, kvu.incl), kv.incl);
  if (!m1 || !m2) throw InputError("snake_sequence: kernel comparison maps do not factor");
  ModuleMap m3 = compose(cu.proj, kv.incl);
  ModuleMap m4(cu.module, cvu.module, v.mat());
  ModuleMap m5(cvu.module, cv.module, Mat::identity(v.dst().gens()));
  return {ModuleMap::zero(zero, ku.module), *m1, *m2, m3, m4, m5, ModuleMap::zero(cv.module, zero)};
}

}  // namespace fcalc
