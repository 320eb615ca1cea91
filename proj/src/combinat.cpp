#include "fcalc/combinat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fcalc {

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (int v : img_) {
    if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("Perm: not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return Perm(std::move(v));
}

Perm Perm::adjacent(int n, int i) {
  if (i < 0 || i + 1 >= n) throw std::invalid_argument("Perm::adjacent: index out of range");
  auto v = identity(n).img_;
  std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i + 1)]);
  return Perm(std::move(v));
}

Perm Perm::after(const Perm& other) const {
  if (other.size() != size()) throw std::invalid_argument("Perm::after: size mismatch");
  std::vector<int> v(img_.size());
  for (int i = 0; i < size(); ++i) v[static_cast<std::size_t>(i)] = (*this)(other(i));
  return Perm(std::move(v));
}

Perm Perm::inverse() const {
  std::vector<int> v(img_.size());
  for (int i = 0; i < size(); ++i) v[static_cast<std::size_t>((*this)(i))] = i;
  return Perm(std::move(v));
}

bool Perm::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if ((*this)(i) != i) return false;
  return true;
}

std::vector<int> Perm::adjacent_word() const {
  // Bubble sort the one-line notation by right multiplication with adjacent
  // transpositions: p o t_1 o ... o t_k = id, hence p = t_k o ... o t_1.
  std::vector<int> line = img_;
  std::vector<int> applied;
  const int n = size();
  for (int pass = 0; pass < n; ++pass) {
    bool swapped = false;
    for (int j = 0; j + 1 < n; ++j) {
      if (line[static_cast<std::size_t>(j)] > line[static_cast<std::size_t>(j + 1)]) {
        std::swap(line[static_cast<std::size_t>(j)], line[static_cast<std::size_t>(j + 1)]);
        applied.push_back(j);
        swapped = true;
      }
    }
    if (!swapped) break;
  }
  std::reverse(applied.begin(), applied.end());
  return applied;
}

std::vector<int> Perm::cycle_type() const {
  std::vector<int> type;
  std::vector<bool> seen(img_.size(), false);
  for (int i = 0; i < size(); ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    int len = 0;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = (*this)(j)) {
      seen[static_cast<std::size_t>(j)] = true;
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.rbegin(), type.rend());
  return type;
}

bool Injection::valid() const {
  std::vector<bool> seen(static_cast<std::size_t>(std::max(target, 0)), false);
  for (int v : images) {
    if (v < 0 || v >= target || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

Injection Injection::after(const Injection& f) const {
  if (f.target != source()) throw std::invalid_argument("Injection::after: endpoint mismatch");
  Injection g{target, std::vector<int>(f.images.size())};
  for (std::size_t i = 0; i < f.images.size(); ++i)
    g.images[i] = images[static_cast<std::size_t>(f.images[i])];
  return g;
}

Perm Injection::completing_perm() const {
  std::vector<int> v(images);
  std::vector<bool> used(static_cast<std::size_t>(target), false);
  for (int x : images) used[static_cast<std::size_t>(x)] = true;
  for (int y = 0; y < target; ++y)
    if (!used[static_cast<std::size_t>(y)]) v.push_back(y);
  return Perm(std::move(v));
}

bool PartialInjection::valid() const {
  std::vector<bool> seen(static_cast<std::size_t>(std::max(target, 0)), false);
  for (int v : images) {
    if (v == -1) continue;
    if (v < 0 || v >= target || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

PartialInjection PartialInjection::after(const PartialInjection& f) const {
  if (f.target != source()) throw std::invalid_argument("PartialInjection::after: endpoint mismatch");
  PartialInjection g{target, std::vector<int>(f.images.size(), -1)};
  for (std::size_t i = 0; i < f.images.size(); ++i)
    if (f.images[i] >= 0) g.images[i] = images[static_cast<std::size_t>(f.images[i])];
  return g;
}

std::vector<int> PartialInjection::domain() const {
  std::vector<int> d;
  for (int i = 0; i < source(); ++i)
    if (images[static_cast<std::size_t>(i)] >= 0) d.push_back(i);
  return d;
}

int PartialInjection::rank() const { return static_cast<int>(domain().size()); }

std::vector<Perm> all_perms(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  std::vector<Perm> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

namespace {

void injections_rec(int n, int m, std::vector<int>& cur, std::vector<bool>& used,
                    std::vector<Injection>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(Injection{m, cur});
    return;
  }
  for (int y = 0; y < m; ++y) {
    if (used[static_cast<std::size_t>(y)]) continue;
    used[static_cast<std::size_t>(y)] = true;
    cur.push_back(y);
    injections_rec(n, m, cur, used, out);
    cur.pop_back();
    used[static_cast<std::size_t>(y)] = false;
  }
}

void partial_rec(int n, int m, std::vector<int>& cur, std::vector<bool>& used,
                 std::vector<PartialInjection>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(PartialInjection{m, cur});
    return;
  }
  cur.push_back(-1);
  partial_rec(n, m, cur, used, out);
  cur.pop_back();
  for (int y = 0; y < m; ++y) {
    if (used[static_cast<std::size_t>(y)]) continue;
    used[static_cast<std::size_t>(y)] = true;
    cur.push_back(y);
    partial_rec(n, m, cur, used, out);
    cur.pop_back();
    used[static_cast<std::size_t>(y)] = false;
  }
}

void partitions_rec(int remaining, int max_part, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Injection> all_injections(int n, int m) {
  std::vector<Injection> out;
  if (n > m) return out;
  std::vector<int> cur;
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  injections_rec(n, m, cur, used, out);
  return out;
}

std::vector<PartialInjection> all_partial_injections(int n, int m) {
  std::vector<PartialInjection> out;
  std::vector<int> cur;
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  partial_rec(n, m, cur, used, out);
  return out;
}

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::vector<std::uint32_t> all_subsets(int n) {
  std::vector<std::uint32_t> out(std::size_t{1} << n);
  std::iota(out.begin(), out.end(), 0u);
  return out;
}

std::vector<std::vector<int>> partitions(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_rec(k, k, cur, out);
  return out;
}

Perm perm_with_cycle_type(const std::vector<int>& partition) {
  int n = 0;
  for (int p : partition) n += p;
  std::vector<int> v(static_cast<std::size_t>(n));
  int start = 0;
  for (int p : partition) {
    for (int j = 0; j < p; ++j)
      v[static_cast<std::size_t>(start + j)] = start + (j + 1) % p;
    start += p;
  }
  return Perm(std::move(v));
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t falling_factorial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= static_cast<std::uint64_t>(n - i);
  return r;
}

std::uint64_t partial_injection_count(int a, int b) {
  std::uint64_t total = 0;
  for (int k = 0; k <= std::min(a, b); ++k) total += binomial(a, k) * falling_factorial(b, k);
  return total;
}

std::string to_string(const Perm& p) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < p.size(); ++i) os << (i ? " " : "") << p(i);
  os << ']';
  return os.str();
}

std::string to_string(const PartialInjection& f) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int i = 0; i < f.source(); ++i) {
    if (f.images[static_cast<std::size_t>(i)] < 0) continue;
    os << (first ? "" : ", ") << i << "->" << f.images[static_cast<std::size_t>(i)];
    first = false;
  }
  os << "} : " << f.source() << " -> " << f.target;
  return os.str();
}

}  // namespace fcalc
