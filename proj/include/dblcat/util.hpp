#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace dblcat {

/// Subsets of a carrier are bitmasks; every carrier in this library has at
/// most 64 elements.
using Mask = std::uint64_t;
inline constexpr int kMaxCarrier = 64;

inline constexpr Mask bit(int i) { return Mask{1} << i; }
inline constexpr bool has(Mask m, int i) { return ((m >> i) & 1U) != 0; }
inline int popcount(Mask m) { return std::popcount(m); }
inline constexpr Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : bit(n) - 1; }

template <class F>
void for_each_bit(Mask m, F&& f) {
  while (m != 0) {
    f(std::countr_zero(m));
    m &= m - 1;
  }
}

inline std::vector<int> bits_of(Mask m) {
  std::vector<int> out;
  for_each_bit(m, [&](int i) { out.push_back(i); });
  return out;
}

/// Boolean matrix stored row-wise as bitmasks over the columns.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols) : cols_(cols), rows_(static_cast<std::size_t>(rows), 0) {}

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }

  bool get(int i, int j) const { return has(rows_[i], j); }
  void set(int i, int j, bool v = true) {
    if (v) {
      rows_[i] |= bit(j);
    } else {
      rows_[i] &= ~bit(j);
    }
  }
  Mask row(int i) const { return rows_[i]; }
  void set_row(int i, Mask m) { rows_[i] = m; }

  Mask column(int j) const {
    Mask out = 0;
    for (int i = 0; i < rows(); ++i) {
      if (get(i, j)) out |= bit(i);
    }
    return out;
  }

  /// Relational composite: (i,k) holds iff (i,j) holds here and (j,k) in `next`.
  BitMatrix then(const BitMatrix& next) const {
    BitMatrix out(rows(), next.cols());
    for (int i = 0; i < rows(); ++i) {
      Mask acc = 0;
      for_each_bit(rows_[i], [&](int j) { acc |= next.rows_[j]; });
      out.rows_[i] = acc;
    }
    return out;
  }

  BitMatrix transposed() const {
    BitMatrix out(cols_, rows());
    for (int i = 0; i < rows(); ++i) {
      for_each_bit(rows_[i], [&](int j) { out.set(j, i); });
    }
    return out;
  }

  bool subset_of(const BitMatrix& other) const {
    for (int i = 0; i < rows(); ++i) {
      if ((rows_[i] & ~other.rows_[i]) != 0) return false;
    }
    return true;
  }

  int count() const {
    int n = 0;
    for (Mask r : rows_) n += popcount(r);
    return n;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  int cols_ = 0;
  std::vector<Mask> rows_;
};

/// Union-find whose class representative is always the least member, so that
/// quotients built from it are canonical.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    int root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      int next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  int size() const { return static_cast<int>(parent_.size()); }

 private:
  std::vector<int> parent_;
};

/// Calls `f(tuple)` for every tuple with tuple[i] < radix[i], in
/// lexicographic order. Stops early when `f` returns false.
template <class F>
bool for_each_tuple(const std::vector<int>& radix, F&& f) {
  for (int r : radix) {
    if (r <= 0) return true;
  }
  std::vector<int> t(radix.size(), 0);
  while (true) {
    if (!f(std::as_const(t))) return false;
    std::size_t i = t.size();
    while (i > 0) {
      --i;
      if (++t[i] < radix[i]) break;
      t[i] = 0;
      if (i == 0) return true;
    }
    if (t.empty()) return true;
  }
}

inline std::vector<std::string> default_names(int n) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

inline std::string set_string(Mask m, const std::vector<std::string>& names) {
  std::vector<std::string> parts;
  for_each_bit(m, [&](int i) { parts.push_back(names[i]); });
  return "{" + join(parts) + "}";
}

template <class T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

/// Inverse of a bijection given as an index vector; empty if not a bijection
/// onto [0, codomain).
inline std::vector<int> invert_bijection(const std::vector<int>& f, int codomain) {
  if (static_cast<int>(f.size()) != codomain) return {};
  std::vector<int> inv(static_cast<std::size_t>(codomain), -1);
  for (int i = 0; i < static_cast<int>(f.size()); ++i) {
    if (f[i] < 0 || f[i] >= codomain || inv[f[i]] != -1) return {};
    inv[f[i]] = i;
  }
  return inv;
}

}  // namespace dblcat
