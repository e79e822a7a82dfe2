#pragma once

// Dense brute-force references. Deliberately naive; every solver is tested
// against these.

#include <cassert>
#include <cstddef>
#include <numeric>
#include <vector>

#include "gridrange/core.hpp"

namespace gridrange::oracle {

// Materialised s^d grid. Accepts only sizes small enough to hold in memory:
// s <= 256 for d = 2 and s <= 32 for d = 3 (d = 1 is capped at 1 << 20).
class DenseGrid {
 public:
  explicit DenseGrid(GridSpec spec) : spec_(std::move(spec)) {
    i64 limit = spec_.d == 1 ? (i64{1} << 20) : spec_.d == 2 ? 256 : 32;
    if (spec_.d > 3 || spec_.s > limit) {
      throw std::invalid_argument("oracle grid too large to materialise");
    }
    i64 n = 1;
    for (int i = 0; i < spec_.d; ++i) n *= spec_.s;
    cells_.assign(static_cast<std::size_t>(n), 0);
  }

  const GridSpec& spec() const { return spec_; }

  i64& at(const std::vector<i64>& p) { return cells_[index(p)]; }
  i64 at(const std::vector<i64>& p) const { return cells_[index(p)]; }

  void apply(const Update& u) {
    assert(static_cast<int>(u.range.dims.size()) == spec_.d);
    for_each_cell(u.range, [&](std::size_t idx) {
      cells_[idx] = u.fn.apply(cells_[idx]);
    });
  }

  i64 query(const OrthoRange& r, QueryKind q) const {
    i64 acc = q == QueryKind::Sum ? 0 : kNegInf;
    for_each_cell(r, [&](std::size_t idx) {
      if (q == QueryKind::Sum) {
        acc += cells_[idx];
      } else {
        acc = std::max(acc, cells_[idx]);
      }
    });
    return acc;
  }

  i64 query(const OrthoRange& r) const { return query(r, spec_.query); }

  void run(const Operation& op, std::vector<i64>* answers) {
    if (op.is_update) {
      apply({op.range, op.fn});
    } else if (answers) {
      answers->push_back(query(op.range));
    }
  }

 private:
  std::size_t index(const std::vector<i64>& p) const {
    std::size_t idx = 0;
    for (int i = 0; i < spec_.d; ++i) {
      assert(p[i] >= 1 && p[i] <= spec_.s);
      idx = idx * static_cast<std::size_t>(spec_.s) +
            static_cast<std::size_t>(p[i] - 1);
    }
    return idx;
  }

  template <typename F>
  void for_each_cell(const OrthoRange& r, F&& f) const {
    std::vector<i64> p(spec_.d);
    for (int i = 0; i < spec_.d; ++i) p[i] = r.lo(i);
    while (true) {
      std::size_t idx = 0;
      for (int i = 0; i < spec_.d; ++i) {
        idx = idx * static_cast<std::size_t>(spec_.s) +
              static_cast<std::size_t>(p[i] - 1);
      }
      f(idx);
      int i = spec_.d - 1;
      while (i >= 0) {
        if (++p[i] <= r.hi(i)) break;
        p[i] = r.lo(i);
        --i;
      }
      if (i < 0) break;
    }
  }

  GridSpec spec_;
  std::vector<i64> cells_;
};

// Entry (u, v) of the k-th power of the adjacency matrix, by direct
// multiplication. Vertices are 0-based; k in {2, 3}.
inline i64 count_walks(int n_vertices,
                       const std::vector<std::array<int, 2>>& edges, int k,
                       int u, int v) {
  std::size_t n = static_cast<std::size_t>(n_vertices);
  std::vector<std::vector<i64>> a(n, std::vector<i64>(n, 0));
  for (auto& e : edges) {
    a[e[0]][e[1]] += 1;
    a[e[1]][e[0]] += 1;
  }
  auto mul = [&](const std::vector<std::vector<i64>>& x,
                 const std::vector<std::vector<i64>>& y) {
    std::vector<std::vector<i64>> r(n, std::vector<i64>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        if (x[i][l] != 0)
          for (std::size_t j = 0; j < n; ++j) r[i][j] += x[i][l] * y[l][j];
    return r;
  };
  auto p = a;
  for (int i = 1; i < k; ++i) p = mul(p, a);
  return p[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
}

enum class PairMode { Inversions, EqPairs };

// The literal triple sum
//   sum_{i in [l,r]} sum_{k' in [l',r']} sum_{j in [L[k'],R[k']]}
//     1_{A[i] (>|=) A[j]} * W_A[i] * W_A[j] * W[k']
// over 1-based index ranges.
inline i64 indexed_pairs(const std::vector<i64>& A, const std::vector<i64>& WA,
                         const std::vector<int>& L, const std::vector<int>& R,
                         const std::vector<i64>& W, int l, int r, int lp,
                         int rp, PairMode mode = PairMode::Inversions) {
  i64 total = 0;
  for (int i = l; i <= r; ++i) {
    for (int kp = lp; kp <= rp; ++kp) {
      for (int j = L[static_cast<std::size_t>(kp - 1)];
           j <= R[static_cast<std::size_t>(kp - 1)]; ++j) {
        bool hit = mode == PairMode::Inversions
                       ? A[static_cast<std::size_t>(i - 1)] >
                             A[static_cast<std::size_t>(j - 1)]
                       : A[static_cast<std::size_t>(i - 1)] ==
                             A[static_cast<std::size_t>(j - 1)];
        if (hit) {
          total += WA[static_cast<std::size_t>(i - 1)] *
                   WA[static_cast<std::size_t>(j - 1)] *
                   W[static_cast<std::size_t>(kp - 1)];
        }
      }
    }
  }
  return total;
}

// Two-range special case: ranges ([l,r], [l',r']) over A with weights W,
// counting pairs (i, j) with i in the first and j in the second range.
inline i64 range_pairs(const std::vector<i64>& A, const std::vector<i64>& W,
                       int l, int r, int lp, int rp,
                       PairMode mode = PairMode::Inversions) {
  i64 total = 0;
  for (int i = l; i <= r; ++i) {
    for (int j = lp; j <= rp; ++j) {
      bool hit = mode == PairMode::Inversions
                     ? A[static_cast<std::size_t>(i - 1)] >
                           A[static_cast<std::size_t>(j - 1)]
                     : A[static_cast<std::size_t>(i - 1)] ==
                           A[static_cast<std::size_t>(j - 1)];
      if (hit)
        total += W[static_cast<std::size_t>(i - 1)] *
                 W[static_cast<std::size_t>(j - 1)];
    }
  }
  return total;
}

// Dense 1D array simulator used by the seg1d tests.
class DenseArray {
 public:
  DenseArray(i64 s, QueryKind q) : q_(q), v_(static_cast<std::size_t>(s), 0) {}

  void apply(i64 l, i64 r, const UpdateFn& fn) {
    for (i64 i = l; i <= r; ++i)
      v_[static_cast<std::size_t>(i - 1)] =
          fn.apply(v_[static_cast<std::size_t>(i - 1)]);
  }
  i64 query(i64 l, i64 r) const {
    i64 acc = q_ == QueryKind::Sum ? 0 : kNegInf;
    for (i64 i = l; i <= r; ++i) {
      i64 x = v_[static_cast<std::size_t>(i - 1)];
      acc = q_ == QueryKind::Sum ? acc + x : std::max(acc, x);
    }
    return acc;
  }
  i64 value(i64 i) const { return v_[static_cast<std::size_t>(i - 1)]; }

 private:
  QueryKind q_;
  std::vector<i64> v_;
};

}  // namespace gridrange::oracle
