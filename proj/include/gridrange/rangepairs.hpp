#pragma once

// Inversion and equal-pair counting between index ranges, the equivalence
// reductions among the variants, and the bridge to 3-walk counting. The
// default backend iterates one side of each query against a merge-sort tree;
// the graph route is available as the alternative backend.

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "gridrange/core.hpp"
#include "gridrange/graphwalk.hpp"

namespace gridrange::rangepairs {

enum class PairMode { Inversions, EqPairs };

// All index ranges are 1-based and inclusive.
struct IndexedPairsInstance {
  std::vector<i64> A;
  std::vector<i64> WA;
  std::vector<int> L, R;  // per k': a range of A indices
  std::vector<i64> W;     // per k'
  PairMode mode = PairMode::Inversions;
  bool weighted = true;

  // (0,0) special case: L[i] = R[i] = i with unit W.
  static IndexedPairsInstance two_range(std::vector<i64> a, std::vector<i64> w,
                                        PairMode m) {
    IndexedPairsInstance inst;
    inst.A = std::move(a);
    inst.WA = std::move(w);
    int n = static_cast<int>(inst.A.size());
    inst.L.resize(static_cast<std::size_t>(n));
    inst.R.resize(static_cast<std::size_t>(n));
    inst.W.assign(static_cast<std::size_t>(n), 1);
    for (int i = 1; i <= n; ++i) {
      inst.L[static_cast<std::size_t>(i - 1)] = i;
      inst.R[static_cast<std::size_t>(i - 1)] = i;
    }
    inst.mode = m;
    return inst;
  }
};

// Static segment tree over an array; each node holds its range's values
// sorted with prefix weight sums.
class MergeSortTree {
 public:
  MergeSortTree(const std::vector<i64>& a, const std::vector<i64>& w)
      : n_(static_cast<int>(a.size())) {
    if (n_ == 0) return;
    nodes_.reserve(static_cast<std::size_t>(4 * n_));
    build(a, w, 1, n_);
  }

  // weighted count of i in [l, r] with A[i] < v / == v / > v
  i64 weight_less(int l, int r, i64 v) const { return query(l, r, v, Cmp::Lt); }
  i64 weight_eq(int l, int r, i64 v) const { return query(l, r, v, Cmp::Eq); }
  i64 weight_greater(int l, int r, i64 v) const {
    return query(l, r, v, Cmp::Gt);
  }

 private:
  enum class Cmp { Lt, Eq, Gt };

  struct Node {
    int lo, hi;
    int left = -1, right = -1;
    std::vector<i64> vals;
    std::vector<i64> prefix;  // prefix[k] = sum of weights of vals[0..k-1]
  };

  int build(const std::vector<i64>& a, const std::vector<i64>& w, int lo,
            int hi) {
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back({lo, hi, -1, -1, {}, {}});
    if (lo == hi) {
      nodes_[static_cast<std::size_t>(id)].vals = {
          a[static_cast<std::size_t>(lo - 1)]};
      nodes_[static_cast<std::size_t>(id)].prefix = {
          0, w[static_cast<std::size_t>(lo - 1)]};
      return id;
    }
    int mid = lo + (hi - lo) / 2;
    int lc = build(a, w, lo, mid);
    int rc = build(a, w, mid + 1, hi);
    nodes_[static_cast<std::size_t>(id)].left = lc;
    nodes_[static_cast<std::size_t>(id)].right = rc;
    // merge children's sorted (value, weight) streams
    Node& n = nodes_[static_cast<std::size_t>(id)];
    const Node& A_ = nodes_[static_cast<std::size_t>(lc)];
    const Node& B_ = nodes_[static_cast<std::size_t>(rc)];
    std::size_t i = 0, j = 0;
    n.prefix.push_back(0);
    while (i < A_.vals.size() || j < B_.vals.size()) {
      bool take_left = j >= B_.vals.size() ||
                       (i < A_.vals.size() && A_.vals[i] <= B_.vals[j]);
      if (take_left) {
        n.vals.push_back(A_.vals[i]);
        n.prefix.push_back(n.prefix.back() + A_.prefix[i + 1] - A_.prefix[i]);
        ++i;
      } else {
        n.vals.push_back(B_.vals[j]);
        n.prefix.push_back(n.prefix.back() + B_.prefix[j + 1] - B_.prefix[j]);
        ++j;
      }
    }
    return id;
  }

  i64 node_count(const Node& n, i64 v, Cmp cmp) const {
    auto lo = std::lower_bound(n.vals.begin(), n.vals.end(), v);
    auto hi = std::upper_bound(n.vals.begin(), n.vals.end(), v);
    std::size_t a = static_cast<std::size_t>(lo - n.vals.begin());
    std::size_t b = static_cast<std::size_t>(hi - n.vals.begin());
    switch (cmp) {
      case Cmp::Lt: return n.prefix[a];
      case Cmp::Eq: return n.prefix[b] - n.prefix[a];
      case Cmp::Gt: return n.prefix.back() - n.prefix[b];
    }
    return 0;
  }

  i64 query(int l, int r, i64 v, Cmp cmp) const {
    if (n_ == 0 || l > r) return 0;
    i64 acc = 0;
    query_rec(0, l, r, v, cmp, acc);
    return acc;
  }

  void query_rec(int u, int l, int r, i64 v, Cmp cmp, i64& acc) const {
    const Node& n = nodes_[static_cast<std::size_t>(u)];
    if (r < n.lo || n.hi < l) return;
    if (l <= n.lo && n.hi <= r) {
      acc += node_count(n, v, cmp);
      return;
    }
    query_rec(n.left, l, r, v, cmp, acc);
    query_rec(n.right, l, r, v, cmp, acc);
  }

  int n_;
  std::vector<Node> nodes_;
};

struct RangePairQuery {
  int l, r, lp, rp;  // first range [l, r], second range [lp, rp]
};

// Weighted two-range counting: iterate the shorter range, count against a
// merge-sort tree over the other side.
class TwoRangeSolver {
 public:
  TwoRangeSolver(std::vector<i64> a, std::vector<i64> w, PairMode mode)
      : a_(std::move(a)), w_(std::move(w)), mode_(mode), tree_(a_, w_) {}

  i64 solve(const RangePairQuery& q) const {
    if (q.l > q.r || q.lp > q.rp) return 0;
    int len1 = q.r - q.l + 1, len2 = q.rp - q.lp + 1;
    i64 acc = 0;
    if (len1 <= len2) {
      for (int i = q.l; i <= q.r; ++i) {
        i64 v = a_[static_cast<std::size_t>(i - 1)];
        i64 inner = mode_ == PairMode::Inversions
                        ? tree_.weight_less(q.lp, q.rp, v)
                        : tree_.weight_eq(q.lp, q.rp, v);
        acc += w_[static_cast<std::size_t>(i - 1)] * inner;
      }
    } else {
      for (int j = q.lp; j <= q.rp; ++j) {
        i64 v = a_[static_cast<std::size_t>(j - 1)];
        i64 inner = mode_ == PairMode::Inversions
                        ? tree_.weight_greater(q.l, q.r, v)
                        : tree_.weight_eq(q.l, q.r, v);
        acc += w_[static_cast<std::size_t>(j - 1)] * inner;
      }
    }
    return acc;
  }

  std::vector<i64> solve_all(const std::vector<RangePairQuery>& qs) const {
    std::vector<i64> out;
    out.reserve(qs.size());
    for (auto& q : qs) out.push_back(solve(q));
    return out;
  }

 private:
  std::vector<i64> a_, w_;
  PairMode mode_;
  MergeSortTree tree_;
};

inline std::vector<i64> solve_2range_inversions(
    const std::vector<i64>& a, const std::vector<i64>& w,
    const std::vector<RangePairQuery>& qs) {
  return TwoRangeSolver(a, w, PairMode::Inversions).solve_all(qs);
}

// ---------------------------------------------------------------------------
// weighted -> unweighted: one sub-instance per pair of weight-bit positions

struct UnweightedLift {
  struct Sub {
    std::vector<i64> a;          // filtered first part ++ filtered second part
    std::vector<int> first_ids;  // original 1-based indices, ascending
    std::vector<int> second_ids;
    i64 scale;  // 2^(b1 + b2)
  };
  std::vector<Sub> subs;

  // Evaluates a weighted two-range query through the unweighted instances.
  i64 answer(const RangePairQuery& q, PairMode mode) const {
    i64 total = 0;
    for (auto& sub : subs) {
      auto first_lo = std::lower_bound(sub.first_ids.begin(),
                                       sub.first_ids.end(), q.l);
      auto first_hi =
          std::upper_bound(sub.first_ids.begin(), sub.first_ids.end(), q.r);
      auto second_lo = std::lower_bound(sub.second_ids.begin(),
                                        sub.second_ids.end(), q.lp);
      auto second_hi =
          std::upper_bound(sub.second_ids.begin(), sub.second_ids.end(), q.rp);
      int l = static_cast<int>(first_lo - sub.first_ids.begin()) + 1;
      int r = static_cast<int>(first_hi - sub.first_ids.begin());
      int off = static_cast<int>(sub.first_ids.size());
      int lp = off + static_cast<int>(second_lo - sub.second_ids.begin()) + 1;
      int rp = off + static_cast<int>(second_hi - sub.second_ids.begin());
      if (l > r || lp > rp) continue;
      std::vector<i64> unit(sub.a.size(), 1);
      TwoRangeSolver solver(sub.a, unit, mode);
      total += sub.scale * solver.solve({l, r, lp, rp});
    }
    return total;
  }
};

inline UnweightedLift weighted_to_unweighted(const std::vector<i64>& a,
                                             const std::vector<i64>& w) {
  i64 maxw = 1;
  for (i64 x : w) maxw = std::max(maxw, x);
  int bits = 1;
  while ((i64{1} << bits) <= maxw) ++bits;
  UnweightedLift lift;
  for (int b1 = 0; b1 < bits; ++b1) {
    std::vector<int> first;
    for (int i = 0; i < static_cast<int>(a.size()); ++i)
      if ((w[static_cast<std::size_t>(i)] >> b1) & 1) first.push_back(i + 1);
    if (first.empty()) continue;
    for (int b2 = 0; b2 < bits; ++b2) {
      std::vector<int> second;
      for (int i = 0; i < static_cast<int>(a.size()); ++i)
        if ((w[static_cast<std::size_t>(i)] >> b2) & 1) second.push_back(i + 1);
      if (second.empty()) continue;
      UnweightedLift::Sub sub;
      sub.first_ids = first;
      sub.second_ids = second;
      sub.scale = i64{1} << (b1 + b2);
      for (int id : first)
        sub.a.push_back(a[static_cast<std::size_t>(id - 1)]);
      for (int id : second)
        sub.a.push_back(a[static_cast<std::size_t>(id - 1)]);
      lift.subs.push_back(std::move(sub));
    }
  }
  return lift;
}

// ---------------------------------------------------------------------------
// inversions <-> eq-pairs

// Inversions([l,r],[l',r']) via eq-pair queries on bit-prefix arrays: one
// array of length 2n per bit position; entries that cannot participate get
// distinct inert values per half.
struct EqFromInversions {
  int n = 0;
  std::vector<std::vector<i64>> arrays;  // one per bit, length 2n

  template <typename EqRangeSolver>
  i64 answer(const RangePairQuery& q, EqRangeSolver&& eq) const {
    i64 total = 0;
    for (auto& arr : arrays) {
      total += eq(arr, RangePairQuery{q.l, q.r, n + q.lp, n + q.rp});
    }
    return total;
  }
};

inline EqFromInversions inversions_to_eqpairs(const std::vector<i64>& a) {
  // rank-compress to non-negative z-bit integers
  std::vector<i64> sorted(a);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  int n = static_cast<int>(a.size());
  std::vector<i64> rank(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    rank[static_cast<std::size_t>(i)] = std::lower_bound(sorted.begin(),
                                                         sorted.end(),
                                                         a[static_cast<std::size_t>(i)]) -
                                        sorted.begin();
  int z = 1;
  while ((i64{1} << z) < static_cast<i64>(sorted.size())) ++z;
  EqFromInversions red;
  red.n = n;
  for (int bit = z - 1; bit >= 0; --bit) {
    // prefix strictly above `bit`, equality required there; the first side
    // must have bit set, the second side clear
    std::vector<i64> arr(static_cast<std::size_t>(2 * n));
    for (int j = 0; j < n; ++j) {
      i64 v = rank[static_cast<std::size_t>(j)];
      i64 prefix = v >> (bit + 1);
      bool set = (v >> bit) & 1;
      arr[static_cast<std::size_t>(j)] = set ? prefix : i64{-1};
      arr[static_cast<std::size_t>(n + j)] = set ? i64{-2} : prefix;
    }
    red.arrays.push_back(std::move(arr));
  }
  return red;
}

// EqPairs([l,r],[l',r']) = pairs - inversions(A) - inversions(-A).
template <typename InvRangeSolver>
i64 eqpairs_via_inversions(const std::vector<i64>& a, const RangePairQuery& q,
                           InvRangeSolver&& inv) {
  if (q.l > q.r || q.lp > q.rp) return 0;
  std::vector<i64> neg(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
  i64 pairs = i64(q.r - q.l + 1) * i64(q.rp - q.lp + 1);
  return pairs - inv(a, q) - inv(neg, q);
}

// ---------------------------------------------------------------------------
// (0,1)-indexed queries

// Direct evaluation backend: per k', count the inner two-range pairs against
// a merge-sort tree over the [l, r] side.
class IndexedEvaluator {
 public:
  explicit IndexedEvaluator(IndexedPairsInstance inst)
      : inst_(std::move(inst)), tree_(inst_.A, inst_.WA) {}

  const IndexedPairsInstance& instance() const { return inst_; }

  // [l, r] ranges over A directly; [lp, rp] over the k' index side.
  i64 answer(int l, int r, int lp, int rp) const {
    i64 total = 0;
    std::unordered_map<i64, i64> memo;
    for (int kp = lp; kp <= rp; ++kp) {
      i64 wk = inst_.W[static_cast<std::size_t>(kp - 1)];
      if (wk == 0) continue;
      i64 inner = 0;
      for (int j = inst_.L[static_cast<std::size_t>(kp - 1)];
           j <= inst_.R[static_cast<std::size_t>(kp - 1)]; ++j) {
        i64 v = inst_.A[static_cast<std::size_t>(j - 1)];
        auto it = memo.find(v);
        i64 cnt;
        if (it != memo.end()) {
          cnt = it->second;
        } else {
          cnt = inst_.mode == PairMode::Inversions
                    ? tree_.weight_greater(l, r, v)
                    : tree_.weight_eq(l, r, v);
          memo.emplace(v, cnt);
        }
        inner += inst_.WA[static_cast<std::size_t>(j - 1)] * cnt;
      }
      total += wk * inner;
    }
    return total;
  }

 private:
  IndexedPairsInstance inst_;
  MergeSortTree tree_;
};

// Graph backend for unweighted (0,1)-indexed eq-pair queries: the four-layer
// walk construction. S indexes k', T1/T2 index A, U holds distinct values.
class IndexedEqPairsWalker {
 public:
  explicit IndexedEqPairsWalker(const IndexedPairsInstance& inst) {
    na_ = static_cast<int>(inst.A.size());
    nk_ = static_cast<int>(inst.L.size());
    build_tree(1, nk_, s_nodes_, s_ranges_);
    build_tree(1, na_, t_nodes_, t_ranges_);
    std::vector<i64> values(inst.A);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    int nu = static_cast<int>(values.size());
    int ns = static_cast<int>(s_ranges_.size());
    int nt = static_cast<int>(t_ranges_.size());
    s_base_ = 0;
    t1_base_ = ns;
    u_base_ = ns + nt;
    t2_base_ = ns + nt + nu;
    int total = ns + 2 * nt + nu;

    std::map<std::pair<int, int>, i64> w;
    // S -> T1: each k' lives in O(log) S nodes; its [L, R] decomposes into
    // O(log) T nodes.
    for (int kp = 1; kp <= nk_; ++kp) {
      auto s_path = path_nodes(s_nodes_, kp);
      auto bases = base_nodes(t_nodes_, inst.L[static_cast<std::size_t>(kp - 1)],
                              inst.R[static_cast<std::size_t>(kp - 1)]);
      for (int s : s_path)
        for (int t : bases) w[{s_base_ + s, t1_base_ + t}] += 1;
    }
    // T1/T2 -> U
    for (int i = 1; i <= na_; ++i) {
      int uid = static_cast<int>(std::lower_bound(values.begin(), values.end(),
                                                  inst.A[static_cast<std::size_t>(i - 1)]) -
                                 values.begin());
      for (int t : path_nodes(t_nodes_, i)) {
        w[{t1_base_ + t, u_base_ + uid}] += 1;
        w[{u_base_ + uid, t2_base_ + t}] += 1;
      }
    }
    std::vector<std::array<int, 2>> edges;
    std::vector<i64> weights;
    edges.reserve(w.size());
    for (auto& [k, wt] : w) {
      edges.push_back({k.first, k.second});
      weights.push_back(wt);
    }
    graph_ = std::make_unique<graphwalk::Graph>(total, edges, &weights);
    counter_ = std::make_unique<graphwalk::WalkCounter>(*graph_);
  }

  std::size_t edge_count() const { return graph_->edges().size(); }

  // first range over A indices, second over k' indices
  i64 answer(int l, int r, int lp, int rp) {
    if (l > r || lp > rp) return 0;
    i64 total = 0;
    for (int s : base_nodes(s_nodes_, lp, rp))
      for (int t : base_nodes(t_nodes_, l, r))
        total += counter_->three_walk(s_base_ + s, t2_base_ + t);
    return total;
  }

 private:
  struct TreeNode {
    int lo, hi, left = -1, right = -1;
  };

  static int build_tree(int lo, int hi, std::vector<TreeNode>& nodes,
                        std::vector<std::array<int, 2>>& ranges) {
    int id = static_cast<int>(nodes.size());
    nodes.push_back({lo, hi, -1, -1});
    ranges.push_back({lo, hi});
    if (lo < hi) {
      int mid = lo + (hi - lo) / 2;
      int lc = build_tree(lo, mid, nodes, ranges);
      int rc = build_tree(mid + 1, hi, nodes, ranges);
      nodes[static_cast<std::size_t>(id)].left = lc;
      nodes[static_cast<std::size_t>(id)].right = rc;
    }
    return id;
  }

  static std::vector<int> path_nodes(const std::vector<TreeNode>& nodes,
                                     int pos) {
    std::vector<int> out;
    int u = 0;
    while (true) {
      out.push_back(u);
      const TreeNode& n = nodes[static_cast<std::size_t>(u)];
      if (n.lo == n.hi) break;
      int mid = n.lo + (n.hi - n.lo) / 2;
      u = pos <= mid ? n.left : n.right;
    }
    return out;
  }

  static void base_rec(const std::vector<TreeNode>& nodes, int u, int l, int r,
                       std::vector<int>& out) {
    const TreeNode& n = nodes[static_cast<std::size_t>(u)];
    if (r < n.lo || n.hi < l) return;
    if (l <= n.lo && n.hi <= r) {
      out.push_back(u);
      return;
    }
    base_rec(nodes, n.left, l, r, out);
    base_rec(nodes, n.right, l, r, out);
  }

  static std::vector<int> base_nodes(const std::vector<TreeNode>& nodes, int l,
                                     int r) {
    std::vector<int> out;
    if (l <= r && !nodes.empty()) base_rec(nodes, 0, l, r, out);
    return out;
  }

  int na_, nk_;
  std::vector<TreeNode> s_nodes_, t_nodes_;
  std::vector<std::array<int, 2>> s_ranges_, t_ranges_;
  int s_base_, t1_base_, u_base_, t2_base_;
  std::unique_ptr<graphwalk::Graph> graph_;
  std::unique_ptr<graphwalk::WalkCounter> counter_;
};

}  // namespace gridrange::rangepairs
