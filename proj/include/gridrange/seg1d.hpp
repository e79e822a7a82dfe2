#pragma once

// One-dimensional engines. All trees are implicit (sparse): the domain may be
// as large as 2^60, nodes are materialised only where operations touch.

#include <cassert>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "gridrange/core.hpp"

namespace gridrange::seg1d {

// x -> min(hi, max(lo, x + shift)); closed under composition, distributes
// over max. Hosts any mix of add/min/set/max updates.
struct ClampShift {
  i64 hi = kPosInf;
  i64 lo = kNegInf;
  i64 shift = 0;

  static ClampShift identity() { return {}; }
  static ClampShift from(const UpdateFn& f) {
    switch (f.kind) {
      case UpdateKind::Add: return {kPosInf, kNegInf, f.c};
      case UpdateKind::Min: return {f.c, kNegInf, 0};
      case UpdateKind::Max: return {kPosInf, f.c, 0};
      case UpdateKind::Set: return {f.c, f.c, 0};
    }
    return {};
  }
  i64 apply(i64 x) const {
    return std::min(hi, std::max(lo, sat_add(x, shift)));
  }
  bool is_identity() const {
    return hi >= kPosInf && lo <= kNegInf && shift == 0;
  }
  // outer . inner
  static ClampShift compose(const ClampShift& o, const ClampShift& i) {
    i64 shift = sat_add(i.shift, o.shift);
    i64 lo = std::max(o.lo, sat_add(i.lo, o.shift));
    i64 hi = std::min(o.hi, std::max(o.lo, sat_add(i.hi, o.shift)));
    lo = std::min(lo, hi);
    return {hi, lo, shift};
  }
};

struct MaxClampShiftPolicy {
  using Tag = ClampShift;
  static constexpr QueryKind kQuery = QueryKind::Max;
  static i64 neutral() { return kNegInf; }
  static i64 zeros(i64 /*width*/) { return 0; }
  static i64 combine(i64 a, i64 b) { return std::max(a, b); }
  static i64 apply(const Tag& t, i64 v, i64 /*width*/) { return t.apply(v); }
  static bool supports(const std::vector<UpdateKind>&) { return true; }
};

struct SumAddSetPolicy {
  using Tag = ComposedUpdate;  // AddThenSet form
  static constexpr QueryKind kQuery = QueryKind::Sum;
  static i64 neutral() { return 0; }
  static i64 zeros(i64 /*width*/) { return 0; }
  static i64 combine(i64 a, i64 b) { return a + b; }
  static i64 apply(const Tag& t, i64 v, i64 width) {
    if (t.is_const) return i64(i128(t.p) * width);
    return v + i64(i128(t.p) * width);
  }
  static bool supports(const std::vector<UpdateKind>& u) {
    for (auto k : u)
      if (k == UpdateKind::Min || k == UpdateKind::Max) return false;
    return true;
  }
};

namespace detail {
inline ComposedUpdate addset_tag(const UpdateFn& f) {
  return to_composed(f, ClosureForm::AddThenSet);
}
inline ComposedUpdate addset_id() {
  return ComposedUpdate::identity(ClosureForm::AddThenSet);
}
inline ComposedUpdate addset_compose(const ComposedUpdate& o,
                                     const ComposedUpdate& i) {
  return compose(o, i);
}
}  // namespace detail

// Lazy-propagation segment tree over [1, s] with sparse node allocation.
template <typename Policy>
class ImplicitLazyTree {
 public:
  using Tag = typename Policy::Tag;

  explicit ImplicitLazyTree(i64 s) : s_(s) {
    assert(s >= 1);
    nodes_.push_back(Node{1, s_, -1, -1, Policy::zeros(s_), tag_id()});
  }

  i64 domain() const { return s_; }
  std::size_t node_count() const { return nodes_.size(); }

  void apply(i64 l, i64 r, const UpdateFn& f) { apply(l, r, make_tag(f)); }

  void apply(i64 l, i64 r, const Tag& t) {
    assert(1 <= l && l <= r && r <= s_);
    apply_rec(0, l, r, t);
  }

  i64 query(i64 l, i64 r) {
    assert(1 <= l && l <= r && r <= s_);
    return query_rec(0, l, r);
  }

  i64 query_all() { return query(1, s_); }

 private:
  struct Node {
    i64 lo, hi;
    int left, right;
    i64 val;
    Tag tag;
  };

  static Tag tag_id() {
    if constexpr (std::is_same_v<Tag, ClampShift>) {
      return ClampShift::identity();
    } else {
      return detail::addset_id();
    }
  }
  static Tag make_tag(const UpdateFn& f) {
    if constexpr (std::is_same_v<Tag, ClampShift>) {
      return ClampShift::from(f);
    } else {
      return detail::addset_tag(f);
    }
  }
  static Tag tag_compose(const Tag& o, const Tag& i) {
    if constexpr (std::is_same_v<Tag, ClampShift>) {
      return ClampShift::compose(o, i);
    } else {
      return detail::addset_compose(o, i);
    }
  }

  int child(int u, bool right_side) {
    int cur = right_side ? nodes_[u].right : nodes_[u].left;
    if (cur >= 0) return cur;
    i64 lo = nodes_[u].lo, hi = nodes_[u].hi;
    i64 mid = lo + (hi - lo) / 2;
    i64 clo = right_side ? mid + 1 : lo;
    i64 chi = right_side ? hi : mid;
    cur = static_cast<int>(nodes_.size());
    nodes_.push_back(
        Node{clo, chi, -1, -1, Policy::zeros(chi - clo + 1), tag_id()});
    (right_side ? nodes_[u].right : nodes_[u].left) = cur;
    return cur;
  }

  void apply_to_node(int u, const Tag& t) {
    Node& n = nodes_[u];
    n.val = Policy::apply(t, n.val, n.hi - n.lo + 1);
    n.tag = tag_compose(t, n.tag);
  }

  void push(int u) {
    int lc = child(u, false);
    int rc = child(u, true);
    Tag t = nodes_[u].tag;
    if constexpr (std::is_same_v<Tag, ClampShift>) {
      if (!t.is_identity()) {
        apply_to_node(lc, t);
        apply_to_node(rc, t);
      }
    } else {
      if (!t.is_identity()) {
        apply_to_node(lc, t);
        apply_to_node(rc, t);
      }
    }
    nodes_[u].tag = tag_id();
  }

  void apply_rec(int u, i64 l, i64 r, const Tag& t) {
    i64 lo = nodes_[u].lo, hi = nodes_[u].hi;
    if (l <= lo && hi <= r) {
      apply_to_node(u, t);
      return;
    }
    push(u);
    i64 mid = lo + (hi - lo) / 2;
    if (l <= mid) apply_rec(nodes_[u].left, l, r, t);
    if (r > mid) apply_rec(nodes_[u].right, l, r, t);
    nodes_[u].val =
        Policy::combine(nodes_[nodes_[u].left].val, nodes_[nodes_[u].right].val);
  }

  i64 query_rec(int u, i64 l, i64 r) {
    i64 lo = nodes_[u].lo, hi = nodes_[u].hi;
    if (l <= lo && hi <= r) return nodes_[u].val;
    push(u);
    i64 mid = lo + (hi - lo) / 2;
    if (r <= mid) return query_rec(nodes_[u].left, l, r);
    if (l > mid) return query_rec(nodes_[u].right, l, r);
    return Policy::combine(query_rec(nodes_[u].left, l, r),
                           query_rec(nodes_[u].right, l, r));
  }

  i64 s_;
  std::vector<Node> nodes_;
};

using MaxLazyTree = ImplicitLazyTree<MaxClampShiftPolicy>;
using SumAddSetTree = ImplicitLazyTree<SumAddSetPolicy>;

// Segment tree beats over [1, s], sparse. Supports add / min / max / set
// range updates with sum and max range queries. Untouched subtrees are
// uniform zero and absorb clamps without recursion.
class BeatsTree {
 public:
  explicit BeatsTree(i64 s) : s_(s) {
    nodes_.push_back(pristine(1, s));
  }

  i64 domain() const { return s_; }
  std::size_t node_count() const { return nodes_.size(); }
  i64 visits() const { return visits_; }

  void apply(i64 l, i64 r, const UpdateFn& f) {
    assert(1 <= l && l <= r && r <= s_);
    switch (f.kind) {
      case UpdateKind::Add: add_rec(0, l, r, f.c); break;
      case UpdateKind::Min: chmin_rec(0, l, r, f.c); break;
      case UpdateKind::Max: chmax_rec(0, l, r, f.c); break;
      case UpdateKind::Set:
        chmin_rec(0, l, r, f.c);
        chmax_rec(0, l, r, f.c);
        break;
    }
  }

  i64 query_sum(i64 l, i64 r) {
    assert(1 <= l && l <= r && r <= s_);
    return sum_rec(0, l, r);
  }
  i64 query_max(i64 l, i64 r) {
    assert(1 <= l && l <= r && r <= s_);
    return max_rec(0, l, r);
  }
  i64 query(i64 l, i64 r, QueryKind q) {
    return q == QueryKind::Sum ? query_sum(l, r) : query_max(l, r);
  }

 private:
  struct Node {
    i64 lo, hi;
    int left = -1, right = -1;
    i64 sum = 0;
    i64 max1 = 0, max2 = kNegInf;
    i64 cntmax = 0;
    i64 min1 = 0, min2 = kPosInf;
    i64 cntmin = 0;
    i64 add = 0;
  };

  static Node pristine(i64 lo, i64 hi) {
    Node n;
    n.lo = lo;
    n.hi = hi;
    i64 w = hi - lo + 1;
    n.cntmax = w;
    n.cntmin = w;
    if (w == 1) {
      n.max2 = kNegInf;
      n.min2 = kPosInf;
    }
    return n;
  }

  int child(int u, bool right_side) {
    int cur = right_side ? nodes_[u].right : nodes_[u].left;
    if (cur >= 0) return cur;
    i64 lo = nodes_[u].lo, hi = nodes_[u].hi;
    i64 mid = lo + (hi - lo) / 2;
    cur = static_cast<int>(nodes_.size());
    nodes_.push_back(right_side ? pristine(mid + 1, hi) : pristine(lo, mid));
    (right_side ? nodes_[u].right : nodes_[u].left) = cur;
    return cur;
  }

  void apply_add(int u, i64 v) {
    Node& n = nodes_[u];
    n.sum += i64(i128(v) * (n.hi - n.lo + 1));
    n.max1 += v;
    if (n.max2 != kNegInf) n.max2 += v;
    n.min1 += v;
    if (n.min2 != kPosInf) n.min2 += v;
    n.add += v;
  }

  // Requires v > max2 (strict second max) when v < max1.
  void apply_chmin(int u, i64 v) {
    Node& n = nodes_[u];
    if (v >= n.max1) return;
    assert(v > n.max2);
    n.sum += (v - n.max1) * n.cntmax;
    if (n.min1 == n.max1) n.min1 = v;
    if (n.min2 == n.max1) n.min2 = v;
    n.max1 = v;
  }

  void apply_chmax(int u, i64 v) {
    Node& n = nodes_[u];
    if (v <= n.min1) return;
    assert(v < n.min2);
    n.sum += (v - n.min1) * n.cntmin;
    if (n.max1 == n.min1) n.max1 = v;
    if (n.max2 == n.min1) n.max2 = v;
    n.min1 = v;
  }

  void push(int u) {
    int lc = child(u, false);
    int rc = child(u, true);
    Node& n = nodes_[u];
    if (n.add != 0) {
      apply_add(lc, n.add);
      apply_add(rc, n.add);
      n.add = 0;
    }
    apply_chmin(lc, n.max1);
    apply_chmin(rc, n.max1);
    apply_chmax(lc, n.min1);
    apply_chmax(rc, n.min1);
  }

  void pull(int u) {
    const Node& a = nodes_[nodes_[u].left];
    const Node& b = nodes_[nodes_[u].right];
    Node& n = nodes_[u];
    n.sum = a.sum + b.sum;
    if (a.max1 == b.max1) {
      n.max1 = a.max1;
      n.cntmax = a.cntmax + b.cntmax;
      n.max2 = std::max(a.max2, b.max2);
    } else if (a.max1 > b.max1) {
      n.max1 = a.max1;
      n.cntmax = a.cntmax;
      n.max2 = std::max(a.max2, b.max1);
    } else {
      n.max1 = b.max1;
      n.cntmax = b.cntmax;
      n.max2 = std::max(a.max1, b.max2);
    }
    if (a.min1 == b.min1) {
      n.min1 = a.min1;
      n.cntmin = a.cntmin + b.cntmin;
      n.min2 = std::min(a.min2, b.min2);
    } else if (a.min1 < b.min1) {
      n.min1 = a.min1;
      n.cntmin = a.cntmin;
      n.min2 = std::min(a.min2, b.min1);
    } else {
      n.min1 = b.min1;
      n.cntmin = b.cntmin;
      n.min2 = std::min(a.min1, b.min2);
    }
  }

  void add_rec(int u, i64 l, i64 r, i64 v) {
    ++visits_;
    i64 lo = nodes_[u].lo, hi = nodes_[u].hi;
    if (l <= lo && hi <= r) {
      apply_add(u, v);
      return;
    }
    push(u);
    i64 mid = lo + (hi - lo) / 2;
    if (l <= mid) add_rec(nodes_[u].left, l, r, v);
    if (r > mid) add_rec(nodes_[u].right, l, r, v);
    pull(u);
  }

  void chmin_rec(int u, i64 l, i64 r, i64 v) {
    ++visits_;
    i64 lo = nodes_[u].lo, hi = nodes_[u].hi;
    if (r < lo || hi < l || v >= nodes_[u].max1) return;
    if (l <= lo && hi <= r && v > nodes_[u].max2) {
      apply_chmin(u, v);
      return;
    }
    push(u);
    chmin_rec(nodes_[u].left, l, r, v);
    chmin_rec(nodes_[u].right, l, r, v);
    pull(u);
  }

  void chmax_rec(int u, i64 l, i64 r, i64 v) {
    ++visits_;
    i64 lo = nodes_[u].lo, hi = nodes_[u].hi;
    if (r < lo || hi < l || v <= nodes_[u].min1) return;
    if (l <= lo && hi <= r && v < nodes_[u].min2) {
      apply_chmax(u, v);
      return;
    }
    push(u);
    chmax_rec(nodes_[u].left, l, r, v);
    chmax_rec(nodes_[u].right, l, r, v);
    pull(u);
  }

  i64 sum_rec(int u, i64 l, i64 r) {
    ++visits_;
    i64 lo = nodes_[u].lo, hi = nodes_[u].hi;
    if (l <= lo && hi <= r) return nodes_[u].sum;
    push(u);
    i64 mid = lo + (hi - lo) / 2;
    i64 acc = 0;
    if (l <= mid) acc += sum_rec(nodes_[u].left, l, r);
    if (r > mid) acc += sum_rec(nodes_[u].right, l, r);
    return acc;
  }

  i64 max_rec(int u, i64 l, i64 r) {
    ++visits_;
    i64 lo = nodes_[u].lo, hi = nodes_[u].hi;
    if (l <= lo && hi <= r) return nodes_[u].max1;
    push(u);
    i64 mid = lo + (hi - lo) / 2;
    i64 acc = kNegInf;
    if (l <= mid) acc = std::max(acc, max_rec(nodes_[u].left, l, r));
    if (r > mid) acc = std::max(acc, max_rec(nodes_[u].right, l, r));
    return acc;
  }

  i64 s_;
  std::vector<Node> nodes_;
  i64 visits_ = 0;
};

// Running-maximum tracker for add-only update streams. Maintains, per cell,
// the current value C_x and its historic maximum; D_x = hist - cur stays
// non-negative throughout.
class HistoricTracker {
 public:
  explicit HistoricTracker(i64 s) : s_(s) {
    nodes_.push_back(Node{1, s_, -1, -1, 0, 0, 0, 0, false});
  }

  void add(i64 l, i64 r, i64 c) {
    assert(1 <= l && l <= r && r <= s_);
    apply_rec(0, l, r, c, c);
  }

  // max over the range of the historic maximum of C_x
  i64 query_max_attained(i64 l, i64 r) { return query_rec(0, l, r, true); }
  i64 query_current_max(i64 l, i64 r) { return query_rec(0, l, r, false); }

 private:
  struct Node {
    i64 lo, hi;
    int left, right;
    i64 cur;   // max of current values
    i64 hist;  // max of historic maxima
    i64 tadd;  // pending add
    i64 thist; // pending: hist = max(hist, cur + thist)
    bool has_tag;
  };

  int child(int u, bool right_side) {
    int cur = right_side ? nodes_[u].right : nodes_[u].left;
    if (cur >= 0) return cur;
    i64 lo = nodes_[u].lo, hi = nodes_[u].hi;
    i64 mid = lo + (hi - lo) / 2;
    i64 clo = right_side ? mid + 1 : lo;
    i64 chi = right_side ? hi : mid;
    cur = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{clo, chi, -1, -1, 0, 0, 0, 0, false});
    (right_side ? nodes_[u].right : nodes_[u].left) = cur;
    return cur;
  }

  void apply_tag(int u, i64 add, i64 hadd) {
    Node& n = nodes_[u];
    n.hist = std::max(n.hist, n.cur + hadd);
    n.cur += add;
    if (n.has_tag) {
      n.thist = std::max(n.thist, n.tadd + hadd);
      n.tadd += add;
    } else {
      n.tadd = add;
      n.thist = hadd;
      n.has_tag = true;
    }
  }

  void push(int u) {
    int lc = child(u, false);
    int rc = child(u, true);
    if (!nodes_[u].has_tag) return;
    i64 add = nodes_[u].tadd, hadd = nodes_[u].thist;
    apply_tag(lc, add, hadd);
    apply_tag(rc, add, hadd);
    nodes_[u].has_tag = false;
    nodes_[u].tadd = nodes_[u].thist = 0;
  }

  void apply_rec(int u, i64 l, i64 r, i64 add, i64 hadd) {
    i64 lo = nodes_[u].lo, hi = nodes_[u].hi;
    if (l <= lo && hi <= r) {
      apply_tag(u, add, hadd);
      return;
    }
    push(u);
    i64 mid = lo + (hi - lo) / 2;
    if (l <= mid) apply_rec(nodes_[u].left, l, r, add, hadd);
    if (r > mid) apply_rec(nodes_[u].right, l, r, add, hadd);
    nodes_[u].cur =
        std::max(nodes_[nodes_[u].left].cur, nodes_[nodes_[u].right].cur);
    nodes_[u].hist =
        std::max(nodes_[nodes_[u].left].hist, nodes_[nodes_[u].right].hist);
  }

  i64 query_rec(int u, i64 l, i64 r, bool hist) {
    i64 lo = nodes_[u].lo, hi = nodes_[u].hi;
    if (l <= lo && hi <= r) return hist ? nodes_[u].hist : nodes_[u].cur;
    push(u);
    i64 mid = lo + (hi - lo) / 2;
    i64 acc = kNegInf;
    if (l <= mid) acc = std::max(acc, query_rec(nodes_[u].left, l, r, hist));
    if (r > mid) acc = std::max(acc, query_rec(nodes_[u].right, l, r, hist));
    return acc;
  }

  i64 s_;
  std::vector<Node> nodes_;
};

// Lazy tree over [1, n] whose leaf values come from an external range-max
// oracle over the initial array. No preprocessing: nodes call the oracle
// when first materialised. Supports + and max updates, max queries.
class OracleBackedTree {
 public:
  using RangeMaxOracle = std::function<i64(i64, i64)>;

  OracleBackedTree(i64 n, RangeMaxOracle oracle, i64* tracked_bytes = nullptr)
      : n_(n), oracle_(std::move(oracle)), tracked_(tracked_bytes) {
    nodes_.push_back(Node{1, n_, -1, -1, oracle_(1, n_),
                          ComposedUpdate::identity(ClosureForm::MaxShift)});
    track(1);
  }

  i64 oracle_calls() const { return oracle_calls_; }

  void add(i64 l, i64 r, i64 c) {
    apply(l, r, ComposedUpdate{ClosureForm::MaxShift, c, kNegInf, false});
  }
  void chmax(i64 l, i64 r, i64 c) {
    apply(l, r, ComposedUpdate{ClosureForm::MaxShift, 0, c, false});
  }
  void apply_fn(i64 l, i64 r, const UpdateFn& f) {
    if (f.kind == UpdateKind::Add) {
      add(l, r, f.c);
    } else if (f.kind == UpdateKind::Max) {
      chmax(l, r, f.c);
    } else {
      throw DistributivityViolation(
          "oracle-backed tree supports add and max updates only");
    }
  }
  void apply(i64 l, i64 r, const ComposedUpdate& f) {
    assert(f.form == ClosureForm::MaxShift);
    assert(1 <= l && l <= r && r <= n_);
    apply_rec(0, l, r, f);
  }

  i64 query_max(i64 l, i64 r) {
    assert(1 <= l && l <= r && r <= n_);
    return query_rec(0, l, r);
  }

 private:
  struct Node {
    i64 lo, hi;
    int left, right;
    i64 val;  // current max over the node range, updates applied
    ComposedUpdate tag;
  };

  void track(i64 nodes) {
    if (tracked_) *tracked_ += nodes * static_cast<i64>(sizeof(Node));
  }

  int child(int u, bool right_side) {
    int cur = right_side ? nodes_[u].right : nodes_[u].left;
    if (cur >= 0) return cur;
    i64 lo = nodes_[u].lo, hi = nodes_[u].hi;
    i64 mid = lo + (hi - lo) / 2;
    i64 clo = right_side ? mid + 1 : lo;
    i64 chi = right_side ? hi : mid;
    ++oracle_calls_;
    cur = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{clo, chi, -1, -1, oracle_(clo, chi),
                          ComposedUpdate::identity(ClosureForm::MaxShift)});
    track(1);
    (right_side ? nodes_[u].right : nodes_[u].left) = cur;
    return cur;
  }

  void apply_to_node(int u, const ComposedUpdate& f) {
    nodes_[u].val = f.apply(nodes_[u].val);
    nodes_[u].tag = compose(f, nodes_[u].tag);
  }

  void push(int u) {
    int lc = child(u, false);
    int rc = child(u, true);
    if (!nodes_[u].tag.is_identity()) {
      apply_to_node(lc, nodes_[u].tag);
      apply_to_node(rc, nodes_[u].tag);
      nodes_[u].tag = ComposedUpdate::identity(ClosureForm::MaxShift);
    }
  }

  void apply_rec(int u, i64 l, i64 r, const ComposedUpdate& f) {
    i64 lo = nodes_[u].lo, hi = nodes_[u].hi;
    if (l <= lo && hi <= r) {
      apply_to_node(u, f);
      return;
    }
    push(u);
    i64 mid = lo + (hi - lo) / 2;
    if (l <= mid) apply_rec(nodes_[u].left, l, r, f);
    if (r > mid) apply_rec(nodes_[u].right, l, r, f);
    nodes_[u].val =
        std::max(nodes_[nodes_[u].left].val, nodes_[nodes_[u].right].val);
  }

  i64 query_rec(int u, i64 l, i64 r) {
    i64 lo = nodes_[u].lo, hi = nodes_[u].hi;
    if (l <= lo && hi <= r) return nodes_[u].val;
    push(u);
    i64 mid = lo + (hi - lo) / 2;
    i64 acc = kNegInf;
    if (l <= mid) acc = std::max(acc, query_rec(nodes_[u].left, l, r));
    if (r > mid) acc = std::max(acc, query_rec(nodes_[u].right, l, r));
    return acc;
  }

  i64 n_;
  RangeMaxOracle oracle_;
  i64* tracked_;
  std::vector<Node> nodes_;
  i64 oracle_calls_ = 0;
};

// Uniform facade over the 1D engines, routed by (q, U). Copyable, so callers
// that compress coordinates lazily can clone per interval.
class Engine1D {
 public:
  Engine1D(QueryKind q, const std::vector<UpdateKind>& allowed, i64 s)
      : q_(q) {
    if (q == QueryKind::Max) {
      max_tree_ = std::make_shared<MaxLazyTree>(s);
    } else if (SumAddSetPolicy::supports(allowed)) {
      sum_tree_ = std::make_shared<SumAddSetTree>(s);
    } else {
      beats_ = std::make_shared<BeatsTree>(s);
    }
  }

  void apply(i64 l, i64 r, const UpdateFn& f) {
    detach();
    if (max_tree_) {
      max_tree_->apply(l, r, f);
    } else if (sum_tree_) {
      sum_tree_->apply(l, r, f);
    } else {
      beats_->apply(l, r, f);
    }
  }

  i64 query(i64 l, i64 r) {
    detach();
    if (max_tree_) return max_tree_->query(l, r);
    if (sum_tree_) return sum_tree_->query(l, r);
    return beats_->query(l, r, q_);
  }

 private:
  // Copies share state until one of them is written or queried (queries
  // mutate via lazy pushes). Cheap clone for per-interval compression.
  void detach() {
    if (max_tree_ && max_tree_.use_count() > 1)
      max_tree_ = std::make_shared<MaxLazyTree>(*max_tree_);
    if (sum_tree_ && sum_tree_.use_count() > 1)
      sum_tree_ = std::make_shared<SumAddSetTree>(*sum_tree_);
    if (beats_ && beats_.use_count() > 1)
      beats_ = std::make_shared<BeatsTree>(*beats_);
  }

  QueryKind q_;
  std::shared_ptr<MaxLazyTree> max_tree_;
  std::shared_ptr<SumAddSetTree> sum_tree_;
  std::shared_ptr<BeatsTree> beats_;
};

// The strict lazy-propagation configuration table: throws rather than
// routing to beats.
inline void check_lazy_supported(QueryKind q,
                                 const std::vector<UpdateKind>& allowed) {
  if (q == QueryKind::Max) return;
  if (!SumAddSetPolicy::supports(allowed)) {
    throw DistributivityViolation(
        "sum queries with clamp updates are outside the lazy table");
  }
}

}  // namespace gridrange::seg1d
