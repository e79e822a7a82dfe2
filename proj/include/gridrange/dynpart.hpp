#pragma once

// Fully-online dynamic level partition of [1,s]^d into trellised regions.
// Depth-i nodes are i-slabs; leaves (t-regions) are only crossed by piles.
// Columns cap their 1-boundary counts and split when full; balancing boxes
// cap node fan-out in the remaining dimensions.
//
// Cut convention: a cut at coordinate x separates [.., x] from [x+1, ..];
// a box [l, r] contributes cuts l-1 and r.

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "gridrange/core.hpp"

namespace gridrange::dynpart {

enum class BoxRelation { Disjoint, Covers, Pile, NotAPile };

struct Classification {
  BoxRelation rel;
  int pile_dim;  // 1-based dimension of partial coverage, -1 otherwise
};

inline Classification classify(const OrthoRange& b, const OrthoRange& leaf) {
  int d = leaf.dim();
  for (int i = 0; i < d; ++i)
    if (b.hi(i) < leaf.lo(i) || b.lo(i) > leaf.hi(i))
      return {BoxRelation::Disjoint, -1};
  int partial = -1, count = 0;
  for (int i = 0; i < d; ++i) {
    if (!(b.lo(i) <= leaf.lo(i) && leaf.hi(i) <= b.hi(i))) {
      ++count;
      partial = i + 1;
    }
  }
  if (count == 0) return {BoxRelation::Covers, -1};
  if (count == 1) return {BoxRelation::Pile, partial};
  return {BoxRelation::NotAPile, -1};
}

// Multiset of coordinates with rank and order-statistic queries.
class OrderStat {
 public:
  void insert(i64 x) {
    v_.insert(std::lower_bound(v_.begin(), v_.end(), x), x);
  }
  i64 size() const { return static_cast<i64>(v_.size()); }
  i64 rank_le(i64 x) const {
    return std::upper_bound(v_.begin(), v_.end(), x) - v_.begin();
  }
  i64 select(i64 k) const { return v_[static_cast<std::size_t>(k)]; }
  const std::vector<i64>& values() const { return v_; }

 private:
  std::vector<i64> v_;
};

struct BoxRecord {
  OrthoRange range;
  bool balancing = false;
};

struct LeafRecord {
  OrthoRange box;
  std::vector<int> partial;  // box ids, insertion order
  bool live = true;
};

struct SlabRecord {
  std::vector<std::array<i64, 2>> prefix;  // intervals of dims 1..d-1
  std::vector<i64> leaf_ids;               // ordered by dim-d coordinate
  bool live = true;
};

struct InsertResult {
  int box_id = -1;
  std::vector<i64> destroyed_leaves;
  std::vector<i64> created_leaves;
  std::vector<i64> destroyed_slabs;
  std::vector<i64> created_slabs;
};

struct BalancingEntry {
  int dim;  // 1-based, >= 2
  i64 x;
  int box_id;
};

class LevelPartitionTree {
 public:
  LevelPartitionTree(int d, i64 s, i64 op_budget)
      : d_(d), s_(s), xi_(static_cast<std::size_t>(d)) {
    w_ = 1;
    while (w_ * w_ < std::max<i64>(op_budget, 1)) ++w_;
    root_ = std::make_unique<Node>();
    root_->depth = 0;
    std::vector<std::array<i64, 2>> prefix;
    InsertResult sink;
    auto col = build_slab(1, {{1, s_}}, {}, &sink);
    attach_column(std::move(col));
    root_->kids.push_back(std::move(root_->kids.back()));  // no-op keep order
    root_->kids.pop_back();
  }

  int dims() const { return d_; }
  i64 side() const { return s_; }
  i64 sqrt_budget() const { return w_; }

  const BoxRecord& box(int id) const {
    return boxes_[static_cast<std::size_t>(id)];
  }
  int box_count() const { return static_cast<int>(boxes_.size()); }

  const LeafRecord& leaf(i64 id) const {
    return leaves_.at(static_cast<std::size_t>(id));
  }
  const SlabRecord& slab(i64 id) const {
    return slabs_.at(static_cast<std::size_t>(id));
  }
  i64 leaf_count() const { return static_cast<i64>(leaves_.size()); }

  std::vector<i64> live_leaves() const {
    std::vector<i64> out;
    for (i64 i = 0; i < static_cast<i64>(leaves_.size()); ++i)
      if (leaves_[static_cast<std::size_t>(i)].live) out.push_back(i);
    return out;
  }
  std::vector<i64> live_slabs() const {
    std::vector<i64> out;
    for (i64 i = 0; i < static_cast<i64>(slabs_.size()); ++i)
      if (slabs_[static_cast<std::size_t>(i)].live) out.push_back(i);
    return out;
  }

  // Inserts a real (update) box, restoring every structural invariant.
  InsertResult insert_box(const OrthoRange& b) {
    assert(b.dim() == d_ && b.valid());
    InsertResult res;
    int id = static_cast<int>(boxes_.size());
    boxes_.push_back({b, false});
    res.box_id = id;
    for (int i = 0; i < d_; ++i) {
      xi_[static_cast<std::size_t>(i)].insert(b.lo(i));
      xi_[static_cast<std::size_t>(i)].insert(b.hi(i));
      cut_index_[i].emplace(b.lo(i) - 1, id);
      cut_index_[i].emplace(b.hi(i), id);
    }

    // 1. register 1-boundaries with their columns; split overfull columns
    for (i64 coord : {b.lo(0), b.hi(0)}) {
      Node* col = column_containing(coord);
      if (col) col->boundary_boxes.push_back(id);
    }
    for (i64 cut : {b.lo(0) - 1, b.hi(0)}) {
      Node* col = column_with_inside_cut(cut);
      if (!col) continue;
      if (inside_cut_count(col) >= 2 * w_) split_column(col, &res);
    }

    // 2. cut slabs crossed by a boundary of b at b's deeper coordinates
    apply_box_cuts(id, &res);

    // 3. append b to the partial lists of pre-existing leaves it piles on
    append_to_partial_lists(id, &res);

    // 4. restore the balancing window invariant
    for (int dim = 2; dim <= d_; ++dim) {
      for (i64 coord : {b.lo(dim - 1), b.hi(dim - 1)}) {
        rebalance_around(dim, coord, &res);
      }
    }
    return res;
  }

  // Algorithm-1 style partition of an i-slab against the current box set.
  // Returns the dim-(i+1) cut coordinates that the slab's children use.
  std::vector<i64> partition_slab_cuts(
      int depth, const std::vector<std::array<i64, 2>>& prefix) const {
    std::vector<int> vp = boundary_boxes_for(depth, prefix, all_box_ids());
    std::set<i64> cuts;
    for (int idb : vp) {
      const OrthoRange& r = boxes_[static_cast<std::size_t>(idb)].range;
      for (i64 c : {r.lo(depth) - 1, r.hi(depth)})
        if (c >= 1 && c < s_) cuts.insert(c);
    }
    return {cuts.begin(), cuts.end()};
  }

  static Classification classify_box(const OrthoRange& b,
                                     const OrthoRange& leaf) {
    return classify(b, leaf);
  }

  // Leaf id containing a point.
  i64 locate(const std::vector<i64>& p) const {
    const Node* n = root_.get();
    while (n->depth < d_) {
      const Node* next = nullptr;
      for (auto& k : n->kids) {
        if (p[static_cast<std::size_t>(n->depth)] >= k->iv[0] &&
            p[static_cast<std::size_t>(n->depth)] <= k->iv[1]) {
          next = k.get();
          break;
        }
      }
      if (!next) return -1;
      n = next;
    }
    return n->leaf_id;
  }

  // All leaves met by the axis-parallel line through `fixed` (coordinates of
  // every dimension except `axis`, 1-based axis), ordered along the axis.
  std::vector<i64> stab_line(int axis, const std::vector<i64>& fixed) const {
    std::vector<i64> out;
    stab_rec(root_.get(), axis, fixed, out);
    return out;
  }

  // One node per line: depth, intervals, child count.
  std::string dump() const {
    std::ostringstream os;
    std::vector<std::array<i64, 2>> prefix;
    dump_rec(root_.get(), prefix, os);
    return os.str();
  }

  struct ColumnView {
    std::array<i64, 2> interval;
    i64 inside_cuts;  // real-box 1-cut positions strictly inside
    std::vector<BalancingEntry> balancing;
  };
  std::vector<ColumnView> columns() const {
    std::vector<ColumnView> out;
    for (auto& k : root_->kids) {
      ColumnView cv;
      cv.interval = k->iv;
      cv.inside_cuts = inside_cut_count(k.get());
      for (auto& [dim, coords] : k->balancing_coords)
        for (auto& [x, bid] : coords) cv.balancing.push_back({dim, x, bid});
      out.push_back(std::move(cv));
    }
    return out;
  }

  // Raw i-boundary coordinates of the real boxes, sorted (1-based dim).
  const std::vector<i64>& boundary_coords(int dim) const {
    return xi_[static_cast<std::size_t>(dim - 1)].values();
  }

 private:
  struct Node {
    int depth = 0;
    std::array<i64, 2> iv{1, 1};  // interval in dimension `depth`
    std::vector<std::unique_ptr<Node>> kids;
    i64 leaf_id = -1;
    i64 slab_id = -1;
    // column payload (depth == 1)
    std::vector<int> boundary_boxes;                 // real box ids
    std::map<int, std::map<i64, int>> balancing_coords;  // dim -> x -> box id
  };

  std::vector<int> all_box_ids() const {
    std::vector<int> ids(boxes_.size());
    for (std::size_t i = 0; i < boxes_.size(); ++i)
      ids[i] = static_cast<int>(i);
    return ids;
  }

  // Boxes from `candidates` with a j-boundary (j <= depth) intersecting the
  // slab spanned by `prefix`.
  std::vector<int> boundary_boxes_for(int depth,
                                      const std::vector<std::array<i64, 2>>& prefix,
                                      const std::vector<int>& candidates) const {
    std::vector<int> out;
    for (int idb : candidates) {
      const OrthoRange& r = boxes_[static_cast<std::size_t>(idb)].range;
      bool hit = false;
      for (int j = 0; j < depth && !hit; ++j) {
        for (i64 coord : {r.lo(j), r.hi(j)}) {
          if (coord < prefix[static_cast<std::size_t>(j)][0] ||
              coord > prefix[static_cast<std::size_t>(j)][1])
            continue;
          bool ok = true;
          for (int k = 0; k < depth; ++k) {
            if (k == j) continue;
            if (r.hi(k) < prefix[static_cast<std::size_t>(k)][0] ||
                r.lo(k) > prefix[static_cast<std::size_t>(k)][1]) {
              ok = false;
              break;
            }
          }
          if (ok) {
            hit = true;
            break;
          }
        }
      }
      if (hit) out.push_back(idb);
    }
    return out;
  }

  // ---- construction --------------------------------------------------

  // Builds the subtree of a node at `depth` spanning `prefix` (intervals of
  // dims 1..depth). `extra_candidates` supplements the cut/pile search for
  // incremental rebuilds; empty means "scan everything".
  std::unique_ptr<Node> build_slab(int depth,
                                   std::vector<std::array<i64, 2>> prefix,
                                   const std::vector<int>& cut_candidates,
                                   InsertResult* res) {
    auto node = std::make_unique<Node>();
    node->depth = depth;
    node->iv = prefix.back();
    if (depth == d_) {
      node->leaf_id = new_leaf(prefix, res);
      return node;
    }
    const std::vector<int>& cands =
        cut_candidates.empty() ? all_box_ids() : cut_candidates;
    std::vector<int> vp = boundary_boxes_for(depth, prefix, cands);
    std::set<i64> cuts;
    for (int idb : vp) {
      const OrthoRange& r = boxes_[static_cast<std::size_t>(idb)].range;
      for (i64 c : {r.lo(depth) - 1, r.hi(depth)})
        if (c >= 1 && c < s_) cuts.insert(c);
    }
    i64 lo = 1;
    auto emit = [&](i64 a, i64 b) {
      prefix.push_back({a, b});
      node->kids.push_back(build_slab(depth + 1, prefix, cut_candidates, res));
      prefix.pop_back();
    };
    for (i64 c : cuts) {
      emit(lo, c);
      lo = c + 1;
    }
    emit(lo, s_);
    if (depth == d_ - 1) node->slab_id = new_slab(prefix, node.get(), res);
    return node;
  }

  i64 new_leaf(const std::vector<std::array<i64, 2>>& prefix,
               InsertResult* res) {
    i64 id = static_cast<i64>(leaves_.size());
    LeafRecord rec;
    rec.box = OrthoRange(prefix);
    rec.partial = compute_partial_list(rec.box);
    leaves_.push_back(std::move(rec));
    if (res) res->created_leaves.push_back(id);
    return id;
  }

  i64 new_slab(const std::vector<std::array<i64, 2>>& prefix, Node* node,
               InsertResult* res) {
    SlabRecord rec;
    rec.prefix.assign(prefix.begin(), prefix.end() - (d_ >= 1 ? 1 : 0));
    rec.prefix = std::vector<std::array<i64, 2>>(prefix.begin(),
                                                 prefix.begin() + (d_ - 1));
    for (auto& k : node->kids) rec.leaf_ids.push_back(k->leaf_id);
    i64 id = static_cast<i64>(slabs_.size());
    slabs_.push_back(std::move(rec));
    if (res) res->created_slabs.push_back(id);
    return id;
  }

  // Geometric truth for a leaf's partial-cover list: candidates are boxes
  // with a cut strictly inside the leaf in some dimension.
  std::vector<int> compute_partial_list(const OrthoRange& leaf) const {
    std::set<int> cand;
    for (int dim = 0; dim < d_; ++dim) {
      auto it = cut_index_.find(dim);
      if (it == cut_index_.end()) continue;
      auto lo = it->second.lower_bound(leaf.lo(dim));
      auto hi = it->second.lower_bound(leaf.hi(dim));
      for (auto p = lo; p != hi; ++p) cand.insert(p->second);
    }
    std::vector<int> sorted(cand.begin(), cand.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> out;
    for (int idb : sorted) {
      auto c = classify(boxes_[static_cast<std::size_t>(idb)].range, leaf);
      if (c.rel == BoxRelation::Pile) out.push_back(idb);
      assert(c.rel != BoxRelation::NotAPile);
    }
    return out;
  }

  void retire_subtree(Node* n, InsertResult* res) {
    if (n->leaf_id >= 0) {
      leaves_[static_cast<std::size_t>(n->leaf_id)].live = false;
      if (res) res->destroyed_leaves.push_back(n->leaf_id);
    }
    if (n->slab_id >= 0) {
      slabs_[static_cast<std::size_t>(n->slab_id)].live = false;
      if (res) res->destroyed_slabs.push_back(n->slab_id);
    }
    for (auto& k : n->kids) retire_subtree(k.get(), res);
  }

  // ---- columns --------------------------------------------------------

  Node* column_containing(i64 coord) const {
    for (auto& k : root_->kids)
      if (coord >= k->iv[0] && coord <= k->iv[1]) return k.get();
    return nullptr;
  }
  Node* column_with_inside_cut(i64 cut) const {
    for (auto& k : root_->kids)
      if (cut >= k->iv[0] && cut < k->iv[1]) return k.get();
    return nullptr;
  }

  i64 inside_cut_count(const Node* col) const {
    i64 total = 0;
    for (int idb : col->boundary_boxes) {
      const OrthoRange& r = boxes_[static_cast<std::size_t>(idb)].range;
      for (i64 c : {r.lo(0) - 1, r.hi(0)})
        if (c >= col->iv[0] && c < col->iv[1]) ++total;
    }
    return total;
  }

  void attach_column(std::unique_ptr<Node> col) {
    auto pos = std::lower_bound(
        root_->kids.begin(), root_->kids.end(), col->iv[0],
        [](const std::unique_ptr<Node>& a, i64 lo) { return a->iv[0] < lo; });
    root_->kids.insert(pos, std::move(col));
  }

  void split_column(Node* col, InsertResult* res) {
    // median inside cut position
    std::vector<i64> inside;
    for (int idb : col->boundary_boxes) {
      const OrthoRange& r = boxes_[static_cast<std::size_t>(idb)].range;
      for (i64 c : {r.lo(0) - 1, r.hi(0)})
        if (c >= col->iv[0] && c < col->iv[1]) inside.push_back(c);
    }
    if (inside.empty()) return;
    std::sort(inside.begin(), inside.end());
    i64 cut = inside[inside.size() / 2];
    if (cut < col->iv[0] || cut >= col->iv[1]) return;
    rebuild_column_pair(col, cut, res);
  }

  void rebuild_column_pair(Node* col, i64 cut, InsertResult* res) {
    std::array<i64, 2> old_iv = col->iv;
    std::vector<int> old_boundary = col->boundary_boxes;
    auto old_balancing = col->balancing_coords;

    retire_subtree(col, res);
    // detach
    for (std::size_t i = 0; i < root_->kids.size(); ++i) {
      if (root_->kids[i].get() == col) {
        root_->kids.erase(root_->kids.begin() +
                          static_cast<std::ptrdiff_t>(i));
        break;
      }
    }
    for (auto iv : {std::array<i64, 2>{old_iv[0], cut},
                    std::array<i64, 2>{cut + 1, old_iv[1]}}) {
      std::vector<int> cands;
      for (int idb : old_boundary) {
        const OrthoRange& r = boxes_[static_cast<std::size_t>(idb)].range;
        if (r.lo(0) >= iv[0] && r.lo(0) <= iv[1]) cands.push_back(idb);
        else if (r.hi(0) >= iv[0] && r.hi(0) <= iv[1]) cands.push_back(idb);
      }
      std::vector<int> bal_ids;
      for (auto& [dim, coords] : old_balancing) {
        for (auto& [x, bid] : coords) {
          const OrthoRange& r = boxes_[static_cast<std::size_t>(bid)].range;
          if (r.lo(0) >= iv[0] && r.lo(0) <= iv[1]) bal_ids.push_back(bid);
        }
      }
      std::vector<int> all_cands = cands;
      all_cands.insert(all_cands.end(), bal_ids.begin(), bal_ids.end());
      auto fresh = build_slab(1, {iv}, all_cands, res);
      fresh->boundary_boxes = std::move(cands);
      for (int bid : bal_ids) {
        const OrthoRange& r = boxes_[static_cast<std::size_t>(bid)].range;
        for (auto& [dim, coords] : old_balancing) {
          auto it = std::find_if(coords.begin(), coords.end(),
                                 [&](auto& kv) { return kv.second == bid; });
          if (it != coords.end())
            fresh->balancing_coords[dim][it->first] = bid;
          (void)r;
        }
      }
      Node* raw = fresh.get();
      attach_column(std::move(fresh));
      ensure_column_balanced(raw, res);
    }
  }

  // ---- boundary-driven slab cuts (insertion step 2) --------------------

  void apply_box_cuts(int box_id, InsertResult* res) {
    const OrthoRange b = boxes_[static_cast<std::size_t>(box_id)].range;
    for (int depth = 1; depth < d_; ++depth) {
      // slabs at `depth` with a j-boundary of b intersecting them (j <= depth)
      std::vector<Node*> slabs;
      std::vector<std::vector<std::array<i64, 2>>> prefixes;
      collect_boundary_slabs(root_.get(), b, depth, {}, slabs, prefixes);
      for (std::size_t i = 0; i < slabs.size(); ++i) {
        for (i64 cut : {b.lo(depth) - 1, b.hi(depth)}) {
          if (cut < 1 || cut >= s_) continue;
          split_child_at(slabs[i], prefixes[i], cut, box_id, res);
        }
      }
    }
  }

  void collect_boundary_slabs(Node* n, const OrthoRange& b, int depth,
                              std::vector<std::array<i64, 2>> prefix,
                              std::vector<Node*>& out,
                              std::vector<std::vector<std::array<i64, 2>>>& pfx) {
    if (n->depth == depth) {
      if (!boundary_boxes_for(depth, prefix, {-1}).empty()) {
      }
      // inline boundary test for the single box
      bool hit = false;
      for (int j = 0; j < depth && !hit; ++j) {
        for (i64 coord : {b.lo(j), b.hi(j)}) {
          if (coord < prefix[static_cast<std::size_t>(j)][0] ||
              coord > prefix[static_cast<std::size_t>(j)][1])
            continue;
          bool ok = true;
          for (int k = 0; k < depth; ++k) {
            if (k == j) continue;
            if (b.hi(k) < prefix[static_cast<std::size_t>(k)][0] ||
                b.lo(k) > prefix[static_cast<std::size_t>(k)][1]) {
              ok = false;
              break;
            }
          }
          if (ok) {
            hit = true;
            break;
          }
        }
      }
      if (hit) {
        out.push_back(n);
        pfx.push_back(prefix);
      }
      return;
    }
    for (auto& k : n->kids) {
      // prune: the box's closure must intersect the child's interval
      if (b.hi(n->depth) + 1 < k->iv[0] || b.lo(n->depth) - 1 > k->iv[1])
        continue;
      prefix.push_back(k->iv);
      collect_boundary_slabs(k.get(), b, depth, prefix, out, pfx);
      prefix.pop_back();
    }
  }

  void split_child_at(Node* slab, const std::vector<std::array<i64, 2>>& prefix,
                      i64 cut, int box_id, InsertResult* res) {
    for (std::size_t i = 0; i < slab->kids.size(); ++i) {
      Node* child = slab->kids[static_cast<std::size_t>(i)].get();
      if (cut < child->iv[0] || cut >= child->iv[1]) continue;
      std::array<i64, 2> old_iv = child->iv;
      // candidate cut boxes for the rebuild: everything currently relevant
      // below plus the new box; deeper cuts recompute via the cut index
      retire_subtree(child, res);
      slab->kids.erase(slab->kids.begin() + static_cast<std::ptrdiff_t>(i));
      Node* column = prefix.empty() ? nullptr : column_of(prefix[0]);
      std::vector<int> cands;
      if (column) {
        cands = column->boundary_boxes;
        for (auto& [dim, coords] : column->balancing_coords)
          for (auto& [x, bid] : coords) cands.push_back(bid);
      }
      cands.push_back(box_id);
      auto pre = prefix;
      pre.push_back({old_iv[0], cut});
      auto left = build_slab(slab->depth + 1, pre, cands, res);
      pre.back() = {cut + 1, old_iv[1]};
      auto right = build_slab(slab->depth + 1, pre, cands, res);
      slab->kids.insert(slab->kids.begin() + static_cast<std::ptrdiff_t>(i),
                        std::move(left));
      slab->kids.insert(slab->kids.begin() + static_cast<std::ptrdiff_t>(i + 1),
                        std::move(right));
      // the surrounding (d-1)-slab changed shape: refresh its record
      refresh_slab_record(slab, prefix, res);
      return;
    }
  }

  Node* column_of(const std::array<i64, 2>& iv) const {
    for (auto& k : root_->kids)
      if (k->iv[0] <= iv[0] && iv[1] <= k->iv[1]) return k.get();
    return nullptr;
  }

  void refresh_slab_record(Node* slab,
                           const std::vector<std::array<i64, 2>>& prefix,
                           InsertResult* res) {
    if (slab->depth != d_ - 1) return;
    if (slab->slab_id >= 0) {
      slabs_[static_cast<std::size_t>(slab->slab_id)].live = false;
      if (res) res->destroyed_slabs.push_back(slab->slab_id);
    }
    auto pfx = prefix;
    pfx.push_back(slab->iv);
    slab->slab_id = new_slab(pfx, slab, res);
  }

  // ---- partial list upkeep ---------------------------------------------

  void append_to_partial_lists(int box_id, InsertResult* res) {
    const OrthoRange& b = boxes_[static_cast<std::size_t>(box_id)].range;
    std::set<i64> fresh(res->created_leaves.begin(),
                        res->created_leaves.end());
    std::vector<i64> hit;
    partial_leaves_rec(root_.get(), b, hit);
    for (i64 id : hit) {
      if (fresh.count(id)) continue;  // rebuilt lists already include it
      leaves_[static_cast<std::size_t>(id)].partial.push_back(box_id);
    }
  }

  // leaves partially covered by b: descend, pruning subtrees b covers fully
  // or misses entirely in the dimensions fixed so far
  void partial_leaves_rec(const Node* n, const OrthoRange& b,
                          std::vector<i64>& out) const {
    if (n->leaf_id >= 0) {
      auto c = classify(b, leaves_[static_cast<std::size_t>(n->leaf_id)].box);
      if (c.rel == BoxRelation::Pile) out.push_back(n->leaf_id);
      assert(c.rel != BoxRelation::NotAPile);
      return;
    }
    for (auto& k : n->kids) {
      if (b.hi(n->depth) < k->iv[0] || b.lo(n->depth) > k->iv[1]) continue;
      partial_leaves_rec(k.get(), b, out);
    }
  }

  // ---- balancing --------------------------------------------------------

  void rebalance_around(int dim, i64 coord, InsertResult* res) {
    for (auto& k : root_->kids) fix_gap(k.get(), dim, coord, res);
  }

  void ensure_column_balanced(Node* col, InsertResult* res) {
    for (int dim = 2; dim <= d_; ++dim) {
      const auto& xs = xi_[static_cast<std::size_t>(dim - 1)].values();
      if (xs.empty()) continue;
      // scan all gaps between consecutive balancing coords
      bool changed = true;
      while (changed) {
        changed = false;
        std::vector<i64> bal;
        for (auto& [x, bid] : col->balancing_coords[dim]) bal.push_back(x);
        i64 prev = kNegInf;
        for (std::size_t i = 0; i <= bal.size(); ++i) {
          i64 next = i < bal.size() ? bal[i] : kPosInf;
          if (fix_one_gap(col, dim, prev, next, res)) {
            changed = true;
            break;
          }
          prev = next;
        }
      }
    }
  }

  void fix_gap(Node* col, int dim, i64 coord, InsertResult* res) {
    auto& coords = col->balancing_coords[dim];
    i64 lo = kNegInf, hi = kPosInf;
    auto it = coords.upper_bound(coord);
    if (it != coords.end()) hi = it->first;
    if (it != coords.begin()) lo = std::prev(it)->first;
    while (fix_one_gap(col, dim, lo, hi, res)) {
      // re-derive the sub-gap around `coord` after each fix
      auto& cs = col->balancing_coords[dim];
      auto jt = cs.upper_bound(coord);
      hi = jt != cs.end() ? jt->first : kPosInf;
      lo = jt != cs.begin() ? std::prev(jt)->first : kNegInf;
    }
  }

  // A gap (lo, hi) between consecutive balancing coordinates is overfull
  // when >= w_ raw boundary coords lie strictly inside; fix by inserting a
  // balancing box at the gap's median coordinate. Returns true if it acted.
  bool fix_one_gap(Node* col, int dim, i64 lo, i64 hi, InsertResult* res) {
    const OrderStat& xs = xi_[static_cast<std::size_t>(dim - 1)];
    i64 a = lo <= kNegInf ? 0 : xs.rank_le(lo);
    i64 b = hi >= kPosInf ? xs.size() : xs.rank_le(hi - 1);
    if (b - a < w_) return false;
    i64 x = xs.select(a + (b - a) / 2);
    insert_balancing_box(col, dim, x, res);
    return true;
  }

  void insert_balancing_box(Node* col, int dim, i64 x, InsertResult* res) {
    // dim-1 footprint: a single cell inside the column; the balanced
    // dimension pins [x, x]; every other dimension spans the full grid so
    // the cut propagates to the whole column subtree.
    i64 y = col->iv[0] + (col->iv[1] - col->iv[0]) / 2;
    std::vector<std::array<i64, 2>> dims(static_cast<std::size_t>(d_),
                                         {1, s_});
    dims[0] = {y, y};
    dims[static_cast<std::size_t>(dim - 1)] = {x, x};
    OrthoRange b{dims};
    int id = static_cast<int>(boxes_.size());
    boxes_.push_back({b, true});
    for (int i = 0; i < d_; ++i) {
      cut_index_[i].emplace(b.lo(i) - 1, id);
      cut_index_[i].emplace(b.hi(i), id);
    }
    col->balancing_coords[dim][x] = id;
    apply_box_cuts(id, res);
    append_to_partial_lists(id, res);
  }

  // ---- traversal helpers -------------------------------------------------

  void stab_rec(const Node* n, int axis, const std::vector<i64>& fixed,
                std::vector<i64>& out) const {
    if (n->leaf_id >= 0) {
      out.push_back(n->leaf_id);
      return;
    }
    int dim = n->depth;  // children partition dimension dim+1 (0-based: dim)
    for (auto& k : n->kids) {
      if (dim + 1 == axis) {
        stab_rec(k.get(), axis, fixed, out);
      } else {
        i64 c = fixed[static_cast<std::size_t>(dim)];
        if (c >= k->iv[0] && c <= k->iv[1]) stab_rec(k.get(), axis, fixed, out);
      }
    }
  }

  void dump_rec(const Node* n, std::vector<std::array<i64, 2>>& prefix,
                std::ostringstream& os) const {
    for (int i = 0; i < n->depth; ++i) os << "  ";
    os << "depth=" << n->depth << " [";
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      if (i) os << ", ";
      os << prefix[i][0] << ".." << prefix[i][1];
    }
    os << "] children=" << n->kids.size() << "\n";
    for (auto& k : n->kids) {
      prefix.push_back(k->iv);
      dump_rec(k.get(), prefix, os);
      prefix.pop_back();
    }
  }

  int d_;
  i64 s_;
  i64 w_;
  std::unique_ptr<Node> root_;
  std::vector<BoxRecord> boxes_;
  std::vector<LeafRecord> leaves_;
  std::vector<SlabRecord> slabs_;
  std::vector<OrderStat> xi_;                          // raw boundary coords
  std::map<int, std::multimap<i64, int>> cut_index_;   // dim -> cut -> box
};

// ---------------------------------------------------------------------------
// Static construction: all boxes known upfront. Columns take sqrt-sized
// groups of 1-cuts; each remaining dimension is additionally cut at every
// w-th global cut coordinate, which plays the role of the balancing boxes.

struct StaticRegion {
  OrthoRange box;
  std::vector<int> partial;  // indices into the input box list
};

inline std::vector<StaticRegion> static_partition(
    const std::vector<OrthoRange>& boxes, int d, i64 s) {
  i64 n = static_cast<i64>(boxes.size());
  i64 w = 1;
  while (w * w < std::max<i64>(n, 1)) ++w;

  // per-dimension sorted cut positions
  std::vector<std::vector<i64>> cuts(static_cast<std::size_t>(d));
  for (auto& b : boxes)
    for (int i = 0; i < d; ++i) {
      for (i64 c : {b.lo(i) - 1, b.hi(i)})
        if (c >= 1 && c < s) cuts[static_cast<std::size_t>(i)].push_back(c);
    }
  for (auto& v : cuts) std::sort(v.begin(), v.end());

  // quantile cuts per dimension >= 2 (index 1..d-1)
  std::vector<std::set<i64>> quantile(static_cast<std::size_t>(d));
  for (int i = 1; i < d; ++i) {
    const auto& v = cuts[static_cast<std::size_t>(i)];
    for (std::size_t j = static_cast<std::size_t>(w) - 1; j < v.size();
         j += static_cast<std::size_t>(w))
      quantile[static_cast<std::size_t>(i)].insert(v[j]);
  }

  // dim-1 column cuts: close a column after w inside positions
  std::set<i64> col_cuts;
  {
    const auto& v = cuts[0];
    for (std::size_t j = static_cast<std::size_t>(w) - 1; j < v.size();
         j += static_cast<std::size_t>(w))
      col_cuts.insert(v[j]);
  }

  std::vector<StaticRegion> out;

  // recursive build over the slab prefix
  std::vector<std::array<i64, 2>> prefix;
  auto boundary_hits = [&](const OrthoRange& r, int depth) {
    for (int j = 0; j < depth; ++j) {
      for (i64 coord : {r.lo(j), r.hi(j)}) {
        if (coord < prefix[static_cast<std::size_t>(j)][0] ||
            coord > prefix[static_cast<std::size_t>(j)][1])
          continue;
        bool ok = true;
        for (int k = 0; k < depth; ++k) {
          if (k == j) continue;
          if (r.hi(k) < prefix[static_cast<std::size_t>(k)][0] ||
              r.lo(k) > prefix[static_cast<std::size_t>(k)][1]) {
            ok = false;
            break;
          }
        }
        if (ok) return true;
      }
    }
    return false;
  };

  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == d) {
      StaticRegion region;
      region.box = OrthoRange(prefix);
      for (int i = 0; i < static_cast<int>(boxes.size()); ++i) {
        auto c = classify(boxes[static_cast<std::size_t>(i)], region.box);
        if (c.rel == BoxRelation::Pile) region.partial.push_back(i);
        assert(c.rel != BoxRelation::NotAPile);
      }
      out.push_back(std::move(region));
      return;
    }
    std::set<i64> here;
    if (depth == 0) {
      here = col_cuts;
    } else {
      here = quantile[static_cast<std::size_t>(depth)];
      for (int i = 0; i < static_cast<int>(boxes.size()); ++i) {
        const OrthoRange& r = boxes[static_cast<std::size_t>(i)];
        if (!boundary_hits(r, depth)) continue;
        for (i64 c : {r.lo(depth) - 1, r.hi(depth)})
          if (c >= 1 && c < s) here.insert(c);
      }
    }
    i64 lo = 1;
    auto emit = [&](i64 a, i64 b) {
      prefix.push_back({a, b});
      self(self, depth + 1);
      prefix.pop_back();
    };
    for (i64 c : here) {
      emit(lo, c);
      lo = c + 1;
    }
    emit(lo, s);
  };
  rec(rec, 0);
  return out;
}

}  // namespace gridrange::dynpart
