#pragma once

// Walk and path counting between vertex pairs in sparse graphs. Vertices are
// partitioned into high / medium / low degree classes around a threshold
// Delta = m^alpha; dense interactions go through matrix products, sparse ones
// through adjacency-list enumeration. Edge multiplicities are supported so
// the range-pair reductions can reuse the counter; the simple-path and
// 4-cycle operations require a simple graph.

#include <cassert>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gridrange/core.hpp"

namespace gridrange::graphwalk {

struct Matrix {
  int rows = 0, cols = 0;
  std::vector<i64> a;

  Matrix() = default;
  Matrix(int r, int c)
      : rows(r), cols(c),
        a(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0) {}
  i64& at(int i, int j) {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + j];
  }
  i64 at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + j];
  }
};

// Exact integer product, classical algorithm with square tiling.
inline Matrix multiply(const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows)
    throw DimensionMismatch("matrix dimensions do not conform");
  Matrix r(x.rows, y.cols);
  constexpr int kBlock = 64;
  for (int ii = 0; ii < x.rows; ii += kBlock) {
    int imax = std::min(x.rows, ii + kBlock);
    for (int kk = 0; kk < x.cols; kk += kBlock) {
      int kmax = std::min(x.cols, kk + kBlock);
      for (int jj = 0; jj < y.cols; jj += kBlock) {
        int jmax = std::min(y.cols, jj + kBlock);
        for (int i = ii; i < imax; ++i) {
          for (int k = kk; k < kmax; ++k) {
            i64 v = x.at(i, k);
            if (v == 0) continue;
            const i64* yrow =
                &y.a[static_cast<std::size_t>(k) *
                     static_cast<std::size_t>(y.cols)];
            i64* rrow = &r.a[static_cast<std::size_t>(i) *
                             static_cast<std::size_t>(y.cols)];
            for (int j = jj; j < jmax; ++j) rrow[j] += v * yrow[j];
          }
        }
      }
    }
  }
  return r;
}

// Undirected graph with non-negative integer edge multiplicities and no
// self-loops. A multiplicity-1 graph is simple.
class Graph {
 public:
  Graph(int n, const std::vector<std::array<int, 2>>& edge_list,
        const std::vector<i64>* weights = nullptr)
      : n_(n), adj_(static_cast<std::size_t>(n)) {
    std::unordered_map<std::uint64_t, i64> acc;
    for (std::size_t e = 0; e < edge_list.size(); ++e) {
      int u = edge_list[e][0], v = edge_list[e][1];
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw UnknownVertex("edge endpoint out of range");
      if (u == v) throw std::invalid_argument("self-loops are not allowed");
      i64 w = weights ? (*weights)[e] : 1;
      if (w <= 0) continue;
      if (!weights && acc.count(key(u, v)))
        throw std::invalid_argument("duplicate edge in simple graph");
      acc[key(u, v)] += w;
    }
    simple_ = true;
    for (auto& [k, w] : acc) {
      int u = static_cast<int>(k >> 32), v = static_cast<int>(k & 0xffffffff);
      adj_[static_cast<std::size_t>(u)].push_back({v, w});
      adj_[static_cast<std::size_t>(v)].push_back({u, w});
      edges_.push_back({u, v, w});
      total_weight_ += w;
      if (w != 1) simple_ = false;
    }
    weight_lookup_ = std::move(acc);
    deg_.assign(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
      for (auto& [to, w] : adj_[static_cast<std::size_t>(v)])
        deg_[static_cast<std::size_t>(v)] += w;
  }

  struct Edge {
    int u, v;
    i64 w;
  };

  int vertex_count() const { return n_; }
  i64 edge_weight_total() const { return total_weight_; }
  bool simple() const { return simple_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::pair<int, i64>>& neighbors(int v) const {
    return adj_[static_cast<std::size_t>(v)];
  }
  i64 degree(int v) const { return deg_[static_cast<std::size_t>(v)]; }
  i64 edge_multiplicity(int u, int v) const {
    auto it = weight_lookup_.find(key(u, v));
    return it == weight_lookup_.end() ? 0 : it->second;
  }
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw UnknownVertex("vertex id out of range");
  }

 private:
  static std::uint64_t key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
  }

  int n_;
  std::vector<std::vector<std::pair<int, i64>>> adj_;
  std::vector<Edge> edges_;
  std::vector<i64> deg_;
  std::unordered_map<std::uint64_t, i64> weight_lookup_;
  i64 total_weight_ = 0;
  bool simple_ = true;
};

struct CaseBreakdown {
  i64 c1 = 0, c2 = 0, c3 = 0, c4a = 0, c4b = 0, c4c = 0;
  i64 total() const { return c1 + c2 + c3 + c4a + c4b + c4c; }
};

class WalkCounter {
 public:
  // alpha < 0 selects the default exponent 4/7 (the balance point of the
  // degree-partition scheme with a classical multiplication backend).
  explicit WalkCounter(const Graph& g, double alpha = -1.0)
      : g_(g), alpha_(alpha < 0 ? 4.0 / 7.0 : alpha) {
    rebuild();
  }

  i64 delta() const { return delta_; }

  i64 two_walk(int u, int v) {
    g_.check_vertex(u);
    g_.check_vertex(v);
    if (u == v) return g_.degree(u);
    if (g_.degree(u) > g_.degree(v)) std::swap(u, v);
    i64 acc = 0;
    for (auto& [x, w] : g_.neighbors(u)) acc += w * g_.edge_multiplicity(x, v);
    return acc;
  }

  i64 three_walk(int u, int v) { return three_walk_cases(u, v).total(); }

  CaseBreakdown three_walk_cases(int u, int v) {
    g_.check_vertex(u);
    g_.check_vertex(v);
    {
      std::lock_guard<std::mutex> lk(cache_mu_);
      auto it = cache_.find(cache_key(u, v));
      if (it != cache_.end()) return it->second;
    }
    maybe_regrow();
    CaseBreakdown out = compute_cases(u, v);
    std::lock_guard<std::mutex> lk(cache_mu_);
    cache_.emplace(cache_key(u, v), out);
    return out;
  }

  i64 simple_three_path(int u, int v) {
    if (!g_.simple())
      throw std::invalid_argument("simple paths need a simple graph");
    g_.check_vertex(u);
    g_.check_vertex(v);
    if (u == v) throw SameVertex("simple path endpoints must differ");
    i64 w3 = three_walk(u, v);
    if (g_.edge_multiplicity(u, v) > 0)
      return w3 - (g_.degree(u) + g_.degree(v) - 1);
    return w3;
  }

  // number of simple 4-cycles containing each edge, in graph edge order
  std::vector<i64> edge_four_cycles() {
    std::vector<i64> out;
    out.reserve(g_.edges().size());
    for (auto& e : g_.edges()) out.push_back(simple_three_path(e.u, e.v));
    return out;
  }

 private:
  enum Class : uint8_t { H = 0, M = 1, L = 2 };

  static std::uint64_t pair_key(int a, int c) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(c);
  }
  static std::uint64_t cache_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return pair_key(u, v);
  }

  void rebuild() {
    int n = g_.vertex_count();
    i64 m = g_.edge_weight_total();
    double md = std::max<double>(2.0, static_cast<double>(m));
    delta_ = std::max<i64>(1, static_cast<i64>(std::pow(md, alpha_)));
    i64 sqrt_delta =
        std::max<i64>(1, static_cast<i64>(std::sqrt(static_cast<double>(delta_))));
    cls_.assign(static_cast<std::size_t>(n), L);
    hidx_.assign(static_cast<std::size_t>(n), -1);
    midx_.assign(static_cast<std::size_t>(n), -1);
    hverts_.clear();
    mverts_.clear();
    for (int v = 0; v < n; ++v) {
      i64 d = g_.degree(v);
      if (d > delta_) {
        cls_[static_cast<std::size_t>(v)] = H;
        hidx_[static_cast<std::size_t>(v)] = static_cast<int>(hverts_.size());
        hverts_.push_back(v);
      } else if (d > sqrt_delta) {
        cls_[static_cast<std::size_t>(v)] = M;
        midx_[static_cast<std::size_t>(v)] = static_cast<int>(mverts_.size());
        mverts_.push_back(v);
      }
    }
    int nh = static_cast<int>(hverts_.size());
    int nm = static_cast<int>(mverts_.size());

    // 2-walk counts through medium / low middles
    cmid_.clear();
    for (int b = 0; b < n; ++b) {
      if (cls_[static_cast<std::size_t>(b)] == H) continue;
      bool mid_low = cls_[static_cast<std::size_t>(b)] == L;
      auto& nb = g_.neighbors(b);
      for (auto& [a, wa] : nb) {
        for (auto& [c, wc] : nb) {
          auto& slot = cmid_[pair_key(a, c)];
          if (mid_low) {
            slot.through_l += wa * wc;
          } else {
            slot.through_m += wa * wc;
          }
        }
      }
    }

    Matrix gh(nh, nh), ghm(nh, nm), gmh(nm, nh);
    for (int i = 0; i < nh; ++i) {
      int u = hverts_[static_cast<std::size_t>(i)];
      for (auto& [x, w] : g_.neighbors(u)) {
        if (cls_[static_cast<std::size_t>(x)] == H) {
          gh.at(i, hidx_[static_cast<std::size_t>(x)]) = w;
        } else if (cls_[static_cast<std::size_t>(x)] == M) {
          ghm.at(i, midx_[static_cast<std::size_t>(x)]) = w;
          gmh.at(midx_[static_cast<std::size_t>(x)], i) = w;
        }
      }
    }
    Matrix chh(nh, nh), chmm(nh, nm), cmlh(nm, nh);
    for (auto& [k, w] : cmid_) {
      int a = static_cast<int>(k >> 32), c = static_cast<int>(k & 0xffffffff);
      Class ca = cls_[static_cast<std::size_t>(a)];
      Class cc = cls_[static_cast<std::size_t>(c)];
      i64 any = w.through_m + w.through_l;
      if (ca == H && cc == H)
        chh.at(hidx_[static_cast<std::size_t>(a)],
               hidx_[static_cast<std::size_t>(c)]) = any;
      if (ca == H && cc == M)
        chmm.at(hidx_[static_cast<std::size_t>(a)],
                midx_[static_cast<std::size_t>(c)]) = w.through_m;
      if (ca == M && cc == H)
        cmlh.at(midx_[static_cast<std::size_t>(a)],
                hidx_[static_cast<std::size_t>(c)]) = w.through_l;
    }

    gh2_ = multiply(gh, gh);
    p1_ = multiply(gh2_, gh);
    p3_ = multiply(chh, gh);
    a4a_ = multiply(chmm, gmh);
    f_ = multiply(ghm, cmlh);
    f2_ = multiply(cmlh, gh);
    d_ = multiply(gh, ghm);

    // low-low adjacent pairs between high endpoints
    q_ = Matrix(nh, nh);
    for (auto& e : g_.edges()) {
      if (cls_[static_cast<std::size_t>(e.u)] != L ||
          cls_[static_cast<std::size_t>(e.v)] != L)
        continue;
      for (auto& [h1, w1] : g_.neighbors(e.u)) {
        if (cls_[static_cast<std::size_t>(h1)] != H) continue;
        for (auto& [h2, w2] : g_.neighbors(e.v)) {
          if (cls_[static_cast<std::size_t>(h2)] != H) continue;
          i64 add = e.w * w1 * w2;
          q_.at(hidx_[static_cast<std::size_t>(h1)],
                hidx_[static_cast<std::size_t>(h2)]) += add;
          q_.at(hidx_[static_cast<std::size_t>(h2)],
                hidx_[static_cast<std::size_t>(h1)]) += add;
        }
      }
    }
  }

  // Doubling restart: once the number of distinct queries overtakes the
  // current guess, re-balance the threshold exponent for the larger q.
  void maybe_regrow() {
    ++queries_seen_;
    i64 m = g_.edge_weight_total();
    if (m < 2) return;
    if (queries_seen_ <= query_guess_ || queries_seen_ <= m) return;
    query_guess_ = std::max<i64>(query_guess_ * 2, queries_seen_);
    double beta = std::log(static_cast<double>(query_guess_)) /
                  std::log(static_cast<double>(m));
    beta = std::min(beta, 2.0);
    double alpha = 2.0 * (3.0 - beta) / 7.0;
    if (std::abs(alpha - alpha_) > 1e-9) {
      alpha_ = alpha;
      rebuild();
    }
  }

  i64 c_any(int a, int c) const {
    auto it = cmid_.find(pair_key(a, c));
    return it == cmid_.end() ? 0 : it->second.through_m + it->second.through_l;
  }

  CaseBreakdown compute_cases(int u, int v) const {
    Class cu = cls_[static_cast<std::size_t>(u)];
    Class cv = cls_[static_cast<std::size_t>(v)];
    if (cu == H && cv != H) return reflect(compute_cases(v, u));
    CaseBreakdown r;
    if (cu == H && cv == H) {
      int ui = hidx_[static_cast<std::size_t>(u)];
      int vi = hidx_[static_cast<std::size_t>(v)];
      r.c1 = p1_.at(ui, vi);
      r.c3 = p3_.at(ui, vi) + p3_.at(vi, ui);
      r.c4a = a4a_.at(ui, vi);
      r.c4b = f_.at(ui, vi) + f_.at(vi, ui);
      r.c4c = q_.at(ui, vi);
      return r;
    }
    if (cv == H) {
      // u in M or L, v in H
      int vi = hidx_[static_cast<std::size_t>(v)];
      i64 c2 = 0, c3 = 0, pair_m = 0, pair_l = 0;
      for (auto& [x, wx] : g_.neighbors(u)) {
        c2 += wx * c_any(x, v);
        Class cx = cls_[static_cast<std::size_t>(x)];
        if (cx == H) {
          c3 += wx * gh2_.at(hidx_[static_cast<std::size_t>(x)], vi);
        } else if (cx == M) {
          pair_m += wx * d_.at(vi, midx_[static_cast<std::size_t>(x)]);
        } else if (cu == L) {
          // u in L, x in L: iterate x's high neighbours
          i64 inner = 0;
          for (auto& [h, wh] : g_.neighbors(x)) {
            if (cls_[static_cast<std::size_t>(h)] != H) continue;
            inner += wh * g_.edge_multiplicity(h, v);
          }
          pair_l += wx * inner;
        }
      }
      if (cu == M) {
        pair_l = f2_.at(midx_[static_cast<std::size_t>(u)], vi);
      }
      r.c2 = c2;
      r.c3 = c3;
      if (cu == M) {
        r.c4a = pair_m;
        r.c4b = pair_l;
      } else {
        r.c4b = pair_m;
        r.c4c = pair_l;
      }
      return r;
    }
    // both endpoints in M or L
    i64 pu = 0, pv = 0, both = 0;
    for (auto& [x, wx] : g_.neighbors(u)) {
      pu += wx * c_any(x, v);
      if (cls_[static_cast<std::size_t>(x)] != H) both += wx * c_any(x, v);
    }
    for (auto& [x, wx] : g_.neighbors(v)) pv += wx * c_any(x, u);
    r.c2 = pu + pv - both;
    i64 hh = 0;
    if (cv == M) {
      for (auto& [h, wh] : g_.neighbors(u)) {
        if (cls_[static_cast<std::size_t>(h)] != H) continue;
        hh += wh * d_.at(hidx_[static_cast<std::size_t>(h)],
                         midx_[static_cast<std::size_t>(v)]);
      }
    } else if (cu == M) {
      for (auto& [h, wh] : g_.neighbors(v)) {
        if (cls_[static_cast<std::size_t>(h)] != H) continue;
        hh += wh * d_.at(hidx_[static_cast<std::size_t>(h)],
                         midx_[static_cast<std::size_t>(u)]);
      }
    } else {
      for (auto& [a, wa] : g_.neighbors(u)) {
        if (cls_[static_cast<std::size_t>(a)] != H) continue;
        for (auto& [b, wb] : g_.neighbors(v)) {
          if (cls_[static_cast<std::size_t>(b)] != H) continue;
          hh += wa * wb * g_.edge_multiplicity(a, b);
        }
      }
    }
    if (cu == M && cv == M) {
      r.c4a = hh;
    } else if (cu == L && cv == L) {
      r.c4c = hh;
    } else {
      r.c4b = hh;
    }
    return r;
  }

  // Reversing the walk swaps x and y; the case classes are orientation-free.
  static CaseBreakdown reflect(const CaseBreakdown& b) { return b; }

  struct MidCounts {
    i64 through_m = 0;
    i64 through_l = 0;
  };

  const Graph& g_;
  double alpha_;
  i64 delta_ = 1;
  std::vector<Class> cls_;
  std::vector<int> hidx_, midx_;
  std::vector<int> hverts_, mverts_;
  std::unordered_map<std::uint64_t, MidCounts> cmid_;
  Matrix gh2_, p1_, p3_, a4a_, f_, f2_, d_, q_;
  std::unordered_map<std::uint64_t, CaseBreakdown> cache_;
  std::mutex cache_mu_;
  i64 queries_seen_ = 0;
  i64 query_guess_ = 1;
};

}  // namespace gridrange::graphwalk
