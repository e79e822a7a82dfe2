#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gridrange/oracle.hpp"
#include "gridrange/seg1d.hpp"

using namespace gridrange;
using namespace gridrange::seg1d;

TEST_CASE("max tree basics") {
  MaxLazyTree t(8);
  t.apply(2, 4, add_fn(5));
  REQUIRE(t.query(1, 8) == 5);
  t.apply(1, 8, min_fn(-2));
  REQUIRE(t.query(3, 3) == -2);
}

static UpdateFn random_update(std::mt19937_64& rng,
                              const std::vector<UpdateKind>& kinds, i64 bound) {
  std::uniform_int_distribution<std::size_t> pick(0, kinds.size() - 1);
  std::uniform_int_distribution<i64> val(-bound, bound);
  return {kinds[pick(rng)], val(rng)};
}

TEST_CASE("lazy tree matches the dense oracle on every supported config") {
  struct Config {
    QueryKind q;
    std::vector<UpdateKind> kinds;
  };
  std::vector<Config> configs = {
      {QueryKind::Max,
       {UpdateKind::Add, UpdateKind::Min, UpdateKind::Set, UpdateKind::Max}},
      {QueryKind::Max, {UpdateKind::Add}},
      {QueryKind::Max, {UpdateKind::Min, UpdateKind::Set, UpdateKind::Max}},
      {QueryKind::Sum, {UpdateKind::Add}},
      {QueryKind::Sum, {UpdateKind::Set}},
      {QueryKind::Sum, {UpdateKind::Add, UpdateKind::Set}},
  };
  std::mt19937_64 rng(2024);
  for (auto& cfg : configs) {
    for (int rep = 0; rep < 4; ++rep) {
      i64 s = 2 + static_cast<i64>(rng() % 511);
      oracle::DenseArray ref(s, cfg.q);
      Engine1D eng(cfg.q, cfg.kinds, s);
      std::uniform_int_distribution<i64> coord(1, s);
      for (int op = 0; op < 250; ++op) {
        i64 l = coord(rng), r = coord(rng);
        if (l > r) std::swap(l, r);
        if (rng() % 2) {
          auto f = random_update(rng, cfg.kinds, 40);
          ref.apply(l, r, f);
          eng.apply(l, r, f);
        } else {
          REQUIRE(eng.query(l, r) == ref.query(l, r));
        }
      }
    }
  }
}

TEST_CASE("strict lazy table rejects sum-with-clamps") {
  REQUIRE_THROWS_AS(
      check_lazy_supported(QueryKind::Sum, {UpdateKind::Add, UpdateKind::Max}),
      DistributivityViolation);
  REQUIRE_NOTHROW(
      check_lazy_supported(QueryKind::Sum, {UpdateKind::Add, UpdateKind::Set}));
  REQUIRE_NOTHROW(check_lazy_supported(
      QueryKind::Max, {UpdateKind::Add, UpdateKind::Min, UpdateKind::Max}));
}

TEST_CASE("beats handles the documented examples") {
  BeatsTree t(8);
  t.apply(1, 8, max_fn(3));
  t.apply(1, 2, add_fn(2));
  REQUIRE(t.query_sum(1, 8) == 28);  // 5 + 5 + 6 * 3

  BeatsTree u(10);
  u.apply(3, 7, set_fn(9));
  REQUIRE(u.query_sum(3, 7) == 9 * 5);

  BeatsTree w(6);
  w.apply(1, 6, set_fn(4));
  i64 before = w.query_sum(1, 6);
  w.apply(1, 6, min_fn(100));  // above current max: no effect
  REQUIRE(w.query_sum(1, 6) == before);
  REQUIRE(w.query_max(1, 6) == 4);
}

TEST_CASE("beats matches the dense oracle under full update mix") {
  std::mt19937_64 rng(5150);
  for (int rep = 0; rep < 8; ++rep) {
    i64 s = 2 + static_cast<i64>(rng() % 300);
    oracle::DenseArray sum_ref(s, QueryKind::Sum);
    oracle::DenseArray max_ref(s, QueryKind::Max);
    BeatsTree t(s);
    std::uniform_int_distribution<i64> coord(1, s);
    std::vector<UpdateKind> kinds = {UpdateKind::Add, UpdateKind::Min,
                                     UpdateKind::Set, UpdateKind::Max};
    for (int op = 0; op < 400; ++op) {
      i64 l = coord(rng), r = coord(rng);
      if (l > r) std::swap(l, r);
      if (rng() % 2) {
        auto f = random_update(rng, kinds, 30);
        sum_ref.apply(l, r, f);
        max_ref.apply(l, r, f);
        t.apply(l, r, f);
      } else {
        REQUIRE(t.query_sum(l, r) == sum_ref.query(l, r));
        REQUIRE(t.query_max(l, r) == max_ref.query(l, r));
      }
    }
  }
}

TEST_CASE("beats node visits stay within the amortisation budget") {
  const i64 s = i64{1} << 16;
  const int n = 100000;
  BeatsTree t(s);
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<i64> coord(1, s);
  std::vector<UpdateKind> kinds = {UpdateKind::Add, UpdateKind::Min,
                                   UpdateKind::Set, UpdateKind::Max};
  for (int op = 0; op < n; ++op) {
    i64 l = coord(rng), r = coord(rng);
    if (l > r) std::swap(l, r);
    if (rng() % 3) {
      t.apply(l, r, random_update(rng, kinds, 1000));
    } else {
      t.query_sum(l, r);
    }
  }
  // 60 * n * log^2 s with log s = 16
  REQUIRE(t.visits() < i64{60} * n * 16 * 16);
}

TEST_CASE("untouched huge domains answer without materialising") {
  const i64 s = i64{1} << 60;
  SumAddSetTree t(s);
  REQUIRE(t.query(1, s) == 0);
  REQUIRE(t.node_count() <= 4);  // only the root plus at most one split level
  t.apply(s / 2, s / 2 + 100, add_fn(3));
  REQUIRE(t.query(1, s) == 303);
  REQUIRE(t.node_count() <= 8 * 64);
}

TEST_CASE("historic tracker single-cell trace") {
  HistoricTracker t(1);
  t.add(1, 1, 4);
  t.add(1, 1, -10);
  t.add(1, 1, 3);
  REQUIRE(t.query_current_max(1, 1) == -3);
  REQUIRE(t.query_max_attained(1, 1) == 4);
}

TEST_CASE("historic tracker edge behaviours") {
  HistoricTracker t(16);
  REQUIRE(t.query_max_attained(1, 16) == 0);
  // monotone adds: historic equals current
  HistoricTracker u(8);
  u.add(2, 5, 3);
  u.add(2, 5, 1);
  u.add(3, 4, 2);
  REQUIRE(u.query_max_attained(1, 8) == u.query_current_max(1, 8));
}

TEST_CASE("historic tracker against brute force") {
  std::mt19937_64 rng(31337);
  for (int rep = 0; rep < 6; ++rep) {
    i64 s = 2 + static_cast<i64>(rng() % 60);
    std::vector<i64> cur(static_cast<std::size_t>(s), 0),
        hist(static_cast<std::size_t>(s), 0);
    HistoricTracker t(s);
    std::uniform_int_distribution<i64> coord(1, s), val(-20, 20);
    for (int op = 0; op < 300; ++op) {
      i64 l = coord(rng), r = coord(rng);
      if (l > r) std::swap(l, r);
      if (rng() % 2) {
        i64 c = val(rng);
        for (i64 i = l; i <= r; ++i) {
          cur[static_cast<std::size_t>(i - 1)] += c;
          hist[static_cast<std::size_t>(i - 1)] =
              std::max(hist[static_cast<std::size_t>(i - 1)],
                       cur[static_cast<std::size_t>(i - 1)]);
        }
        t.add(l, r, c);
      } else {
        i64 want = kNegInf;
        for (i64 i = l; i <= r; ++i)
          want = std::max(want, hist[static_cast<std::size_t>(i - 1)]);
        REQUIRE(t.query_max_attained(l, r) == want);
      }
    }
  }
}

TEST_CASE("oracle-backed tree over a constant-zero oracle acts like lazy") {
  const i64 n = 64;
  OracleBackedTree t(n, [](i64, i64) { return i64{0}; });
  MaxLazyTree ref(n);
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<i64> coord(1, n), val(-9, 9);
  for (int op = 0; op < 300; ++op) {
    i64 l = coord(rng), r = coord(rng);
    if (l > r) std::swap(l, r);
    if (rng() % 2) {
      UpdateFn f = rng() % 2 ? add_fn(val(rng)) : max_fn(val(rng));
      t.apply_fn(l, r, f);
      ref.apply(l, r, f);
    } else {
      REQUIRE(t.query_max(l, r) == ref.query(l, r));
    }
  }
}

TEST_CASE("oracle-backed tree reproduces a fixed initial array") {
  std::mt19937_64 rng(99);
  std::vector<i64> base(40);
  for (auto& x : base) x = static_cast<i64>(rng() % 41) - 20;
  auto orc = [&](i64 l, i64 r) {
    i64 m = kNegInf;
    for (i64 i = l; i <= r; ++i)
      m = std::max(m, base[static_cast<std::size_t>(i - 1)]);
    return m;
  };
  OracleBackedTree t(40, orc);
  for (int it = 0; it < 50; ++it) {
    i64 l = 1 + static_cast<i64>(rng() % 40), r = 1 + static_cast<i64>(rng() % 40);
    if (l > r) std::swap(l, r);
    REQUIRE(t.query_max(l, r) == orc(l, r));
  }
}

TEST_CASE("oracle-backed tree with random updates matches dense simulation") {
  std::mt19937_64 rng(1717);
  for (int rep = 0; rep < 10; ++rep) {
    i64 n = 8 + static_cast<i64>(rng() % 120);
    std::vector<i64> vals(static_cast<std::size_t>(n));
    for (auto& x : vals) x = static_cast<i64>(rng() % 61) - 30;
    auto initial = vals;
    auto orc = [&initial](i64 l, i64 r) {
      i64 m = kNegInf;
      for (i64 i = l; i <= r; ++i)
        m = std::max(m, initial[static_cast<std::size_t>(i - 1)]);
      return m;
    };
    OracleBackedTree t(n, orc);
    std::uniform_int_distribution<i64> coord(1, n), val(-15, 15);
    for (int op = 0; op < 100; ++op) {
      i64 l = coord(rng), r = coord(rng);
      if (l > r) std::swap(l, r);
      if (rng() % 2) {
        UpdateFn f = rng() % 2 ? add_fn(val(rng)) : max_fn(val(rng));
        t.apply_fn(l, r, f);
        for (i64 i = l; i <= r; ++i)
          vals[static_cast<std::size_t>(i - 1)] =
              f.apply(vals[static_cast<std::size_t>(i - 1)]);
      } else {
        i64 m = kNegInf;
        for (i64 i = l; i <= r; ++i)
          m = std::max(m, vals[static_cast<std::size_t>(i - 1)]);
        REQUIRE(t.query_max(l, r) == m);
      }
    }
  }
}

TEST_CASE("engine clones are independent") {
  Engine1D a(QueryKind::Sum, {UpdateKind::Add, UpdateKind::Set}, 100);
  a.apply(1, 50, add_fn(2));
  Engine1D b = a;
  b.apply(1, 10, set_fn(0));
  REQUIRE(a.query(1, 100) == 100);
  REQUIRE(b.query(1, 100) == 80);
}
