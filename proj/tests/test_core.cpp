#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gridrange/core.hpp"

using namespace gridrange;

TEST_CASE("compose of two sets keeps the outer one") {
  auto h = compose(set_fn(4), set_fn(9));
  for (i64 x : {-5, 0, 3, 100}) REQUIRE(h.apply(x) == 4);
}

TEST_CASE("add after set folds into the set constant") {
  auto h = compose(add_fn(3), set_fn(5));
  REQUIRE(h.form == ClosureForm::AddThenSet);
  REQUIRE(h.is_const);
  for (i64 x : {-5, 0, 3, 100}) REQUIRE(h.apply(x) == 8);
}

TEST_CASE("min after max collapses to a constant clamp") {
  auto h = compose(min_fn(3), max_fn(5));
  for (i64 x = -10; x <= 10; ++x) REQUIRE(h.apply(x) == 3);
}

TEST_CASE("identity composes neutrally") {
  for (ClosureForm form : {ClosureForm::MinMaxClamp, ClosureForm::AddThenSet,
                           ClosureForm::MaxShift}) {
    auto id = ComposedUpdate::identity(form);
    UpdateFn fns[] = {add_fn(7), min_fn(2), max_fn(-3), set_fn(11)};
    for (auto& f : fns) {
      if (!detail::fits_form(f, form)) continue;
      auto c = to_composed(f, form);
      auto left = compose(id, c);
      auto right = compose(c, id);
      for (i64 x : {-20, -1, 0, 5, 19}) {
        REQUIRE(left.apply(x) == c.apply(x));
        REQUIRE(right.apply(x) == c.apply(x));
      }
    }
  }
}

TEST_CASE("apply matches direct evaluation") {
  REQUIRE(max_fn(7).apply(3) == 7);
  ComposedUpdate clamp{ClosureForm::MinMaxClamp, 3, 0, false};
  REQUIRE(clamp.apply(10) == 3);
  auto set2 = compose(min_fn(2), max_fn(2));
  REQUIRE(set2.apply(9) == 2);
}

TEST_CASE("incompatible closures are rejected") {
  REQUIRE_THROWS_AS(compose(add_fn(1), min_fn(2)), IncompatibleClosure);
  REQUIRE_THROWS_AS(to_composed(min_fn(1), ClosureForm::AddThenSet),
                    IncompatibleClosure);
}

static UpdateFn random_fn(std::mt19937_64& rng,
                          const std::vector<UpdateKind>& kinds) {
  std::uniform_int_distribution<std::size_t> pick(0, kinds.size() - 1);
  std::uniform_int_distribution<i64> val(-50, 50);
  return {kinds[pick(rng)], val(rng)};
}

TEST_CASE("composition is associative within each closure") {
  std::mt19937_64 rng(12345);
  struct Config {
    ClosureForm form;
    std::vector<UpdateKind> kinds;
  };
  Config configs[] = {
      {ClosureForm::MinMaxClamp,
       {UpdateKind::Min, UpdateKind::Max, UpdateKind::Set}},
      {ClosureForm::AddThenSet, {UpdateKind::Add, UpdateKind::Set}},
      {ClosureForm::MaxShift, {UpdateKind::Add, UpdateKind::Max}},
  };
  std::uniform_int_distribution<i64> xs(-1000, 1000);
  for (auto& cfg : configs) {
    for (int it = 0; it < 400; ++it) {
      auto f = to_composed(random_fn(rng, cfg.kinds), cfg.form);
      auto g = to_composed(random_fn(rng, cfg.kinds), cfg.form);
      auto h = to_composed(random_fn(rng, cfg.kinds), cfg.form);
      auto left = compose(f, compose(g, h));
      auto right = compose(compose(f, g), h);
      for (int k = 0; k < 10; ++k) {
        i64 x = xs(rng);
        REQUIRE(left.apply(x) == right.apply(x));
      }
    }
  }
}

TEST_CASE("folded compositions agree with sequential application") {
  std::mt19937_64 rng(999);
  struct Config {
    ClosureForm form;
    std::vector<UpdateKind> kinds;
  };
  Config configs[] = {
      {ClosureForm::MinMaxClamp,
       {UpdateKind::Min, UpdateKind::Max, UpdateKind::Set}},
      {ClosureForm::AddThenSet, {UpdateKind::Add, UpdateKind::Set}},
  };
  std::uniform_int_distribution<i64> xs(-500, 500);
  std::uniform_int_distribution<int> len(1, 1000);
  for (auto& cfg : configs) {
    for (int it = 0; it < 20; ++it) {
      int m = len(rng);
      std::vector<UpdateFn> seq;
      seq.reserve(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) seq.push_back(random_fn(rng, cfg.kinds));
      auto folded = ComposedUpdate::identity(cfg.form);
      for (auto& f : seq) folded = compose(to_composed(f, cfg.form), folded);
      for (int k = 0; k < 100; ++k) {
        i64 x = xs(rng);
        i64 y = x;
        for (auto& f : seq) y = f.apply(y);
        REQUIRE(folded.apply(x) == y);
      }
    }
  }
}

TEST_CASE("grid spec rejects overflow-prone instances") {
  REQUIRE_THROWS_AS(GridSpec(2, i64{1} << 40, QueryKind::Sum,
                             {UpdateKind::Add}, i64{1} << 40, 1 << 20),
                    std::invalid_argument);
  REQUIRE_NOTHROW(
      GridSpec(2, 64, QueryKind::Sum, {UpdateKind::Add}, 1000, 1000));
}
