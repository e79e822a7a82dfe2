#pragma once

// Core vocabulary shared by every solver: grid specs, axis-aligned ranges,
// update functions and their closed composition forms, operation streams.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridrange {

using i64 = std::int64_t;
using i128 = __int128_t;

// Large-but-finite sentinels. All instance values are guarded to stay far
// below this, so saturating arithmetic never wraps.
inline constexpr i64 kPosInf = i64{1} << 62;
inline constexpr i64 kNegInf = -(i64{1} << 62);

inline i64 sat_add(i64 a, i64 b) {
  if (a >= kPosInf || b >= kPosInf) return kPosInf;
  if (a <= kNegInf || b <= kNegInf) return kNegInf;
  i64 r = a + b;
  return std::clamp(r, kNegInf, kPosInf);
}

struct IncompatibleClosure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DistributivityViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnmatchedRemove : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnalignedBoundary : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedPair : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedVariant : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownVertex : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SameVertex : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DuplicatePoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class QueryKind { Sum, Max };

enum class UpdateKind { Add, Min, Max, Set };

inline const char* to_string(UpdateKind k) {
  switch (k) {
    case UpdateKind::Add: return "add";
    case UpdateKind::Min: return "min";
    case UpdateKind::Max: return "max";
    case UpdateKind::Set: return "set";
  }
  return "?";
}

// One closed integer interval per dimension, 1-based grid coordinates.
struct OrthoRange {
  std::vector<std::array<i64, 2>> dims;

  OrthoRange() = default;
  explicit OrthoRange(std::vector<std::array<i64, 2>> d) : dims(std::move(d)) {}
  static OrthoRange box2(i64 l1, i64 r1, i64 l2, i64 r2) {
    return OrthoRange({{l1, r1}, {l2, r2}});
  }

  int dim() const { return static_cast<int>(dims.size()); }
  i64 lo(int i) const { return dims[i][0]; }
  i64 hi(int i) const { return dims[i][1]; }
  bool valid() const {
    for (auto& d : dims)
      if (d[0] > d[1]) return false;
    return !dims.empty();
  }
  bool contains(const std::vector<i64>& p) const {
    for (int i = 0; i < dim(); ++i)
      if (p[i] < lo(i) || p[i] > hi(i)) return false;
    return true;
  }
  bool contains(const OrthoRange& o) const {
    for (int i = 0; i < dim(); ++i)
      if (o.lo(i) < lo(i) || o.hi(i) > hi(i)) return false;
    return true;
  }
  bool intersects(const OrthoRange& o) const {
    for (int i = 0; i < dim(); ++i)
      if (o.hi(i) < lo(i) || o.lo(i) > hi(i)) return false;
    return true;
  }
  i64 cells() const {
    i64 c = 1;
    for (auto& d : dims) c *= d[1] - d[0] + 1;
    return c;
  }
  bool operator==(const OrthoRange& o) const { return dims == o.dims; }
};

struct UpdateFn {
  UpdateKind kind = UpdateKind::Add;
  i64 c = 0;

  i64 apply(i64 x) const {
    switch (kind) {
      case UpdateKind::Add: return sat_add(x, c);
      case UpdateKind::Min: return std::min(x, c);
      case UpdateKind::Max: return std::max(x, c);
      case UpdateKind::Set: return c;
    }
    return x;
  }
};

inline UpdateFn add_fn(i64 c) { return {UpdateKind::Add, c}; }
inline UpdateFn min_fn(i64 c) { return {UpdateKind::Min, c}; }
inline UpdateFn max_fn(i64 c) { return {UpdateKind::Max, c}; }
inline UpdateFn set_fn(i64 c) { return {UpdateKind::Set, c}; }

// Closed composition forms. MinMaxClamp(a, b): x -> min(a, max(b, x)) with
// a >= b. AddThenSet: either a pure shift x -> x + a or a constant. MaxShift:
// x -> max(x + a, b).
enum class ClosureForm { MinMaxClamp, AddThenSet, MaxShift };

struct ComposedUpdate {
  ClosureForm form;
  // MinMaxClamp: p = a (upper), q = b (lower).
  // AddThenSet:  p = shift when !is_const, else the constant; q unused.
  // MaxShift:    p = a (shift), q = b (floor).
  i64 p = 0;
  i64 q = 0;
  bool is_const = false;  // AddThenSet only

  static ComposedUpdate identity(ClosureForm f) {
    switch (f) {
      case ClosureForm::MinMaxClamp: return {f, kPosInf, kNegInf, false};
      case ClosureForm::AddThenSet: return {f, 0, 0, false};
      case ClosureForm::MaxShift: return {f, 0, kNegInf, false};
    }
    return {f, 0, 0, false};
  }

  i64 apply(i64 x) const {
    switch (form) {
      case ClosureForm::MinMaxClamp: return std::min(p, std::max(q, x));
      case ClosureForm::AddThenSet: return is_const ? p : sat_add(x, p);
      case ClosureForm::MaxShift: return std::max(sat_add(x, p), q);
    }
    return x;
  }

  bool is_identity() const {
    switch (form) {
      case ClosureForm::MinMaxClamp: return p >= kPosInf && q <= kNegInf;
      case ClosureForm::AddThenSet: return !is_const && p == 0;
      case ClosureForm::MaxShift: return p == 0 && q <= kNegInf;
    }
    return false;
  }
};

namespace detail {

inline bool fits_form(const UpdateFn& f, ClosureForm form) {
  switch (form) {
    case ClosureForm::MinMaxClamp:
      return f.kind == UpdateKind::Min || f.kind == UpdateKind::Max ||
             f.kind == UpdateKind::Set;
    case ClosureForm::AddThenSet:
      return f.kind == UpdateKind::Add || f.kind == UpdateKind::Set;
    case ClosureForm::MaxShift:
      return f.kind == UpdateKind::Add || f.kind == UpdateKind::Max;
  }
  return false;
}

}  // namespace detail

inline ComposedUpdate to_composed(const UpdateFn& f, ClosureForm form) {
  if (!detail::fits_form(f, form)) {
    throw IncompatibleClosure(std::string("update ") + to_string(f.kind) +
                              " does not fit the requested closure form");
  }
  switch (form) {
    case ClosureForm::MinMaxClamp:
      if (f.kind == UpdateKind::Min) return {form, f.c, kNegInf, false};
      if (f.kind == UpdateKind::Max) return {form, kPosInf, f.c, false};
      return {form, f.c, f.c, false};  // set_c = min_c . max_c
    case ClosureForm::AddThenSet:
      if (f.kind == UpdateKind::Add) return {form, f.c, 0, false};
      return {form, f.c, 0, true};
    case ClosureForm::MaxShift:
      if (f.kind == UpdateKind::Add) return {form, f.c, kNegInf, false};
      return {form, 0, f.c, false};  // max_c = shift 0, floor c
  }
  throw IncompatibleClosure("unknown closure form");
}

// outer(inner(x)) within one closure form.
inline ComposedUpdate compose(const ComposedUpdate& outer,
                              const ComposedUpdate& inner) {
  if (outer.form != inner.form) {
    throw IncompatibleClosure("compose across different closure forms");
  }
  switch (outer.form) {
    case ClosureForm::MinMaxClamp: {
      // outer = (a2, b2), inner = (a1, b1):
      //   min(a2, max(b2, min(a1, max(b1, x))))
      // = min(A, max(B, x)) with A = min(a2, max(b2, a1)), B = max(b2, b1),
      // normalised so A >= B.
      i64 a = std::min(outer.p, std::max(outer.q, inner.p));
      i64 b = std::max(outer.q, inner.q);
      b = std::min(a, b);
      return {ClosureForm::MinMaxClamp, a, b, false};
    }
    case ClosureForm::AddThenSet: {
      if (outer.is_const) return outer;  // set wins
      if (inner.is_const)
        return {ClosureForm::AddThenSet, sat_add(inner.p, outer.p), 0, true};
      return {ClosureForm::AddThenSet, sat_add(inner.p, outer.p), 0, false};
    }
    case ClosureForm::MaxShift: {
      // outer (a2,b2) after inner (a1,b1): max(max(x+a1,b1)+a2, b2)
      // = max(x + a1+a2, max(b1+a2, b2)).
      i64 a = sat_add(inner.p, outer.p);
      i64 b = std::max(sat_add(inner.q, outer.p), outer.q);
      return {ClosureForm::MaxShift, a, b, false};
    }
  }
  throw IncompatibleClosure("unknown closure form");
}

// Convenience composition of raw update functions; picks the first closure
// form containing both, in the order MinMaxClamp, AddThenSet, MaxShift.
inline ComposedUpdate compose(const UpdateFn& outer, const UpdateFn& inner) {
  for (ClosureForm form : {ClosureForm::MinMaxClamp, ClosureForm::AddThenSet,
                           ClosureForm::MaxShift}) {
    if (detail::fits_form(outer, form) && detail::fits_form(inner, form)) {
      return compose(to_composed(outer, form), to_composed(inner, form));
    }
  }
  throw IncompatibleClosure(std::string("no common closure form for ") +
                            to_string(outer.kind) + " and " +
                            to_string(inner.kind));
}

inline ComposedUpdate compose(const ComposedUpdate& outer,
                              const UpdateFn& inner) {
  return compose(outer, to_composed(inner, outer.form));
}

struct Update {
  OrthoRange range;
  UpdateFn fn;
};

struct Query {
  OrthoRange range;
};

struct Operation {
  i64 time = 0;
  bool is_update = false;
  OrthoRange range;
  UpdateFn fn;  // valid when is_update

  static Operation update(i64 t, OrthoRange r, UpdateFn f) {
    return {t, true, std::move(r), f};
  }
  static Operation query(i64 t, OrthoRange r) {
    return {t, false, std::move(r), {}};
  }
};

struct GridSpec {
  int d = 2;
  i64 s = 1;
  QueryKind query = QueryKind::Sum;
  std::vector<UpdateKind> allowed;  // nonempty, sorted, unique
  i64 value_bound = 0;              // g: |c| of every update constant
  i64 op_budget = 0;                // declared n

  GridSpec() = default;
  GridSpec(int d_, i64 s_, QueryKind q, std::vector<UpdateKind> u, i64 g,
           i64 n)
      : d(d_), s(s_), query(q), allowed(std::move(u)), value_bound(g),
        op_budget(n) {
    std::sort(allowed.begin(), allowed.end());
    allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
    validate();
  }

  bool allows(UpdateKind k) const {
    return std::find(allowed.begin(), allowed.end(), k) != allowed.end();
  }

  void validate() const {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (s < 1) throw std::invalid_argument("side length must be >= 1");
    if (allowed.empty())
      throw std::invalid_argument("at least one update kind required");
    // Sum answers can reach n * g * s^d; reject instances that could
    // overflow 64-bit accumulation.
    if (query == QueryKind::Sum) {
      i128 worst = i128(std::max<i64>(op_budget, 1)) *
                   std::max<i64>(value_bound, 1);
      for (int i = 0; i < d; ++i) {
        worst *= s;
        if (worst > i128(kPosInf)) {
          throw std::invalid_argument(
              "instance rejected: n * g * s^d exceeds 64-bit budget");
        }
      }
    }
  }

  OrthoRange whole() const {
    std::vector<std::array<i64, 2>> ds(d, {1, s});
    return OrthoRange(std::move(ds));
  }
};

}  // namespace gridrange
