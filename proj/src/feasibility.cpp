#include "mrb/feasibility.hpp"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <limits>
#include <map>

namespace mrb::fm {
namespace {

constexpr double kZero = 1e-12;
// Constant rows violated by less than this (but more than kZero) are ambiguous.
constexpr double kAmbiguous = 1e-9;
constexpr std::size_t kTracked = 256;

struct Row {
  std::vector<double> a;
  double b = 0.0;
  bool strict = false;
  std::bitset<kTracked> hist;
};

// Scales the row so that max |a_i| == 1. Returns false for a constant row.
bool normalize(Row& r) {
  double m = 0.0;
  for (double v : r.a) m = std::max(m, std::fabs(v));
  if (m <= kZero) {
    std::fill(r.a.begin(), r.a.end(), 0.0);
    return false;
  }
  for (double& v : r.a) {
    v /= m;
    if (std::fabs(v) <= kZero) v = 0.0;
  }
  r.b /= m;
  return true;
}

// 0 <= b (or 0 < b).
bool constant_holds(const Row& r) {
  if (r.strict) return r.b > kZero;
  if (r.b >= -kZero) return true;
  if (r.b < -kAmbiguous) return false;
  throw NumericalError("feasibility: constant row within the ambiguity band", r.b);
}

void dedupe(std::vector<Row>& rows) {
  std::map<std::vector<long long>, std::size_t> seen;
  std::vector<Row> out;
  out.reserve(rows.size());
  for (auto& r : rows) {
    std::vector<long long> key(r.a.size());
    for (std::size_t i = 0; i < r.a.size(); ++i) key[i] = std::llround(r.a[i] * 1e10);
    auto [it, inserted] = seen.emplace(std::move(key), out.size());
    if (inserted) {
      out.push_back(std::move(r));
      continue;
    }
    Row& kept = out[it->second];
    if (r.b < kept.b - kZero) {
      kept = std::move(r);
    } else if (std::fabs(r.b - kept.b) <= kZero) {
      if (r.strict && !kept.strict) kept.strict = true;
      if (r.hist.count() < kept.hist.count()) kept.hist = r.hist;
    }
  }
  rows = std::move(out);
}

struct Elimination {
  std::vector<Row> rows;
  bool infeasible = false;
};

Elimination eliminate(const std::vector<Row>& rows, std::size_t var, std::size_t eliminated,
                      bool chernikov) {
  Elimination res;
  std::vector<const Row*> pos, neg;
  for (const auto& r : rows) {
    if (r.a[var] > 0)
      pos.push_back(&r);
    else if (r.a[var] < 0)
      neg.push_back(&r);
    else
      res.rows.push_back(r);
  }
  for (const Row* p : pos) {
    for (const Row* n : neg) {
      std::bitset<kTracked> h = p->hist | n->hist;
      if (chernikov && h.count() > eliminated + 1) continue;
      const double sp = 1.0 / p->a[var];
      const double sn = -1.0 / n->a[var];
      Row c;
      c.a.resize(p->a.size());
      for (std::size_t i = 0; i < c.a.size(); ++i) c.a[i] = p->a[i] * sp + n->a[i] * sn;
      c.a[var] = 0.0;
      c.b = p->b * sp + n->b * sn;
      c.strict = p->strict || n->strict;
      c.hist = h;
      if (!normalize(c)) {
        if (!constant_holds(c)) {
          res.infeasible = true;
          return res;
        }
        continue;
      }
      res.rows.push_back(std::move(c));
    }
  }
  dedupe(res.rows);
  return res;
}

std::size_t pick_variable(const std::vector<Row>& rows, const std::vector<std::size_t>& remaining) {
  std::size_t best = remaining.front();
  long long best_cost = std::numeric_limits<long long>::max();
  for (std::size_t v : remaining) {
    long long p = 0, n = 0;
    for (const auto& r : rows) {
      if (r.a[v] > 0) ++p;
      if (r.a[v] < 0) --n;
    }
    const long long cost = p * (-n) - p + n;
    if (cost < best_cost) {
      best_cost = cost;
      best = v;
    }
  }
  return best;
}

// Builds the working rows. Returns false when a constant input row fails.
bool load(std::size_t width, const std::vector<HalfSpace>& in, bool slack_for_strict,
          std::size_t dim, std::vector<Row>& out) {
  std::size_t idx = 0;
  for (const auto& h : in) {
    if (h.coeffs.size() != dim) throw DimensionError("polytope row has wrong width");
    Row r;
    r.a.assign(width, 0.0);
    std::copy(h.coeffs.begin(), h.coeffs.end(), r.a.begin());
    r.b = h.rhs;
    r.strict = h.strict;
    if (slack_for_strict && h.strict) {
      r.strict = false;
      r.a[dim] = 1.0;
    }
    if (idx < kTracked) r.hist.set(idx);
    ++idx;
    if (!normalize(r)) {
      if (!constant_holds(r)) return false;
      continue;
    }
    out.push_back(std::move(r));
  }
  return true;
}

}  // namespace

bool feasible(std::size_t dim, const std::vector<HalfSpace>& rows) {
  const bool any_strict = std::any_of(rows.begin(), rows.end(), [](const HalfSpace& h) { return h.strict; });
  const std::size_t width = dim + (any_strict ? 1 : 0);
  std::vector<Row> work;
  if (!load(width, rows, true, dim, work)) return false;
  if (any_strict) {
    Row cap;
    cap.a.assign(width, 0.0);
    cap.a[dim] = 1.0;
    cap.b = 1.0;
    if (rows.size() < kTracked) cap.hist.set(rows.size());
    work.push_back(std::move(cap));
  }
  const bool chernikov = rows.size() + 1 <= kTracked;
  dedupe(work);

  std::vector<std::size_t> remaining(dim);
  for (std::size_t i = 0; i < dim; ++i) remaining[i] = i;
  std::size_t eliminated = 0;
  while (!remaining.empty()) {
    const std::size_t v = pick_variable(work, remaining);
    remaining.erase(std::find(remaining.begin(), remaining.end(), v));
    ++eliminated;
    auto step = eliminate(work, v, eliminated, chernikov);
    if (step.infeasible) return false;
    work = std::move(step.rows);
  }
  if (!any_strict) return true;
  // Only rows in t remain, all with positive t coefficient (positive combinations).
  double t_hi = std::numeric_limits<double>::infinity();
  for (const auto& r : work) {
    const double c = r.a[dim];
    if (c > 0) t_hi = std::min(t_hi, r.b / c);
  }
  return t_hi > kZero;
}

Interval project(std::size_t dim, const std::vector<HalfSpace>& rows, std::size_t axis) {
  if (axis >= dim) throw DimensionError("projection axis out of range");
  if (!feasible(dim, rows)) return Interval::empty();
  const bool any_strict = std::any_of(rows.begin(), rows.end(), [](const HalfSpace& h) { return h.strict; });
  std::vector<Row> work;
  load(dim, rows, false, dim, work);
  dedupe(work);
  std::vector<std::size_t> remaining;
  for (std::size_t i = 0; i < dim; ++i)
    if (i != axis) remaining.push_back(i);
  std::size_t eliminated = 0;
  while (!remaining.empty()) {
    const std::size_t v = pick_variable(work, remaining);
    remaining.erase(std::find(remaining.begin(), remaining.end(), v));
    ++eliminated;
    auto step = eliminate(work, v, eliminated, !any_strict && rows.size() <= kTracked);
    if (step.infeasible) return Interval::empty();
    work = std::move(step.rows);
  }
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = true, hi_open = true;
  for (const auto& r : work) {
    const double c = r.a[axis];
    if (c > 0) {
      const double v = r.b / c;
      if (v < hi - kZero) {
        hi = v;
        hi_open = r.strict;
      } else if (std::fabs(v - hi) <= kZero) {
        hi = std::min(hi, v);
        hi_open = hi_open || r.strict;
      }
    } else if (c < 0) {
      const double v = r.b / c;
      if (v > lo + kZero) {
        lo = v;
        lo_open = r.strict;
      } else if (std::fabs(v - lo) <= kZero) {
        lo = std::max(lo, v);
        lo_open = lo_open || r.strict;
      }
    }
  }
  return Interval(lo, hi, lo_open, hi_open);
}

}  // namespace mrb::fm
