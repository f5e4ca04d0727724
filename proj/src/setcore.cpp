#include "mrb/setcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "mrb/feasibility.hpp"

namespace mrb {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

// ---------------------------------------------------------------- Interval

Interval::Interval() : lo_(kInf), hi_(-kInf), lo_open_(true), hi_open_(true) {}

Interval::Interval(double lo, double hi, bool lo_open, bool hi_open)
    : lo_(lo), hi_(hi), lo_open_(lo_open), hi_open_(hi_open) {
  if (std::isnan(lo) || std::isnan(hi)) throw DomainError("interval endpoint is NaN");
  normalize();
}

Interval Interval::whole() { return {-kInf, kInf, true, true}; }

void Interval::normalize() {
  if (lo_ == -kInf) lo_open_ = true;
  if (hi_ == kInf) hi_open_ = true;
  bool empty = false;
  if (lo_ == kInf || hi_ == -kInf) {
    empty = true;
  } else if (lo_ > hi_ + kEndpointTol) {
    empty = true;
  } else if (std::fabs(lo_ - hi_) <= kEndpointTol) {
    empty = lo_open_ || hi_open_;
  }
  if (empty) *this = Interval();
}

bool Interval::is_empty() const { return lo_ == kInf; }

bool Interval::is_singleton() const { return !is_empty() && std::fabs(hi_ - lo_) <= kEndpointTol; }

bool Interval::contains(double x) const {
  if (is_empty()) return false;
  const bool above = lo_open_ ? x > lo_ + kEndpointTol : x >= lo_ - kEndpointTol;
  const bool below = hi_open_ ? x < hi_ - kEndpointTol : x <= hi_ + kEndpointTol;
  return above && below;
}

double Interval::width() const { return is_empty() ? 0.0 : hi_ - lo_; }

Interval Interval::closure() const {
  if (is_empty()) return *this;
  return {lo_, hi_, lo_ == -kInf, hi_ == kInf};
}

Interval intersect(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  double lo, hi;
  bool lo_open, hi_open;
  if (a.lo() > b.lo() + kEndpointTol) {
    lo = a.lo();
    lo_open = a.lo_open();
  } else if (b.lo() > a.lo() + kEndpointTol) {
    lo = b.lo();
    lo_open = b.lo_open();
  } else {
    lo = std::max(a.lo(), b.lo());
    lo_open = a.lo_open() || b.lo_open();
  }
  if (a.hi() < b.hi() - kEndpointTol) {
    hi = a.hi();
    hi_open = a.hi_open();
  } else if (b.hi() < a.hi() - kEndpointTol) {
    hi = b.hi();
    hi_open = b.hi_open();
  } else {
    hi = std::min(a.hi(), b.hi());
    hi_open = a.hi_open() || b.hi_open();
  }
  return {lo, hi, lo_open, hi_open};
}

// --------------------------------------------------------------------- Box

Box::Box(std::vector<Interval> dims) : dims_(std::move(dims)) {
  if (std::any_of(dims_.begin(), dims_.end(), [](const Interval& i) { return i.is_empty(); }))
    std::fill(dims_.begin(), dims_.end(), Interval::empty());
}

Box Box::whole(std::size_t dim) { return Box(std::vector<Interval>(dim, Interval::whole())); }

bool Box::is_empty() const { return dims_.empty() ? false : dims_.front().is_empty(); }

bool Box::contains(std::span<const double> x) const {
  if (x.size() != dims_.size()) throw DimensionError("point dimension does not match box");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!dims_[i].contains(x[i])) return false;
  return true;
}

// --------------------------------------------------------------- HPolytope

HPolytope::HPolytope(std::size_t dim, std::vector<HalfSpace> rows) : dim_(dim), rows_(std::move(rows)) {
  for (const auto& r : rows_)
    if (r.coeffs.size() != dim_) throw DimensionError("polytope row has wrong width");
}

HPolytope HPolytope::empty(std::size_t dim) {
  HPolytope p(dim);
  p.add_row(std::vector<double>(dim, 0.0), -1.0);
  return p;
}

HPolytope HPolytope::from_interval(const Interval& iv) {
  if (iv.is_empty()) return empty(1);
  HPolytope p(1);
  if (std::isfinite(iv.hi())) p.add_row({1.0}, iv.hi(), iv.hi_open());
  if (std::isfinite(iv.lo())) p.add_row({-1.0}, -iv.lo(), iv.lo_open());
  return p;
}

HPolytope HPolytope::from_box(const Box& b) {
  if (b.is_empty()) return empty(b.dim());
  HPolytope p(b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i) {
    std::vector<double> e(b.dim(), 0.0);
    const Interval& iv = b[i];
    if (std::isfinite(iv.hi())) {
      e[i] = 1.0;
      p.add_row(e, iv.hi(), iv.hi_open());
    }
    if (std::isfinite(iv.lo())) {
      e[i] = -1.0;
      p.add_row(e, -iv.lo(), iv.lo_open());
    }
  }
  return p;
}

HPolytope& HPolytope::add_row(std::vector<double> coeffs, double rhs, bool strict) {
  if (coeffs.size() != dim_) throw DimensionError("polytope row has wrong width");
  rows_.push_back({std::move(coeffs), rhs, strict});
  return *this;
}

HPolytope& HPolytope::add_range(const std::vector<double>& coeffs, double lo, double hi) {
  if (std::isfinite(hi)) add_row(coeffs, hi);
  if (std::isfinite(lo)) {
    std::vector<double> neg(coeffs);
    for (double& v : neg) v = -v;
    add_row(std::move(neg), -lo);
  }
  return *this;
}

HPolytope& HPolytope::add_equality(const std::vector<double>& coeffs, double value) {
  return add_range(coeffs, value, value);
}

bool HPolytope::is_empty() const { return !fm::feasible(dim_, rows_); }

bool HPolytope::contains(std::span<const double> x) const {
  if (x.size() != dim_) throw DimensionError("point dimension does not match polytope");
  for (const auto& r : rows_) {
    double v = -r.rhs;
    for (std::size_t i = 0; i < dim_; ++i) v += r.coeffs[i] * x[i];
    if (r.strict ? !(v < -kEndpointTol) : !(v <= kEndpointTol)) return false;
  }
  return true;
}

Interval HPolytope::project(std::size_t axis) const { return fm::project(dim_, rows_, axis); }

// ----------------------------------------------------------------- GridSet

GridSet::GridSet(std::vector<std::vector<double>> axes, std::vector<std::uint8_t> mask)
    : axes_(std::move(axes)), mask_(std::move(mask)) {
  std::size_t n = 1;
  for (const auto& a : axes_) n *= a.size();
  if (axes_.empty()) n = 0;
  if (n != mask_.size()) throw DimensionError("grid mask length does not match axes");
}

GridSet GridSet::full(std::vector<std::vector<double>> axes) {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.size();
  return GridSet(std::move(axes), std::vector<std::uint8_t>(n, 1));
}

std::vector<double> GridSet::point(std::size_t flat) const {
  std::vector<double> p(axes_.size());
  for (std::size_t d = axes_.size(); d-- > 0;) {
    const std::size_t n = axes_[d].size();
    p[d] = axes_[d][flat % n];
    flat /= n;
  }
  return p;
}

std::size_t GridSet::count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

bool GridSet::contains(std::span<const double> x) const {
  if (x.size() != axes_.size()) throw DimensionError("point dimension does not match grid");
  std::size_t flat = 0;
  for (std::size_t d = 0; d < axes_.size(); ++d) {
    const auto& ax = axes_[d];
    auto it = std::lower_bound(ax.begin(), ax.end(), x[d] - 1e-9);
    if (it == ax.end() || std::fabs(*it - x[d]) > 1e-9) return false;
    flat = flat * ax.size() + static_cast<std::size_t>(it - ax.begin());
  }
  return mask_[flat] != 0;
}

std::vector<std::vector<double>> make_axes(std::span<const double> lower, std::span<const double> upper,
                                           std::size_t points_per_dim) {
  if (lower.size() != upper.size()) throw DimensionError("grid bounds differ in dimension");
  std::vector<std::vector<double>> axes;
  for (std::size_t d = 0; d < lower.size(); ++d) {
    std::vector<double> ax(points_per_dim);
    for (std::size_t i = 0; i < points_per_dim; ++i)
      ax[i] = points_per_dim == 1 ? lower[d]
                                  : lower[d] + (upper[d] - lower[d]) * static_cast<double>(i) /
                                                   static_cast<double>(points_per_dim - 1);
    axes.push_back(std::move(ax));
  }
  return axes;
}

std::vector<double> make_axis_step(double lo, double hi, double step) {
  const auto n = static_cast<std::size_t>(std::llround((hi - lo) / step));
  std::vector<double> ax(n + 1);
  for (std::size_t i = 0; i <= n; ++i) ax[i] = lo + static_cast<double>(i) * step;
  return ax;
}

// ---------------------------------------------------------- IdentifiedSet

bool operator==(const SetUnion& a, const SetUnion& b) { return a.dim == b.dim && a.parts == b.parts; }

std::string kind_name(SetKind k) {
  switch (k) {
    case SetKind::Interval: return "interval";
    case SetKind::Box: return "box";
    case SetKind::Polytope: return "polytope";
    case SetKind::Grid: return "grid";
    case SetKind::Union: return "union";
  }
  return "?";
}

std::size_t IdentifiedSet::dim() const {
  switch (kind()) {
    case SetKind::Interval: return 1;
    case SetKind::Box: return as<Box>().dim();
    case SetKind::Polytope: return as<HPolytope>().dim();
    case SetKind::Grid: return as<GridSet>().dim();
    case SetKind::Union: return as<SetUnion>().dim;
  }
  return 0;
}

bool IdentifiedSet::is_empty() const { return mrb::is_empty(*this); }

bool IdentifiedSet::contains(std::span<const double> x) const {
  if (x.size() != dim()) throw DimensionError("point dimension does not match set");
  switch (kind()) {
    case SetKind::Interval: return as<Interval>().contains(x[0]);
    case SetKind::Box: return as<Box>().contains(x);
    case SetKind::Polytope: return as<HPolytope>().contains(x);
    case SetKind::Grid: return as<GridSet>().contains(x);
    case SetKind::Union:
      for (const auto& p : as<SetUnion>().parts)
        if (p.contains(x)) return true;
      return false;
  }
  return false;
}

IdentifiedSet whole_space(SetKind kind, std::size_t dim) {
  switch (kind) {
    case SetKind::Interval:
      if (dim != 1) throw DimensionError("interval space must be one-dimensional");
      return Interval::whole();
    case SetKind::Box: return Box::whole(dim);
    case SetKind::Polytope: return HPolytope(dim);
    case SetKind::Union: return SetUnion{dim, {IdentifiedSet(HPolytope(dim))}};
    case SetKind::Grid: break;
  }
  throw UnsupportedError("a grid parameter space needs explicit axes");
}

namespace {

Box as_box(const IdentifiedSet& s) {
  if (s.holds<Interval>()) return Box({s.as<Interval>()});
  return s.as<Box>();
}

GridSet mask_grid(const GridSet& g, const IdentifiedSet& other) {
  std::vector<std::uint8_t> mask(g.mask());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    const auto p = g.point(i);
    mask[i] = other.contains(p) ? 1 : 0;
  }
  return GridSet(g.axes(), std::move(mask));
}

bool is_convex_kind(SetKind k) { return k == SetKind::Interval || k == SetKind::Box || k == SetKind::Polytope; }

int level(SetKind k) { return k == SetKind::Interval ? 0 : k == SetKind::Box ? 1 : 2; }

}  // namespace

HPolytope to_polytope(const IdentifiedSet& s) {
  switch (s.kind()) {
    case SetKind::Interval: return HPolytope::from_interval(s.as<Interval>());
    case SetKind::Box: return HPolytope::from_box(s.as<Box>());
    case SetKind::Polytope: return s.as<HPolytope>();
    default: break;
  }
  throw UnsupportedError("cannot convert " + kind_name(s.kind()) + " to a polytope");
}

IdentifiedSet intersect(const IdentifiedSet& a, const IdentifiedSet& b) {
  if (a.dim() != b.dim())
    throw DimensionError("cannot intersect sets of dimension " + std::to_string(a.dim()) + " and " +
                         std::to_string(b.dim()));
  if (a.holds<SetUnion>() || b.holds<SetUnion>()) {
    const SetUnion& u = a.holds<SetUnion>() ? a.as<SetUnion>() : b.as<SetUnion>();
    const IdentifiedSet& other = a.holds<SetUnion>() ? b : a;
    SetUnion out{u.dim, {}};
    for (const auto& p : u.parts) {
      IdentifiedSet q = intersect(p, other);
      if (!is_empty(q)) out.parts.push_back(std::move(q));
    }
    return out;
  }
  if (a.holds<GridSet>()) {
    const GridSet& g = a.as<GridSet>();
    if (b.holds<GridSet>() && b.as<GridSet>().axes() == g.axes()) {
      std::vector<std::uint8_t> mask(g.mask());
      const auto& mb = b.as<GridSet>().mask();
      for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = (mask[i] && mb[i]) ? 1 : 0;
      return GridSet(g.axes(), std::move(mask));
    }
    return mask_grid(g, b);
  }
  if (b.holds<GridSet>()) return mask_grid(b.as<GridSet>(), a);
  if (a.holds<Interval>() && b.holds<Interval>()) return intersect(a.as<Interval>(), b.as<Interval>());
  if (!a.holds<HPolytope>() && !b.holds<HPolytope>()) {
    const Box x = as_box(a), y = as_box(b);
    std::vector<Interval> dims(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) dims[i] = intersect(x[i], y[i]);
    return Box(std::move(dims));
  }
  HPolytope pa = to_polytope(a);
  const HPolytope pb = to_polytope(b);
  std::vector<HalfSpace> rows(pa.rows());
  rows.insert(rows.end(), pb.rows().begin(), pb.rows().end());
  HPolytope out(pa.dim(), std::move(rows));
  if (out.is_empty()) return HPolytope::empty(pa.dim());
  return out;
}

bool is_empty(const IdentifiedSet& s) {
  switch (s.kind()) {
    case SetKind::Interval: return s.as<Interval>().is_empty();
    case SetKind::Box: return s.as<Box>().is_empty();
    case SetKind::Polytope: return s.as<HPolytope>().is_empty();
    case SetKind::Grid: return s.as<GridSet>().is_empty();
    case SetKind::Union:
      for (const auto& p : s.as<SetUnion>().parts)
        if (!is_empty(p)) return false;
      return true;
  }
  return true;
}

namespace {

std::optional<std::vector<double>> singleton_point(const IdentifiedSet& s) {
  switch (s.kind()) {
    case SetKind::Interval: {
      const auto& iv = s.as<Interval>();
      if (!iv.is_singleton()) return std::nullopt;
      return std::vector<double>{iv.lo()};
    }
    case SetKind::Box: {
      const auto& b = s.as<Box>();
      if (b.is_empty()) return std::nullopt;
      std::vector<double> p;
      for (const auto& iv : b.dims()) {
        if (!iv.is_singleton()) return std::nullopt;
        p.push_back(iv.lo());
      }
      return p;
    }
    case SetKind::Polytope: {
      const auto& poly = s.as<HPolytope>();
      std::vector<double> p;
      for (std::size_t i = 0; i < poly.dim(); ++i) {
        const Interval iv = poly.project(i);
        if (!iv.is_singleton()) return std::nullopt;
        p.push_back(iv.lo());
      }
      return p;
    }
    case SetKind::Grid: {
      const auto& g = s.as<GridSet>();
      if (g.count() != 1) return std::nullopt;
      const auto it = std::find(g.mask().begin(), g.mask().end(), std::uint8_t{1});
      return g.point(static_cast<std::size_t>(it - g.mask().begin()));
    }
    case SetKind::Union: {
      std::optional<std::vector<double>> pt;
      for (const auto& part : s.as<SetUnion>().parts) {
        if (is_empty(part)) continue;
        auto q = singleton_point(part);
        if (!q) return std::nullopt;
        if (pt) {
          for (std::size_t i = 0; i < q->size(); ++i)
            if (std::fabs((*q)[i] - (*pt)[i]) > kEndpointTol) return std::nullopt;
        } else {
          pt = q;
        }
      }
      return pt;
    }
  }
  return std::nullopt;
}

std::vector<Interval> difference(const Interval& a, const Interval& b) {
  if (intersect(a, b).is_empty()) return {a};
  std::vector<Interval> out;
  Interval left(a.lo(), b.lo(), a.lo_open(), !b.lo_open());
  Interval right(b.hi(), a.hi(), !b.hi_open(), a.hi_open());
  if (!left.is_empty()) out.push_back(left);
  if (!right.is_empty()) out.push_back(right);
  return out;
}

std::vector<Box> difference(const Box& a, const Box& b) {
  if (a.is_empty()) return {};
  bool disjoint = false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (intersect(a[i], b[i]).is_empty()) disjoint = true;
  if (disjoint) return {a};
  std::vector<Box> out;
  std::vector<Interval> cur(a.dims());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (const auto& piece : difference(cur[i], b[i])) {
      std::vector<Interval> dims(cur);
      dims[i] = piece;
      out.emplace_back(std::move(dims));
    }
    cur[i] = intersect(cur[i], b[i]);
  }
  return out;
}

HalfSpace negate(const HalfSpace& h) {
  HalfSpace n{h.coeffs, -h.rhs, !h.strict};
  for (double& v : n.coeffs) v = -v;
  return n;
}

std::vector<HPolytope> difference(const HPolytope& a, const HPolytope& b) {
  std::vector<HalfSpace> both(a.rows());
  both.insert(both.end(), b.rows().begin(), b.rows().end());
  if (!fm::feasible(a.dim(), both)) return {a};
  std::vector<HPolytope> out;
  std::vector<HalfSpace> cur(a.rows());
  for (const auto& r : b.rows()) {
    std::vector<HalfSpace> piece(cur);
    piece.push_back(negate(r));
    if (fm::feasible(a.dim(), piece)) out.emplace_back(a.dim(), std::move(piece));
    cur.push_back(r);
  }
  return out;
}

template <class T>
std::vector<T> subtract_all(std::vector<T> pieces, const std::vector<T>& cover) {
  for (const auto& c : cover) {
    std::vector<T> next;
    for (const auto& p : pieces)
      for (auto& q : difference(p, c)) next.push_back(std::move(q));
    pieces = std::move(next);
    if (pieces.empty()) break;
  }
  return pieces;
}

void flatten(const IdentifiedSet& s, std::vector<const IdentifiedSet*>& out) {
  if (s.holds<SetUnion>()) {
    for (const auto& p : s.as<SetUnion>().parts) flatten(p, out);
  } else if (!is_empty(s)) {
    out.push_back(&s);
  }
}

// Remaining uncovered convex pieces of a, returned as generic sets.
std::vector<IdentifiedSet> uncovered(const IdentifiedSet& a, const std::vector<const IdentifiedSet*>& cover) {
  int lvl = level(a.kind());
  for (const auto* c : cover) lvl = std::max(lvl, level(c->kind()));
  std::vector<IdentifiedSet> rest;
  if (lvl == 0) {
    std::vector<Interval> cv;
    for (const auto* c : cover) cv.push_back(c->as<Interval>());
    for (auto& p : subtract_all(std::vector<Interval>{a.as<Interval>()}, cv)) rest.emplace_back(p);
  } else if (lvl == 1) {
    std::vector<Box> cv;
    for (const auto* c : cover) cv.push_back(as_box(*c));
    for (auto& p : subtract_all(std::vector<Box>{as_box(a)}, cv)) rest.emplace_back(p);
  } else {
    std::vector<HPolytope> cv;
    for (const auto* c : cover) cv.push_back(to_polytope(*c));
    for (auto& p : subtract_all(std::vector<HPolytope>{to_polytope(a)}, cv)) rest.emplace_back(p);
  }
  return rest;
}

}  // namespace

bool is_singleton(const IdentifiedSet& s) { return singleton_point(s).has_value(); }

bool is_subset(const IdentifiedSet& a, const IdentifiedSet& b) {
  if (a.dim() != b.dim()) throw DimensionError("subset test across dimensions");
  if (is_empty(a)) return true;
  if (a.holds<SetUnion>()) {
    for (const auto& p : a.as<SetUnion>().parts)
      if (!is_subset(p, b)) return false;
    return true;
  }
  if (a.holds<GridSet>()) {
    const auto& g = a.as<GridSet>();
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g.mask()[i] && !b.contains(g.point(i))) return false;
    return true;
  }
  std::vector<const IdentifiedSet*> parts;
  flatten(b, parts);
  std::vector<const IdentifiedSet*> convex, grids;
  for (const auto* p : parts) (is_convex_kind(p->kind()) ? convex : grids).push_back(p);
  const auto rest = uncovered(a, convex);
  for (const auto& piece : rest) {
    // A grid can only cover a piece that is a single point.
    const auto pt = singleton_point(piece);
    if (!pt) return false;
    bool hit = false;
    for (const auto* g : grids) hit = hit || g->contains(*pt);
    if (!hit) return false;
  }
  return true;
}

bool sets_equal(const IdentifiedSet& a, const IdentifiedSet& b) { return is_subset(a, b) && is_subset(b, a); }

GridSet evaluate_on_grid(const IdentifiedSet& s, const std::vector<std::vector<double>>& axes) {
  if (axes.size() != s.dim()) throw DimensionError("grid dimension does not match set");
  if (s.holds<GridSet>() && s.as<GridSet>().axes() == axes) return s.as<GridSet>();
  GridSet g = GridSet::full(axes);
  return mask_grid(g, s);
}

double hausdorff_on_grid(const IdentifiedSet& a, const IdentifiedSet& b,
                         const std::vector<std::vector<double>>& axes) {
  const GridSet ga = evaluate_on_grid(a, axes);
  const GridSet gb = evaluate_on_grid(b, axes);
  const bool ea = ga.is_empty(), eb = gb.is_empty();
  if (ea && eb) return 0.0;
  if (ea != eb) return kInf;
  if (axes.size() == 1) {
    const auto& ax = axes[0];
    const std::size_t n = ax.size();
    // Distance from every grid index to the nearest marked index of each mask.
    auto nearest = [&](const std::vector<std::uint8_t>& m) {
      std::vector<double> d(n, kInf);
      double last = -kInf;
      for (std::size_t i = 0; i < n; ++i) {
        if (m[i]) last = ax[i];
        d[i] = ax[i] - last;
      }
      last = kInf;
      for (std::size_t i = n; i-- > 0;) {
        if (m[i]) last = ax[i];
        d[i] = std::min(d[i], last - ax[i]);
      }
      return d;
    };
    const auto da = nearest(ga.mask()), db = nearest(gb.mask());
    double h = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (ga.mask()[i]) h = std::max(h, db[i]);
      if (gb.mask()[i]) h = std::max(h, da[i]);
    }
    return h;
  }
  auto directed = [](const GridSet& from, const GridSet& to) {
    std::vector<std::vector<double>> targets;
    for (std::size_t i = 0; i < to.size(); ++i)
      if (to.mask()[i]) targets.push_back(to.point(i));
    double h = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) {
      if (!from.mask()[i] || to.mask()[i]) continue;
      const auto p = from.point(i);
      double best = kInf;
      for (const auto& t : targets) {
        double s = 0.0;
        for (std::size_t d = 0; d < p.size(); ++d) s += (p[d] - t[d]) * (p[d] - t[d]);
        best = std::min(best, s);
      }
      h = std::max(h, std::sqrt(best));
    }
    return h;
  };
  return std::max(directed(ga, gb), directed(gb, ga));
}

}  // namespace mrb
