#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mrb/errors.hpp"

namespace mrb {

// Absolute tolerance for endpoint and constraint comparisons.
inline constexpr double kEndpointTol = 1e-12;

class Interval {
 public:
  // Default-constructed interval is the canonical empty one.
  Interval();
  Interval(double lo, double hi, bool lo_open = false, bool hi_open = false);

  static Interval closed(double lo, double hi) { return {lo, hi, false, false}; }
  static Interval open(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval point(double x) { return {x, x, false, false}; }
  static Interval empty() { return {}; }
  static Interval whole();

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool lo_open() const { return lo_open_; }
  bool hi_open() const { return hi_open_; }

  bool is_empty() const;
  bool is_singleton() const;
  bool contains(double x) const;
  double width() const;
  Interval closure() const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  void normalize();

  double lo_;
  double hi_;
  bool lo_open_;
  bool hi_open_;
};

Interval intersect(const Interval& a, const Interval& b);

class Box {
 public:
  Box() = default;
  explicit Box(std::vector<Interval> dims);
  static Box whole(std::size_t dim);

  std::size_t dim() const { return dims_.size(); }
  const std::vector<Interval>& dims() const { return dims_; }
  const Interval& operator[](std::size_t i) const { return dims_[i]; }

  bool is_empty() const;
  bool contains(std::span<const double> x) const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<Interval> dims_;
};

struct HalfSpace {
  std::vector<double> coeffs;
  double rhs = 0.0;
  bool strict = false;

  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
};

// {x : coeffs·x <= rhs (or < when strict)} for every row.
class HPolytope {
 public:
  HPolytope() = default;
  explicit HPolytope(std::size_t dim, std::vector<HalfSpace> rows = {});
  static HPolytope from_interval(const Interval& iv);
  static HPolytope from_box(const Box& b);
  static HPolytope empty(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const std::vector<HalfSpace>& rows() const { return rows_; }

  HPolytope& add_row(std::vector<double> coeffs, double rhs, bool strict = false);
  // lo <= coeffs·x <= hi as two rows.
  HPolytope& add_range(const std::vector<double>& coeffs, double lo, double hi);
  HPolytope& add_equality(const std::vector<double>& coeffs, double value);

  bool is_empty() const;
  bool contains(std::span<const double> x) const;
  // Exact projection onto one coordinate axis.
  Interval project(std::size_t axis) const;

  friend bool operator==(const HPolytope&, const HPolytope&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<HalfSpace> rows_;
};

class GridSet {
 public:
  GridSet() = default;
  GridSet(std::vector<std::vector<double>> axes, std::vector<std::uint8_t> mask);
  static GridSet full(std::vector<std::vector<double>> axes);

  std::size_t dim() const { return axes_.size(); }
  std::size_t size() const { return mask_.size(); }
  const std::vector<std::vector<double>>& axes() const { return axes_; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }
  std::vector<double> point(std::size_t flat) const;
  std::size_t count() const;

  bool is_empty() const { return count() == 0; }
  // Membership of an arbitrary point: true iff it coincides with a marked grid point.
  bool contains(std::span<const double> x) const;

  friend bool operator==(const GridSet&, const GridSet&) = default;

 private:
  std::vector<std::vector<double>> axes_;
  std::vector<std::uint8_t> mask_;
};

std::vector<std::vector<double>> make_axes(std::span<const double> lower, std::span<const double> upper,
                                           std::size_t points_per_dim);
std::vector<double> make_axis_step(double lo, double hi, double step);

class IdentifiedSet;

struct SetUnion {
  std::size_t dim = 1;
  std::vector<IdentifiedSet> parts;

  friend bool operator==(const SetUnion&, const SetUnion&);
};

enum class SetKind { Interval, Box, Polytope, Grid, Union };

std::string kind_name(SetKind k);

class IdentifiedSet {
 public:
  using Repr = std::variant<Interval, Box, HPolytope, GridSet, SetUnion>;

  IdentifiedSet() : repr_(Interval{}) {}
  IdentifiedSet(Interval v) : repr_(std::move(v)) {}
  IdentifiedSet(Box v) : repr_(std::move(v)) {}
  IdentifiedSet(HPolytope v) : repr_(std::move(v)) {}
  IdentifiedSet(GridSet v) : repr_(std::move(v)) {}
  IdentifiedSet(SetUnion v) : repr_(std::move(v)) {}

  SetKind kind() const { return static_cast<SetKind>(repr_.index()); }
  std::size_t dim() const;
  const Repr& repr() const { return repr_; }

  template <class T>
  const T& as() const { return std::get<T>(repr_); }
  template <class T>
  bool holds() const { return std::holds_alternative<T>(repr_); }

  bool is_empty() const;
  bool contains(std::span<const double> x) const;

  friend bool operator==(const IdentifiedSet&, const IdentifiedSet&) = default;

 private:
  Repr repr_;
};

// Whole parameter space of the given kind and dimension.
IdentifiedSet whole_space(SetKind kind, std::size_t dim);

IdentifiedSet intersect(const IdentifiedSet& a, const IdentifiedSet& b);
bool is_empty(const IdentifiedSet& s);
bool is_singleton(const IdentifiedSet& s);
// a ⊆ b, exact for interval/box/polytope parts, pointwise when a grid is involved.
bool is_subset(const IdentifiedSet& a, const IdentifiedSet& b);
bool sets_equal(const IdentifiedSet& a, const IdentifiedSet& b);
HPolytope to_polytope(const IdentifiedSet& s);
GridSet evaluate_on_grid(const IdentifiedSet& s, const std::vector<std::vector<double>>& axes);
// Grid Hausdorff distance between membership masks; +inf when exactly one side is empty.
double hausdorff_on_grid(const IdentifiedSet& a, const IdentifiedSet& b,
                         const std::vector<std::vector<double>>& axes);

}  // namespace mrb
