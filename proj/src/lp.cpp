#include "mrb/lp.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace mrb::lp {
namespace {

template <class T>
struct Num;

template <>
struct Num<double> {
  static constexpr double eps = 1e-9;
  static bool pos(double v) { return v > eps; }
  static bool neg(double v) { return v < -eps; }
  static bool zero(double v) { return std::fabs(v) <= eps; }
};

template <>
struct Num<mpq_class> {
  static bool pos(const mpq_class& v) { return sgn(v) > 0; }
  static bool neg(const mpq_class& v) { return sgn(v) < 0; }
  static bool zero(const mpq_class& v) { return sgn(v) == 0; }
};

template <class T>
class Tableau {
 public:
  Tableau(std::vector<std::vector<T>> rows, std::vector<T> rhs, std::size_t cols)
      : t_(std::move(rows)), rhs_(std::move(rhs)), cols_(cols) {}

  std::vector<std::vector<T>>& rows() { return t_; }
  std::vector<T>& rhs() { return rhs_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c, std::vector<T>& obj, T& value) {
    const T piv = t_[r][c];
    for (std::size_t j = 0; j < cols_; ++j) t_[r][j] /= piv;
    rhs_[r] /= piv;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r || Num<T>::zero(t_[i][c])) continue;
      const T f = t_[i][c];
      for (std::size_t j = 0; j < cols_; ++j) t_[i][j] -= f * t_[r][j];
      rhs_[i] -= f * rhs_[r];
    }
    if (!Num<T>::zero(obj[c])) {
      const T f = obj[c];
      for (std::size_t j = 0; j < cols_; ++j) obj[j] -= f * t_[r][j];
      value += f * rhs_[r];
    }
    basis_[r] = c;
  }

  // Maximizes with reduced costs `obj` over columns [0, limit). Returns false when unbounded.
  bool optimize(std::vector<T>& obj, T& value, std::size_t limit) {
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j)
        if (Num<T>::pos(obj[j])) {
          enter = j;
          break;
        }
      if (enter == limit) return true;
      std::size_t leave = t_.size();
      T best{};
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (!Num<T>::pos(t_[i][enter])) continue;
        const T ratio = rhs_[i] / t_[i][enter];
        if (leave == t_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == t_.size()) return false;
      pivot(leave, enter, obj, value);
    }
  }

 private:
  std::vector<std::vector<T>> t_;
  std::vector<T> rhs_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
};

}  // namespace

template <class T>
Result<T> solve(const Problem<T>& p) {
  const std::size_t m = p.a.size();
  const std::size_t n = m ? p.a.front().size() : p.c.size();
  if (p.b.size() != m) throw std::invalid_argument("lp: row count mismatch");
  if (!p.c.empty() && p.c.size() != n) throw std::invalid_argument("lp: objective length mismatch");

  // Rows with nonnegative right-hand sides, one artificial column per row.
  std::vector<std::vector<T>> rows(m, std::vector<T>(n + m));
  std::vector<T> rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (p.a[i].size() != n) throw std::invalid_argument("lp: ragged constraint matrix");
    const bool flip = Num<T>::neg(p.b[i]);
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = flip ? T(-p.a[i][j]) : p.a[i][j];
    rhs[i] = flip ? T(-p.b[i]) : p.b[i];
    rows[i][n + i] = T(1);
  }
  Tableau<T> tab(std::move(rows), std::move(rhs), n + m);
  tab.basis().resize(m);
  for (std::size_t i = 0; i < m; ++i) tab.basis()[i] = n + i;

  // Phase one: maximize minus the sum of artificials.
  std::vector<T> obj(n + m);
  T value{};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) obj[j] += tab.rows()[i][j];
    value -= tab.rhs()[i];
  }
  tab.optimize(obj, value, n + m);
  Result<T> res;
  if (Num<T>::neg(value)) {
    res.status = Status::Infeasible;
    return res;
  }
  // Drive artificials out of the basis; rows that cannot pivot are redundant.
  for (std::size_t i = 0; i < tab.rows().size();) {
    if (tab.basis()[i] < n) {
      ++i;
      continue;
    }
    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j)
      if (!Num<T>::zero(tab.rows()[i][j])) {
        col = j;
        break;
      }
    if (col == n) {
      tab.rows().erase(tab.rows().begin() + static_cast<std::ptrdiff_t>(i));
      tab.rhs().erase(tab.rhs().begin() + static_cast<std::ptrdiff_t>(i));
      tab.basis().erase(tab.basis().begin() + static_cast<std::ptrdiff_t>(i));
      continue;
    }
    T dummy{};
    std::vector<T> none(n + m);
    tab.pivot(i, col, none, dummy);
    ++i;
  }

  // Phase two over the original columns only.
  std::vector<T> cost(n + m);
  value = T{};
  if (!p.c.empty()) {
    for (std::size_t j = 0; j < n; ++j) cost[j] = p.c[j];
    for (std::size_t i = 0; i < tab.rows().size(); ++i) {
      const T cb = p.c[tab.basis()[i]];
      if (Num<T>::zero(cb)) continue;
      for (std::size_t j = 0; j < n; ++j) cost[j] -= cb * tab.rows()[i][j];
      value += cb * tab.rhs()[i];
    }
    for (std::size_t i = 0; i < tab.rows().size(); ++i) cost[tab.basis()[i]] = T{};
    if (!tab.optimize(cost, value, n)) {
      res.status = Status::Unbounded;
      return res;
    }
  }
  res.status = Status::Optimal;
  res.value = value;
  res.x.assign(n, T{});
  for (std::size_t i = 0; i < tab.rows().size(); ++i)
    if (tab.basis()[i] < n) res.x[tab.basis()[i]] = tab.rhs()[i];
  return res;
}

template Result<double> solve<double>(const Problem<double>&);
template Result<mpq_class> solve<mpq_class>(const Problem<mpq_class>&);

}  // namespace mrb::lp
