#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

// Dense two-phase simplex with Bland's rule for small standard-form programs:
//   maximize c·x  subject to  A x = b,  x >= 0.
// Instantiated for double (tolerance-based) and mpq_class (exact).
namespace mrb::lp {

enum class Status { Optimal, Infeasible, Unbounded };

template <class T>
struct Result {
  Status status = Status::Infeasible;
  T value{};
  std::vector<T> x;
};

template <class T>
struct Problem {
  std::vector<std::vector<T>> a;
  std::vector<T> b;
  std::vector<T> c;  // empty: feasibility only
};

template <class T>
Result<T> solve(const Problem<T>& p);

extern template Result<double> solve<double>(const Problem<double>&);
extern template Result<mpq_class> solve<mpq_class>(const Problem<mpq_class>&);

}  // namespace mrb::lp
