#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "mrb/moments.hpp"
#include "mrb/setcore.hpp"

// Brute-force reference computations. Nothing here calls into the closed-form model code.
namespace mrb::oracle {

struct OracleConfig {
  double grid_step = 0.01;
  int instrument_sweep_resolution = 200;
  std::uint64_t seed = 0;
};

// ---------------------------------------------------------------- intersection bounds

// Grid points satisfying lower_mean[z] <= theta <= upper_mean[z] at every support point.
GridSet intersection_idset(const BoundsMoments& m, const std::vector<double>& axis);
GridSet intersection_idset(const BoundsMoments& m, double step);

// One normalized instrument column: conditional-mean ratios of the lower and upper bound.
struct SweepColumn {
  double lower = 0.0;
  double upper = 0.0;
};

// Columns s·1{z=a}/P(a) + (1-s)·1{z=b}/P(b) over all ordered support pairs and s on a uniform grid.
std::vector<SweepColumn> sweep_columns(const BoundsMoments& m, int resolution);

// Output axis used by the sweep: [min lower_mean, max upper_mean] split into `resolution` steps.
std::vector<double> sweep_axis(const BoundsMoments& m, int resolution);

// Grid points point-identified (up to one output step) by some two-column sweep instrument.
GridSet mrb_by_instrument_sweep(const BoundsMoments& m, const OracleConfig& cfg);

// ------------------------------------------------------------------ binary IV

// How the instrument-independence assumption is encoded in the latent distribution.
enum class BivIndependence {
  // Each potential outcome Y_dz is independent of Z on its own; treatment unrestricted.
  PerOutcome,
  // The potential-outcome vector (Y11, Y10, Y01, Y00) is independent of Z; treatment unrestricted.
  OutcomeVector,
  // (Y11, Y10, Y01, Y00, D(0), D(1)) is jointly independent of Z.
  JointWithTreatment,
};

const char* to_string(BivIndependence k);

// Cells ordered (q11, q01, q10, q00) for z = 0 and z = 1.
using BivCellsQ = std::array<std::array<mpq_class, 4>, 2>;

bool binaryiv_consistent(const BinaryIVData& d, BivCombo combo,
                         BivIndependence ind = BivIndependence::PerOutcome);
bool binaryiv_feasible(const BinaryIVData& d, BivCombo combo, const std::array<double, 4>& theta,
                       BivIndependence ind = BivIndependence::PerOutcome);
bool binaryiv_feasible_exact(const BivCellsQ& cells, BivCombo combo, const std::array<mpq_class, 4>& theta,
                             BivIndependence ind = BivIndependence::PerOutcome);
bool binaryiv_consistent_exact(const BivCellsQ& cells, BivCombo combo,
                               BivIndependence ind = BivIndependence::PerOutcome);
// max dir·theta over the feasible set; nullopt when the combination is refuted.
std::optional<double> binaryiv_support(const BinaryIVData& d, BivCombo combo, const std::array<double, 4>& dir,
                                       BivIndependence ind = BivIndependence::PerOutcome);
// Membership mask over axis^4 (coordinate order θ11, θ10, θ01, θ00), found by exact slicing:
// each coordinate's feasible range is computed by two linear programs given the coordinates fixed so far.
GridSet binaryiv_grid(const BinaryIVData& d, BivCombo combo, const std::vector<double>& axis,
                      BivIndependence ind = BivIndependence::PerOutcome);

// Largest amount by which two instrumental inequalities can be violated simultaneously over all
// data distributions (exact). A nonpositive value means the pair can never fail together.
mpq_class max_joint_violation(int first, int second);

// -------------------------------------------------------------------- AMIV

// Range of theta_d = sum_t P(Z=t)·mu_t over nondecreasing mean sequences mu on a step grid within the
// outcome support, with mu_t inside [q_lower_dt, q_upper_dt] and mu constant from z_star on.
// nullopt when no sequence exists for that d.
std::array<std::optional<Interval>, 2> amiv_bounds(const AMIVMoments& m, std::size_t z_star, double step);

// ------------------------------------------------------------ random sets

// True when P(Y | X=x) is the distribution of a selection of the random set at theta, decided by a
// transport feasibility problem between random-set outcomes and observed outcomes.
bool selectionable(const RandomSetSpec& spec, const std::vector<double>& p_y, std::span<const double> theta);

// Grid of theta at which every covariate's outcome distribution is selectionable.
GridSet random_set_sharp_set(const FiniteCapacityModel& model);

}  // namespace mrb::oracle
