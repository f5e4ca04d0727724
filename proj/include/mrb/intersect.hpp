#pragma once

#include <vector>

#include "mrb/lattice.hpp"
#include "mrb/moments.hpp"
#include "mrb/setcore.hpp"

namespace mrb {

struct SharpBounds {
  double gamma_lower = 0.0;  // max over z of E[lower | Z=z]
  double gamma_upper = 0.0;  // min over z of E[upper | Z=z]
  bool refuted = false;
};

SharpBounds sharp_bounds(const BoundsMoments& m);

// Intersection over columns of [E[h Y_lower]/E[h], E[h Y_upper]/E[h]].
Interval outer_set(const BoundsMoments& m, const Instrument& h);

// Existence of positive-weight support points with the stated property (tolerance 1e-12).
struct MassConditions {
  bool lower_le_gamma_upper = false;  // some z with E[lower|z] <= gamma_upper
  bool upper_ge_gamma_lower = false;  // some z with E[upper|z] >= gamma_lower
  bool upper_at_gamma_upper = false;  // some z with E[upper|z] == gamma_upper
  bool lower_at_gamma_lower = false;  // some z with E[lower|z] == gamma_lower
};

MassConditions mass_conditions(const BoundsMoments& m);

// Five-case bound given the sharp-bound endpoints and the two mass conditions; endpoints
// adjacent to a zero-mass condition are open.
Interval five_case_interval(double gamma_lower, double gamma_upper, bool lower_le_gamma_upper, bool upper_ge_gamma_lower);

Interval mrb_intersection(const BoundsMoments& m);

// Set of theta reachable as a singleton outer set: [gamma_upper, gamma_lower] with an endpoint open
// when no support point attains it. Requires a refuted model.
Interval pointid_region(const BoundsMoments& m);

// Two-column instrument whose outer set is exactly {theta}.
Instrument construct_pointid_instrument(const BoundsMoments& m, double theta);

// Finite family whose assumptions are the moment conditions of single instrument columns.
AssumptionFamily instrument_family(const BoundsMoments& m, const std::vector<std::vector<double>>& columns);

}  // namespace mrb
