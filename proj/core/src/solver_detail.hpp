#ifndef IDRS_SOLVER_DETAIL_HPP
#define IDRS_SOLVER_DETAIL_HPP

#include "idrs/schedule.hpp"
#include "idrs/vec.hpp"

namespace idrs::detail {

// Relaxation checked against twice the fixed-point bound (Douglas-Rachford
// and primal-dual sweeps).
double dr_lambda(const InertialSchedule& sched, long n);
double inertial_alpha(const InertialSchedule& sched, long n);
RealVector extrapolate(const RealVector& x_cur, const RealVector& x_prev, double an);

} // namespace idrs::detail

#endif
