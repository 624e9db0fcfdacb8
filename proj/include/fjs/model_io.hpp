#pragma once

#include <string>

#include "fjs/milp.hpp"

namespace fjs::milp {

/// CPLEX LP text: Minimize / Subject To / Bounds / Binaries / End, one
/// constraint per line in model order. Integral coefficients print without a
/// decimal point; rows holding a rational without a finite decimal
/// expansion are scaled to integers.
std::string write_lp(const MilpModel& model);

/// Fixed-column MPS (ROWS / COLUMNS / RHS / BOUNDS) with INTORG / INTEND
/// markers around binary columns. Names longer than eight characters keep
/// the field order and are separated by at least two spaces, so the file is
/// also valid free MPS.
std::string write_mps(const MilpModel& model);

}  // namespace fjs::milp
