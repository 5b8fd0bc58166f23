#pragma once

#include "platoon/polynomial.hpp"

namespace platoon {

/// Strict Hurwitz test by the Routh array. Any first-column entry within
/// 1e-9 of zero relative to the working row scale is treated as a failed
/// strictness margin, so imaginary-axis roots and degenerate arrays report false
/// instead of guessing a sign. A nonzero constant polynomial is vacuously stable.
bool hurwitz(const Polynomial& p);

} // namespace platoon
