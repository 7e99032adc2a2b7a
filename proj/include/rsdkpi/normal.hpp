#pragma once

namespace rsdkpi {

// Inverse of the standard normal CDF (Wichura's AS241, PPND16 precision).
// Defined for p in (0, 1); throws ValidationError outside.
double normal_quantile(double p);

}  // namespace rsdkpi
