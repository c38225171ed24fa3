#pragma once

namespace dw {

/// C-infinity step: 1 for s <= 0, 0 for s >= 1, built from exp(-1/u).
double smooth_step(double s);

/// Plateau bump: 1 on |t| <= 1/2, 0 on |t| >= 1, smooth in between.
/// Shared by the spatial cutoffs and the near-diagonal retention profile.
double plateau(double t);

}  // namespace dw
