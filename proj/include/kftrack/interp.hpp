///////////////////////////////////////////////////////////////////////////////
// interp.hpp: Tracklet gap-filling
// Linear interpolation over missing frames and Gaussian-process smoothed
// interpolation (squared-exponential kernel, per-component regression).
///////////////////////////////////////////////////////////////////////////////

#pragma once

#include <utility>
#include <vector>

#include "kftrack/motion.hpp"

namespace kftrack::interp {

using motion::BBox;

/// One track's output: (frame, box) samples with strictly increasing frames.
struct Tracklet {
  int id = 0;
  std::vector<std::pair<int, BBox>> samples;
};

/// Fills every interior gap of at most max_gap missing frames with the
/// linear blend of the surrounding boxes, componentwise on (x, y, w, h).
/// Existing samples are preserved exactly; longer gaps are left open.
Tracklet linear_interpolate(const Tracklet& t, int max_gap);

struct GsiResult {
  Tracklet tracklet;
  bool linear_fallback = false; // set when the kernel solve was abandoned
};

/// Gaussian-process regression of x_c, y_c, w, h against the frame index,
/// with kernel exp(-(f-f')^2 / (2 length_scale^2)) + noise_var on the
/// diagonal and the sample mean as prior. Returns smoothed values at the
/// observed frames plus predictions inside gaps of at most max_gap missing
/// frames. Falls back to linear_interpolate when the kernel matrix is too
/// ill-conditioned to solve.
GsiResult gsi_smooth(const Tracklet& t, double length_scale, double noise_var,
                     int max_gap);

} // namespace kftrack::interp
