///////////////////////////////////////////////////////////////////////////////
// motion.hpp: Bounding-box state parameterizations and LinearModel builders
// Three constant-velocity templates: scale/aspect (7D), width/height (8D),
// and a bare point model (4D, position-only measurements).
///////////////////////////////////////////////////////////////////////////////

#pragma once

#include <string_view>

#include "kftrack/filter.hpp"

namespace kftrack::motion {

using filter::GaussianState;
using filter::LinearModel;
using filter::Mat;
using filter::Vec;

/// Axis-aligned box, top-left corner + extent, in pixels.
struct BBox {
  double x = 0.0; // left
  double y = 0.0; // top
  double w = 0.0;
  double h = 0.0;

  double cx() const { return x + 0.5 * w; }
  double cy() const { return y + 0.5 * h; }
  double right() const { return x + w; }
  double bottom() const { return y + h; }
  double area() const { return w * h; }
  bool valid() const { return w > 0.0 && h > 0.0; }

  static BBox from_center(double cx, double cy, double w, double h) {
    return {cx - 0.5 * w, cy - 0.5 * h, w, h};
  }
};

enum class ModelKind {
  Sort,  // [xc, yc, s, r, vx, vy, vs]; s = area, r = aspect (constant)
  Wh,    // [xc, yc, w, h, vx, vy, vw, vh]
  Point, // [x, vx, y, vy]; only position measured
};

ModelKind model_kind_from_string(std::string_view name);
const char* to_string(ModelKind kind);

int state_dim(ModelKind kind);
int obs_dim(ModelKind kind);

/// Constant-velocity model for the given parameterization.
///
/// F is the identity plus dt on the velocity couplings, H selects the
/// observed components. Q is diagonal with (q_scale)^2 on observed terms
/// and (0.1 q_scale)^2 on velocities; R is diagonal (r_scale)^2. For the
/// Sort kind the area terms are additionally scaled by area_hint so that
/// pixel^4 units stay consistent, and the dimensionless aspect term uses
/// a 0.01 factor.
LinearModel build_model(ModelKind kind, double dt, double q_scale,
                        double r_scale, double area_hint = 100.0);

/// Encodes a box as a state vector with zero velocities.
Vec bbox_to_state(ModelKind kind, const BBox& b);

/// Decodes the observed components of a state back into a box. The Point
/// kind carries no extent, so a unit box centered on the position is
/// returned. Throws DegenerateState when a filtered Sort/Wh state has
/// non-positive size.
BBox state_to_bbox(ModelKind kind, const Vec& v);

/// Measurement vector (the observed components) for a box.
Vec bbox_to_measurement(ModelKind kind, const BBox& b);

/// Fresh track belief: mean from the box, block-diagonal covariance with
/// broad velocity uncertainty so the first updates can establish motion.
GaussianState initial_state(ModelKind kind, const BBox& b, double q_scale,
                            double r_scale);

} // namespace kftrack::motion
