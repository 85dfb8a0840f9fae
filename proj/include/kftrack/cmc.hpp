///////////////////////////////////////////////////////////////////////////////
// cmc.hpp: Camera motion compensation
// Estimates a 2x3 affine transform from point correspondences (least squares
// inside RANSAC) and applies it to boxes, track means, and covariances.
///////////////////////////////////////////////////////////////////////////////

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "kftrack/motion.hpp"

namespace kftrack::cmc {

using motion::BBox;
using motion::ModelKind;

/// p_curr = M * p_prev + T. M carries scale/rotation, T translation.
struct Affine {
  Eigen::Matrix2d M = Eigen::Matrix2d::Identity();
  Eigen::Vector2d T = Eigen::Vector2d::Zero();

  static Affine identity() { return {}; }
  Eigen::Vector2d apply(const Eigen::Vector2d& p) const { return M * p + T; }
};

/// Matched keypoint pairs between the previous and current frame.
struct Correspondences {
  std::vector<std::pair<Eigen::Vector2d, Eigen::Vector2d>> pairs;
};

struct AffineEstimate {
  Affine affine;
  std::vector<bool> inlier_mask;
};

/// RANSAC over 3-point minimal samples with a least-squares refit on the
/// best consensus set. A pair is an inlier when its reprojection error is
/// at most inlier_px. Deterministic for a given seed. Throws
/// EstimationFailure with fewer than 3 pairs or fewer than 3 inliers.
AffineEstimate estimate_affine(const Correspondences& c, int ransac_iters,
                               double inlier_px, std::uint64_t seed);

/// Maps the box's two defining corners and returns the axis-aligned box
/// spanning them. Throws ContractViolation on a degenerate result.
BBox warp_box(const Affine& a, const BBox& b);

/// Applies the affine to a track state: positions get M p + T, velocities
/// are rotated/scaled by M, size terms are scaled by M's column norms (or
/// by |det M| for area terms). The covariance is congruence-transformed by
/// the block lift of M onto the affected components.
filter::GaussianState compensate_state(const Affine& a,
                                       const filter::GaussianState& s,
                                       ModelKind kind);

/// Text format: one line per frame, "frame m00 m01 m10 m11 t0 t1".
std::map<int, Affine> read_affine_file(std::istream& in);
void write_affine_line(std::ostream& out, int frame, const Affine& a);

} // namespace kftrack::cmc
