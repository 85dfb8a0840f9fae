///////////////////////////////////////////////////////////////////////////////
// metrics.hpp: Trajectory accuracy metrics and timing aggregation
// Frame pairing, average displacement error, average Mahalanobis distance,
// coverage accounting, and the reduction from multi-track output to a single
// predicted trajectory.
///////////////////////////////////////////////////////////////////////////////

#pragma once

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "kftrack/motion.hpp"

namespace kftrack::metrics {

using motion::BBox;

/// Ordered (frame, point) sequence; points are box centers in pixels.
struct Trajectory {
  std::vector<std::pair<int, Eigen::Vector2d>> points;
};

/// (predicted, truth) point pair on a common frame.
using PointPair = std::pair<Eigen::Vector2d, Eigen::Vector2d>;

/// Covariance metric for the Mahalanobis form; sigma + epsilon*I must be PD.
struct AmdContext {
  Eigen::Matrix2d sigma = Eigen::Matrix2d::Identity();
  double epsilon = 0.0;
};

/// Pixel-to-centimeter conversion used for report annotations only.
inline constexpr double kPixelToCm = 0.026;

struct EvalReport {
  std::optional<double> ade;
  std::optional<double> amd;
  int n_pairs = 0;
  double coverage = 0.0;
  double mean_inference_ms = 0.0;
  double mean_update_ms = 0.0;
  double pixel_to_cm = kPixelToCm;
};

/// Pairs points on equal frame indices; frames present in only one
/// trajectory are skipped (they show up in coverage, not in the pairs).
std::vector<PointPair> pair_frames(const Trajectory& pred,
                                   const Trajectory& truth);

/// Mean Euclidean distance over the pairs. Throws UndefinedMetric on an
/// empty pair list — an absent metric is never reported as zero.
double ade(const std::vector<PointPair>& pairs);

/// Mean of sqrt(d^T (sigma + eps I)^-1 d) over the pairs.
double amd(const std::vector<PointPair>& pairs, const AmdContext& ctx);

/// Population (1/N) covariance of the ground-truth points; epsilon < 0
/// selects the default 1e-6 * trace regularizer.
AmdContext estimate_sigma(const Trajectory& truth, double epsilon = -1.0);

struct TimingSample {
  double inference_ms = 0.0;
  double update_ms = 0.0;
};

/// Arithmetic means of the per-frame timing series.
std::pair<double, double> timing_report(const std::vector<TimingSample>& s);

/// Tracker output boxes for one frame, as (track id, box).
struct FrameBoxes {
  int frame = 0;
  std::vector<std::pair<int, BBox>> boxes;
};

struct Reduction {
  Trajectory predicted;
  int gt_frames = 0;
  int covered = 0;
  double coverage = 0.0;
};

/// Reduces multi-track output against a single ground-truth box sequence:
/// per GT frame the prediction is the center of the overlapping output box
/// with the highest IoU (ties to the lowest id). Frames with no overlapping
/// output stay uncovered and contribute no pair.
Reduction reduce_to_trajectory(
    const std::vector<std::pair<int, BBox>>& gt_boxes,
    const std::vector<FrameBoxes>& outputs);

/// Flat key-value text record, one "key value" line per field.
void write_report_kv(std::ostream& out, const EvalReport& r);

} // namespace kftrack::metrics
