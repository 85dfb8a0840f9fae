///////////////////////////////////////////////////////////////////////////////
// assoc.hpp: Association costs and optimal assignment
// IoU distance, appearance cosine distance, min-fusion with gates, direction
// consistency cost, discriminativeness weighting, and Hungarian matching.
///////////////////////////////////////////////////////////////////////////////

#pragma once

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "kftrack/motion.hpp"

namespace kftrack::assoc {

using motion::BBox;

/// Rows = tracks, cols = detections. Infeasible entries hold kSentinel.
using CostMatrix = Eigen::MatrixXd;

inline constexpr double kSentinel = std::numeric_limits<double>::infinity();

/// Result of an assignment: matched (track, detection) index pairs plus the
/// leftovers on both sides. pairs and unmatched lists partition each side.
struct Assignment {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> unmatched_tracks;
  std::vector<int> unmatched_detections;
};

/// Intersection-over-union of two boxes, in [0, 1]. Symmetric.
double iou(const BBox& a, const BBox& b);

/// 1 - cos(u, v), in [0, 2]. Throws ContractViolation on zero or
/// mismatched-length vectors.
double cosine_distance(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// Per-entry IoU distance (1 - IoU) between track and detection boxes.
CostMatrix iou_distance_matrix(const std::vector<BBox>& tracks,
                               const std::vector<BBox>& detections);

/// Min-fusion of IoU distance and appearance distance with two gates:
/// entries with d_iou >= theta_iou become kSentinel; the appearance side
/// only participates when d_cos < theta_emb and d_iou < theta_iou.
CostMatrix fuse_bot(const CostMatrix& d_iou, const CostMatrix& d_cos,
                    double theta_iou, double theta_emb);

/// Direction-consistency cost: lambda * angle(track_dir, cand_dir) / pi.
/// Zero when the track has no established direction.
double ocm_cost(const std::optional<Eigen::Vector2d>& track_direction,
                const Eigen::Vector2d& candidate_direction, double lambda_ocm);

/// Cheapens rows whose appearance distances are discriminative: each row is
/// divided by w = 1 + boost, where boost combines the row's z-diff (second
/// lowest minus lowest, less z_diff_floor, capped at boost_cap) with the
/// same statistic for the column holding the row's minimum. Row-uniform
/// scaling, so the argmin position within a row never moves.
CostMatrix adaptive_weighting(const CostMatrix& d_app, double z_diff_floor,
                              double boost_cap);

/// Minimum-cost assignment over the feasible (non-sentinel) entries,
/// maximizing the number of matches first. Handles rectangular matrices;
/// deterministic, ties resolved toward low (row, col) indices.
Assignment hungarian(const CostMatrix& costs);

} // namespace kftrack::assoc
