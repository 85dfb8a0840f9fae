#include "kftrack/assoc.hpp"

#include <algorithm>
#include <cmath>

namespace kftrack::assoc {

double iou(const BBox& a, const BBox& b) {
  if (!a.valid() || !b.valid()) {
    throw ContractViolation("iou: boxes must have positive extent");
  }
  const double ix = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  const double iy = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  return inter / (a.area() + b.area() - inter);
}

double cosine_distance(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (u.size() != v.size()) {
    throw ContractViolation("cosine_distance: vector lengths differ");
  }
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu < 1e-12 || nv < 1e-12) {
    throw ContractViolation("cosine_distance: zero vector");
  }
  const double d = 1.0 - u.dot(v) / (nu * nv);
  return std::clamp(d, 0.0, 2.0);
}

CostMatrix iou_distance_matrix(const std::vector<BBox>& tracks,
                               const std::vector<BBox>& detections) {
  CostMatrix m(tracks.size(), detections.size());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      m(i, j) = 1.0 - iou(tracks[i], detections[j]);
    }
  }
  return m;
}

CostMatrix fuse_bot(const CostMatrix& d_iou, const CostMatrix& d_cos,
                    double theta_iou, double theta_emb) {
  if (d_iou.rows() != d_cos.rows() || d_iou.cols() != d_cos.cols()) {
    throw ContractViolation("fuse_bot: matrix shapes differ");
  }
  CostMatrix out(d_iou.rows(), d_iou.cols());
  for (int i = 0; i < out.rows(); ++i) {
    for (int j = 0; j < out.cols(); ++j) {
      if (d_iou(i, j) >= theta_iou) {
        out(i, j) = kSentinel;
        continue;
      }
      const bool emb_ok = d_cos(i, j) < theta_emb;
      out(i, j) = emb_ok ? std::min(d_iou(i, j), d_cos(i, j)) : d_iou(i, j);
    }
  }
  return out;
}

double ocm_cost(const std::optional<Eigen::Vector2d>& track_direction,
                const Eigen::Vector2d& candidate_direction, double lambda_ocm) {
  if (!track_direction.has_value()) return 0.0;
  const double dot =
      std::clamp(track_direction->dot(candidate_direction), -1.0, 1.0);
  return lambda_ocm * std::acos(dot) / M_PI;
}

namespace {

// z-diff of a finite sequence: second lowest minus lowest. Zero when fewer
// than two finite entries exist.
double z_diff(const Eigen::VectorXd& values) {
  double lo = kSentinel, lo2 = kSentinel;
  for (int i = 0; i < values.size(); ++i) {
    const double v = values(i);
    if (!std::isfinite(v)) continue;
    if (v < lo) {
      lo2 = lo;
      lo = v;
    } else if (v < lo2) {
      lo2 = v;
    }
  }
  if (!std::isfinite(lo2)) return 0.0;
  return lo2 - lo;
}

} // namespace

CostMatrix adaptive_weighting(const CostMatrix& d_app, double z_diff_floor,
                              double boost_cap) {
  const int rows = static_cast<int>(d_app.rows());
  const int cols = static_cast<int>(d_app.cols());
  if (rows < 2 && cols < 2) return d_app;

  auto boost = [&](double z) {
    return std::clamp(z - z_diff_floor, 0.0, boost_cap);
  };

  Eigen::VectorXd row_boost = Eigen::VectorXd::Zero(rows);
  if (cols >= 2) {
    for (int i = 0; i < rows; ++i) row_boost(i) = boost(z_diff(d_app.row(i)));
  }
  Eigen::VectorXd col_boost = Eigen::VectorXd::Zero(cols);
  if (rows >= 2) {
    for (int j = 0; j < cols; ++j) col_boost(j) = boost(z_diff(d_app.col(j)));
  }

  CostMatrix out = d_app;
  for (int i = 0; i < rows; ++i) {
    int arg = 0;
    for (int j = 1; j < cols; ++j) {
      if (out(i, j) < out(i, arg)) arg = j;
    }
    const double w = std::max(1.0 + row_boost(i) + col_boost(arg), 1.0);
    out.row(i) /= w;
  }
  return out;
}

Assignment hungarian(const CostMatrix& costs) {
  const int t = static_cast<int>(costs.rows());
  const int d = static_cast<int>(costs.cols());
  Assignment result;
  if (t == 0 || d == 0) {
    for (int i = 0; i < t; ++i) result.unmatched_tracks.push_back(i);
    for (int j = 0; j < d; ++j) result.unmatched_detections.push_back(j);
    return result;
  }

  // Pad to square; infeasible and padded entries get a finite big-M so the
  // solver maximizes the number of real matches before minimizing cost.
  double max_finite = 0.0;
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < d; ++j) {
      if (std::isfinite(costs(i, j))) {
        max_finite = std::max(max_finite, std::abs(costs(i, j)));
      }
    }
  }
  const int n = std::max(t, d);
  const double big = n * max_finite + 1e6;
  Eigen::MatrixXd a = Eigen::MatrixXd::Constant(n + 1, n + 1, big);
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < d; ++j) {
      a(i + 1, j + 1) = std::isfinite(costs(i, j)) ? costs(i, j) : big;
    }
  }

  // Potentials-and-augmenting-paths assignment, O(n^3). Rows are inserted
  // in index order and column ties keep the lowest index, which makes the
  // result deterministic and lexicographic on equal costs.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kSentinel);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = kSentinel;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<bool> track_matched(t, false), det_matched(d, false);
  for (int j = 1; j <= n; ++j) {
    const int i = p[j];
    if (i >= 1 && i <= t && j <= d && std::isfinite(costs(i - 1, j - 1))) {
      result.pairs.emplace_back(i - 1, j - 1);
      track_matched[i - 1] = true;
      det_matched[j - 1] = true;
    }
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  for (int i = 0; i < t; ++i) {
    if (!track_matched[i]) result.unmatched_tracks.push_back(i);
  }
  for (int j = 0; j < d; ++j) {
    if (!det_matched[j]) result.unmatched_detections.push_back(j);
  }
  return result;
}

} // namespace kftrack::assoc
