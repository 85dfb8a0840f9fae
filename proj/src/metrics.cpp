#include "kftrack/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "kftrack/assoc.hpp"

namespace kftrack::metrics {

namespace {

void check_trajectory(const Trajectory& t) {
  for (std::size_t i = 1; i < t.points.size(); ++i) {
    if (t.points[i].first <= t.points[i - 1].first) {
      throw ContractViolation("trajectory frames must be strictly increasing");
    }
  }
}

} // namespace

std::vector<PointPair> pair_frames(const Trajectory& pred,
                                   const Trajectory& truth) {
  check_trajectory(pred);
  check_trajectory(truth);
  std::vector<PointPair> pairs;
  std::size_t i = 0, j = 0;
  while (i < pred.points.size() && j < truth.points.size()) {
    const int fp = pred.points[i].first;
    const int ft = truth.points[j].first;
    if (fp == ft) {
      pairs.emplace_back(pred.points[i].second, truth.points[j].second);
      ++i;
      ++j;
    } else if (fp < ft) {
      ++i;
    } else {
      ++j;
    }
  }
  return pairs;
}

double ade(const std::vector<PointPair>& pairs) {
  if (pairs.empty()) {
    throw UndefinedMetric("ade: no point pairs");
  }
  double sum = 0.0;
  for (const auto& [p, q] : pairs) sum += (p - q).norm();
  return sum / static_cast<double>(pairs.size());
}

double amd(const std::vector<PointPair>& pairs, const AmdContext& ctx) {
  if (pairs.empty()) {
    throw UndefinedMetric("amd: no point pairs");
  }
  const Eigen::Matrix2d m =
      ctx.sigma + ctx.epsilon * Eigen::Matrix2d::Identity();
  const double det = m.determinant();
  if (!(det > 0.0) || !(m(0, 0) > 0.0)) {
    throw ContractViolation("amd: sigma + eps*I is not positive definite");
  }
  const Eigen::Matrix2d inv = m.inverse();
  double sum = 0.0;
  for (const auto& [p, q] : pairs) {
    const Eigen::Vector2d d = p - q;
    sum += std::sqrt(d.dot(inv * d));
  }
  return sum / static_cast<double>(pairs.size());
}

AmdContext estimate_sigma(const Trajectory& truth, double epsilon) {
  check_trajectory(truth);
  const int n = static_cast<int>(truth.points.size());
  if (n < 2) {
    throw ContractViolation("estimate_sigma: need at least 2 points");
  }
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& [f, p] : truth.points) mean += p;
  mean /= n;

  Eigen::Matrix2d sigma = Eigen::Matrix2d::Zero();
  for (const auto& [f, p] : truth.points) {
    const Eigen::Vector2d d = p - mean;
    sigma += d * d.transpose();
  }
  sigma /= n; // population estimator

  AmdContext ctx;
  ctx.sigma = sigma;
  ctx.epsilon = epsilon >= 0.0 ? epsilon : 1e-6 * std::max(sigma.trace(), 1.0);
  return ctx;
}

std::pair<double, double> timing_report(const std::vector<TimingSample>& s) {
  if (s.empty()) {
    throw ContractViolation("timing_report: need at least one frame");
  }
  double inf = 0.0, upd = 0.0;
  for (const auto& t : s) {
    inf += t.inference_ms;
    upd += t.update_ms;
  }
  const double n = static_cast<double>(s.size());
  return {inf / n, upd / n};
}

Reduction reduce_to_trajectory(
    const std::vector<std::pair<int, BBox>>& gt_boxes,
    const std::vector<FrameBoxes>& outputs) {
  Reduction red;
  red.gt_frames = static_cast<int>(gt_boxes.size());

  std::size_t oi = 0;
  for (const auto& [frame, gt] : gt_boxes) {
    while (oi < outputs.size() && outputs[oi].frame < frame) ++oi;
    if (oi >= outputs.size() || outputs[oi].frame != frame) continue;

    double best_iou = 0.0;
    int best_id = -1;
    Eigen::Vector2d best_center;
    for (const auto& [id, box] : outputs[oi].boxes) {
      const double v = assoc::iou(box, gt);
      if (v > best_iou || (v == best_iou && v > 0.0 && id < best_id)) {
        best_iou = v;
        best_id = id;
        best_center = {box.cx(), box.cy()};
      }
    }
    if (best_iou > 0.0) {
      red.predicted.points.emplace_back(frame, best_center);
      ++red.covered;
    }
  }
  red.coverage =
      red.gt_frames > 0
          ? static_cast<double>(red.covered) / static_cast<double>(red.gt_frames)
          : 0.0;
  return red;
}

void write_report_kv(std::ostream& out, const EvalReport& r) {
  char buf[96];
  auto emit = [&](const char* key, double v) {
    std::snprintf(buf, sizeof(buf), "%s %.6f\n", key, v);
    out << buf;
  };
  if (r.ade) {
    emit("ade", *r.ade);
    emit("ade_cm", *r.ade * r.pixel_to_cm);
  } else {
    out << "ade absent\n";
  }
  if (r.amd) {
    emit("amd", *r.amd);
  } else {
    out << "amd absent\n";
  }
  out << "n_pairs " << r.n_pairs << "\n";
  emit("coverage", r.coverage);
  emit("mean_inference_ms", r.mean_inference_ms);
  emit("mean_update_ms", r.mean_update_ms);
  emit("pixel_to_cm", r.pixel_to_cm);
}

} // namespace kftrack::metrics
