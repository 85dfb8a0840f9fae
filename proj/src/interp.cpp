#include "kftrack/interp.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace kftrack::interp {

namespace {

void check_tracklet(const Tracklet& t, std::size_t min_samples) {
  if (t.samples.size() < min_samples) {
    throw ContractViolation("tracklet has too few samples");
  }
  for (std::size_t i = 1; i < t.samples.size(); ++i) {
    if (t.samples[i].first <= t.samples[i - 1].first) {
      throw ContractViolation("tracklet frames must be strictly increasing");
    }
  }
}

BBox blend(const BBox& a, const BBox& b, double alpha) {
  BBox out;
  out.x = a.x + (b.x - a.x) * alpha;
  out.y = a.y + (b.y - a.y) * alpha;
  out.w = a.w + (b.w - a.w) * alpha;
  out.h = a.h + (b.h - a.h) * alpha;
  return out;
}

} // namespace

Tracklet linear_interpolate(const Tracklet& t, int max_gap) {
  check_tracklet(t, 1);
  Tracklet out;
  out.id = t.id;
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    out.samples.push_back(t.samples[i]);
    if (i + 1 == t.samples.size()) break;
    const auto& [t1, b1] = t.samples[i];
    const auto& [t2, b2] = t.samples[i + 1];
    const int missing = t2 - t1 - 1;
    if (missing < 1 || missing > max_gap) continue;
    for (int f = t1 + 1; f < t2; ++f) {
      const double alpha = static_cast<double>(f - t1) / (t2 - t1);
      out.samples.emplace_back(f, blend(b1, b2, alpha));
    }
  }
  return out;
}

GsiResult gsi_smooth(const Tracklet& t, double length_scale, double noise_var,
                     int max_gap) {
  check_tracklet(t, 2);
  if (!(length_scale > 0.0) || !(noise_var >= 0.0)) {
    throw ContractViolation("gsi_smooth: invalid hyperparameters");
  }

  const int n = static_cast<int>(t.samples.size());
  Eigen::VectorXd frames(n);
  Eigen::MatrixXd targets(n, 4); // xc, yc, w, h
  for (int i = 0; i < n; ++i) {
    frames(i) = t.samples[i].first;
    const BBox& b = t.samples[i].second;
    targets.row(i) << b.cx(), b.cy(), b.w, b.h;
  }

  auto kernel = [&](double a, double b) {
    const double d = (a - b) / length_scale;
    return std::exp(-0.5 * d * d);
  };

  Eigen::MatrixXd gram(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) gram(i, j) = kernel(frames(i), frames(j));
    gram(i, i) += noise_var;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e12) {
    GsiResult fallback{linear_interpolate(t, max_gap), true};
    return fallback;
  }

  const Eigen::RowVector4d prior = targets.colwise().mean();
  const Eigen::MatrixXd alpha =
      gram.ldlt().solve((targets.rowwise() - prior).matrix());

  auto predict = [&](double f) {
    Eigen::RowVectorXd k(n);
    for (int i = 0; i < n; ++i) k(i) = kernel(f, frames(i));
    const Eigen::RowVector4d v = k * alpha + prior;
    return BBox::from_center(v(0), v(1), v(2), v(3));
  };

  GsiResult result;
  result.tracklet.id = t.id;
  for (int i = 0; i < n; ++i) {
    const int frame = t.samples[i].first;
    result.tracklet.samples.emplace_back(frame, predict(frame));
    if (i + 1 == n) break;
    const int next = t.samples[i + 1].first;
    const int missing = next - frame - 1;
    if (missing < 1 || missing > max_gap) continue;
    for (int f = frame + 1; f < next; ++f) {
      result.tracklet.samples.emplace_back(f, predict(f));
    }
  }
  return result;
}

} // namespace kftrack::interp
