#include "kftrack/cmc.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace kftrack::cmc {

namespace {

// Least-squares affine fit over the selected pairs. Returns false when the
// normal equations are rank-deficient (collinear points).
bool fit_affine(const Correspondences& c, const std::vector<int>& idx,
                Affine& out) {
  const int n = static_cast<int>(idx.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, 6);
  Eigen::VectorXd b(2 * n);
  for (int k = 0; k < n; ++k) {
    const auto& [p, q] = c.pairs[idx[k]];
    A(2 * k, 0) = p.x();
    A(2 * k, 1) = p.y();
    A(2 * k, 2) = 1.0;
    A(2 * k + 1, 3) = p.x();
    A(2 * k + 1, 4) = p.y();
    A(2 * k + 1, 5) = 1.0;
    b(2 * k) = q.x();
    b(2 * k + 1) = q.y();
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < 6) return false;
  const Eigen::VectorXd x = qr.solve(b);
  out.M << x(0), x(1), x(3), x(4);
  out.T << x(2), x(5);
  return std::abs(out.M.determinant()) > 1e-9;
}

std::vector<bool> inliers_of(const Correspondences& c, const Affine& a,
                             double inlier_px) {
  std::vector<bool> mask(c.pairs.size(), false);
  for (std::size_t k = 0; k < c.pairs.size(); ++k) {
    const double err = (a.apply(c.pairs[k].first) - c.pairs[k].second).norm();
    mask[k] = err <= inlier_px;
  }
  return mask;
}

std::vector<int> mask_indices(const std::vector<bool>& mask) {
  std::vector<int> idx;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (mask[k]) idx.push_back(static_cast<int>(k));
  }
  return idx;
}

} // namespace

AffineEstimate estimate_affine(const Correspondences& c, int ransac_iters,
                               double inlier_px, std::uint64_t seed) {
  const int n = static_cast<int>(c.pairs.size());
  if (n < 3) {
    throw EstimationFailure("estimate_affine: need at least 3 point pairs");
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);

  int best_count = -1;
  std::vector<bool> best_mask;
  for (int it = 0; it < ransac_iters; ++it) {
    int i = pick(rng), j = pick(rng), k = pick(rng);
    if (i == j || j == k || i == k) continue;
    Affine candidate;
    if (!fit_affine(c, {i, j, k}, candidate)) continue;
    std::vector<bool> mask = inliers_of(c, candidate, inlier_px);
    const int count =
        static_cast<int>(std::count(mask.begin(), mask.end(), true));
    if (count > best_count) {
      best_count = count;
      best_mask = std::move(mask);
    }
  }
  if (best_count < 3) {
    throw EstimationFailure(
        "estimate_affine: no consensus set of at least 3 inliers");
  }

  Affine refined;
  if (!fit_affine(c, mask_indices(best_mask), refined)) {
    throw EstimationFailure("estimate_affine: degenerate inlier set");
  }
  return {refined, inliers_of(c, refined, inlier_px)};
}

BBox warp_box(const Affine& a, const BBox& b) {
  if (!b.valid()) throw ContractViolation("warp_box: invalid box");
  const Eigen::Vector2d p0 = a.apply({b.x, b.y});
  const Eigen::Vector2d p1 = a.apply({b.right(), b.bottom()});
  BBox out;
  out.x = std::min(p0.x(), p1.x());
  out.y = std::min(p0.y(), p1.y());
  out.w = std::abs(p1.x() - p0.x());
  out.h = std::abs(p1.y() - p0.y());
  if (!out.valid()) {
    throw ContractViolation("warp_box: mapped box has non-positive extent");
  }
  return out;
}

filter::GaussianState compensate_state(const Affine& a,
                                       const filter::GaussianState& s,
                                       ModelKind kind) {
  const int n = motion::state_dim(kind);
  if (s.mean.size() != n) {
    throw ContractViolation("compensate_state: state does not match kind");
  }
  const double sx = a.M.col(0).norm(); // width scale factor
  const double sy = a.M.col(1).norm(); // height scale factor
  const double det = std::abs(a.M.determinant());

  Eigen::MatrixXd lift = Eigen::MatrixXd::Identity(n, n);
  filter::GaussianState out = s;
  switch (kind) {
    case ModelKind::Sort: {
      lift.block<2, 2>(0, 0) = a.M; // center
      lift(2, 2) = det;             // area
      lift(3, 3) = sx / sy;         // aspect
      lift.block<2, 2>(4, 4) = a.M; // center velocity
      lift(6, 6) = det;             // area velocity
      break;
    }
    case ModelKind::Wh: {
      lift.block<2, 2>(0, 0) = a.M;
      lift(2, 2) = sx;
      lift(3, 3) = sy;
      lift.block<2, 2>(4, 4) = a.M;
      lift(6, 6) = sx;
      lift(7, 7) = sy;
      break;
    }
    case ModelKind::Point: {
      // Interleaved layout [x, vx, y, vy].
      lift(0, 0) = a.M(0, 0);
      lift(0, 2) = a.M(0, 1);
      lift(2, 0) = a.M(1, 0);
      lift(2, 2) = a.M(1, 1);
      lift(1, 1) = a.M(0, 0);
      lift(1, 3) = a.M(0, 1);
      lift(3, 1) = a.M(1, 0);
      lift(3, 3) = a.M(1, 1);
      break;
    }
  }

  out.mean = lift * s.mean;
  switch (kind) {
    case ModelKind::Sort:
    case ModelKind::Wh:
      out.mean.head<2>() += a.T;
      break;
    case ModelKind::Point:
      out.mean(0) += a.T(0);
      out.mean(2) += a.T(1);
      break;
  }
  out.cov = filter::symmetrized(lift * s.cov * lift.transpose());
  return out;
}

std::map<int, Affine> read_affine_file(std::istream& in) {
  std::map<int, Affine> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    int frame = 0;
    Affine a;
    if (!(ss >> frame >> a.M(0, 0) >> a.M(0, 1) >> a.M(1, 0) >> a.M(1, 1) >>
          a.T(0) >> a.T(1))) {
      throw ParseError("affine file: malformed line " +
                       std::to_string(line_no));
    }
    out[frame] = a;
  }
  return out;
}

void write_affine_line(std::ostream& out, int frame, const Affine& a) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%d %.9g %.9g %.9g %.9g %.9g %.9g\n", frame,
                a.M(0, 0), a.M(0, 1), a.M(1, 0), a.M(1, 1), a.T(0), a.T(1));
  out << buf;
}

} // namespace kftrack::cmc
