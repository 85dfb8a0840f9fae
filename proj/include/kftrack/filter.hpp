///////////////////////////////////////////////////////////////////////////////
// filter.hpp: Linear Kalman filter core
// Prediction, measurement update (standard and Joseph form), confidence-scaled
// NSA update, and Mahalanobis innovation distance for gating.
///////////////////////////////////////////////////////////////////////////////

#pragma once

#include <Eigen/Dense>
#include <optional>

#include "kftrack/errors.hpp"

namespace kftrack::filter {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Gaussian belief over a state vector: N(mean, cov).
struct GaussianState {
  Vec mean;
  Mat cov;

  int dim() const { return static_cast<int>(mean.size()); }
};

/// Time-invariant linear system:
///   x_k = F x_{k-1} + B u_k + w_k,   w ~ N(0, Q)
///   z_k = H x_k + v_k,               v ~ N(0, R)
/// B may be empty (no control input).
struct LinearModel {
  Mat F;
  Mat B;
  Mat Q;
  Mat H;
  Mat R;

  int state_dim() const { return static_cast<int>(F.rows()); }
  int obs_dim() const { return static_cast<int>(H.rows()); }
};

/// Measurement residual y, its covariance S, and the Kalman gain K.
struct Innovation {
  Vec residual;
  Mat covariance;
  Mat gain;
};

struct UpdateResult {
  GaussianState state;
  Innovation innovation;
};

/// Condition number above which S is treated as numerically singular.
inline constexpr double kSingularCondition = 1e12;

/// Floor applied to the NSA noise scale so R never collapses to zero.
inline constexpr double kNsaEpsilon = 1e-4;

/// (M + M^T) / 2 — used after every covariance propagation to keep
/// floating-point drift from breaking symmetry.
Mat symmetrized(const Mat& m);

/// 2-norm condition number via SVD. Returns +inf for a zero matrix.
double condition_number(const Mat& m);

/// Checks mean/cov dimensions, symmetry (1e-9 relative) and positive
/// semi-definiteness (eigenvalues >= -1e-9 * trace).
bool is_valid_state(const GaussianState& s);

/// Propagates the belief one step: mean = F x + B u, cov = F P F^T + Q.
/// Throws ContractViolation on any dimension mismatch.
GaussianState predict(const GaussianState& state, const LinearModel& model,
                      const std::optional<Vec>& control = std::nullopt);

/// Fuses measurement z into the predicted belief. With joseph set the
/// covariance is computed as (I-KH)P(I-KH)^T + KRK^T, which stays PSD
/// under roundoff. Throws NumericalSingularity when cond(S) > 1e12.
UpdateResult update(const GaussianState& state, const LinearModel& model,
                    const Vec& z, bool joseph = true);

/// update() with measurement noise scaled by detection confidence:
/// R~ = max(1 - confidence, 1e-4) * R. Confidence must lie in [0, 1].
UpdateResult nsa_update(const GaussianState& state, const LinearModel& model,
                        const Vec& z, double confidence, bool joseph = true);

/// Squared Mahalanobis distance of the innovation, y^T S^-1 y.
/// Zero iff z == H x. Throws NumericalSingularity when S is singular.
double gating_distance(const GaussianState& state, const LinearModel& model,
                       const Vec& z);

} // namespace kftrack::filter
