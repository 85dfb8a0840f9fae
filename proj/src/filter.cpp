#include "kftrack/filter.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <string>

namespace kftrack::filter {

Mat symmetrized(const Mat& m) { return 0.5 * (m + m.transpose()); }

double condition_number(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return sv(0) / sv(sv.size() - 1);
}

bool is_valid_state(const GaussianState& s) {
  if (s.mean.size() != s.cov.rows() || s.cov.rows() != s.cov.cols()) {
    return false;
  }
  const double scale = std::max(1.0, s.cov.cwiseAbs().maxCoeff());
  if (((s.cov - s.cov.transpose()).cwiseAbs().maxCoeff()) > 1e-9 * scale) {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(symmetrized(s.cov));
  const double floor = -1e-9 * std::max(s.cov.trace(), 1.0);
  return es.eigenvalues().minCoeff() >= floor;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ContractViolation(what);
}

void check_dims(const GaussianState& state, const LinearModel& model) {
  require(state.mean.size() == state.cov.rows() &&
              state.cov.rows() == state.cov.cols(),
          "GaussianState: mean length must equal covariance dimension");
  require(model.F.rows() == model.F.cols(),
          "LinearModel: F must be square");
  require(model.F.cols() == state.mean.size(),
          "predict: F columns do not match state dimension");
  require(model.Q.rows() == model.F.rows() && model.Q.cols() == model.F.cols(),
          "LinearModel: Q must match F dimensions");
}

Innovation make_innovation(const GaussianState& state, const LinearModel& model,
                           const Vec& z, const Mat& R) {
  const Mat& H = model.H;
  if (H.cols() != state.mean.size()) {
    throw ContractViolation("update: H columns do not match state dimension");
  }
  if (z.size() != H.rows()) {
    throw ContractViolation("update: measurement z does not match H rows");
  }
  if (R.rows() != H.rows() || R.cols() != H.rows()) {
    throw ContractViolation("update: R does not match measurement dimension");
  }

  Innovation inn;
  inn.residual = z - H * state.mean;
  inn.covariance = symmetrized(H * state.cov * H.transpose() + R);
  if (condition_number(inn.covariance) > kSingularCondition) {
    throw NumericalSingularity(
        "update: innovation covariance S is numerically singular "
        "(condition number > 1e12); consider inflating R");
  }
  // K = P H^T S^-1, solved through the Cholesky factor of S.
  Eigen::LLT<Mat> llt(inn.covariance);
  if (llt.info() != Eigen::Success) {
    throw NumericalSingularity("update: S is not positive definite");
  }
  inn.gain = llt.solve(H * state.cov.transpose()).transpose();
  return inn;
}

UpdateResult apply_update(const GaussianState& state, const LinearModel& model,
                          const Vec& z, const Mat& R, bool joseph) {
  Innovation inn = make_innovation(state, model, z, R);

  GaussianState post;
  post.mean = state.mean + inn.gain * inn.residual;

  const Mat I = Mat::Identity(state.dim(), state.dim());
  const Mat IKH = I - inn.gain * model.H;
  if (joseph) {
    post.cov = IKH * state.cov * IKH.transpose() +
               inn.gain * R * inn.gain.transpose();
  } else {
    post.cov = IKH * state.cov;
  }
  post.cov = symmetrized(post.cov);
  return {std::move(post), std::move(inn)};
}

} // namespace

GaussianState predict(const GaussianState& state, const LinearModel& model,
                      const std::optional<Vec>& control) {
  check_dims(state, model);

  GaussianState out;
  out.mean = model.F * state.mean;
  if (control.has_value()) {
    require(model.B.size() > 0,
            "predict: control vector supplied but model has no B matrix");
    require(model.B.rows() == model.F.rows() &&
                model.B.cols() == control->size(),
            "predict: B does not conform with control vector");
    out.mean += model.B * (*control);
  }
  out.cov = symmetrized(model.F * state.cov * model.F.transpose() + model.Q);
  return out;
}

UpdateResult update(const GaussianState& state, const LinearModel& model,
                    const Vec& z, bool joseph) {
  check_dims(state, model);
  return apply_update(state, model, z, model.R, joseph);
}

UpdateResult nsa_update(const GaussianState& state, const LinearModel& model,
                        const Vec& z, double confidence, bool joseph) {
  if (!(confidence >= 0.0 && confidence <= 1.0)) {
    throw ContractViolation("nsa_update: confidence must lie in [0, 1]");
  }
  check_dims(state, model);
  const double scale = std::max(1.0 - confidence, kNsaEpsilon);
  return apply_update(state, model, z, scale * model.R, joseph);
}

double gating_distance(const GaussianState& state, const LinearModel& model,
                       const Vec& z) {
  check_dims(state, model);
  Innovation inn = make_innovation(state, model, z, model.R);
  Eigen::LLT<Mat> llt(inn.covariance);
  const Vec solved = llt.solve(inn.residual);
  return inn.residual.dot(solved);
}

} // namespace kftrack::filter
