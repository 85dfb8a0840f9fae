#include "kftrack/motion.hpp"

#include <cmath>
#include <string>

namespace kftrack::motion {

ModelKind model_kind_from_string(std::string_view name) {
  if (name == "sort") return ModelKind::Sort;
  if (name == "wh") return ModelKind::Wh;
  if (name == "point") return ModelKind::Point;
  throw ContractViolation("unknown model kind: " + std::string(name));
}

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Sort: return "sort";
    case ModelKind::Wh: return "wh";
    case ModelKind::Point: return "point";
  }
  throw ContractViolation("unknown model kind enum value");
}

int state_dim(ModelKind kind) {
  switch (kind) {
    case ModelKind::Sort: return 7;
    case ModelKind::Wh: return 8;
    case ModelKind::Point: return 4;
  }
  throw ContractViolation("unknown model kind enum value");
}

int obs_dim(ModelKind kind) {
  switch (kind) {
    case ModelKind::Sort: return 4;
    case ModelKind::Wh: return 4;
    case ModelKind::Point: return 2;
  }
  throw ContractViolation("unknown model kind enum value");
}

namespace {

void require_valid_box(const BBox& b) {
  if (!b.valid()) {
    throw ContractViolation("BBox: width and height must be positive");
  }
}

void require_state_size(ModelKind kind, const Vec& v) {
  if (v.size() != state_dim(kind)) {
    throw ContractViolation("state vector length does not match model kind");
  }
}

} // namespace

LinearModel build_model(ModelKind kind, double dt, double q_scale,
                        double r_scale, double area_hint) {
  if (!(dt > 0.0)) throw ContractViolation("build_model: dt must be > 0");
  if (!(q_scale > 0.0) || !(r_scale > 0.0)) {
    throw ContractViolation("build_model: noise scales must be > 0");
  }

  const int n = state_dim(kind);
  const int k = obs_dim(kind);
  const double qp = q_scale * q_scale;            // observed-term variance
  const double qv = 0.01 * q_scale * q_scale;     // velocity-term variance
  const double rp = r_scale * r_scale;
  const double area = std::max(area_hint, 1.0);

  LinearModel m;
  m.F = Mat::Identity(n, n);
  m.H = Mat::Zero(k, n);
  m.Q = Mat::Zero(n, n);
  m.R = Mat::Zero(k, k);
  m.B = Mat();

  switch (kind) {
    case ModelKind::Sort: {
      m.F(0, 4) = dt;
      m.F(1, 5) = dt;
      m.F(2, 6) = dt; // aspect ratio r has no velocity coupling
      for (int i = 0; i < 4; ++i) m.H(i, i) = 1.0;
      m.Q.diagonal() << qp, qp, qp * area, 1e-4 * qp, qv, qv, qv * area;
      m.R.diagonal() << rp, rp, rp * area, 1e-4 * rp;
      break;
    }
    case ModelKind::Wh: {
      for (int i = 0; i < 4; ++i) {
        m.F(i, i + 4) = dt;
        m.H(i, i) = 1.0;
      }
      m.Q.diagonal() << qp, qp, qp, qp, qv, qv, qv, qv;
      m.R.diagonal() << rp, rp, rp, rp;
      break;
    }
    case ModelKind::Point: {
      m.F(0, 1) = dt;
      m.F(2, 3) = dt;
      m.H(0, 0) = 1.0;
      m.H(1, 2) = 1.0;
      m.Q.diagonal() << qp, qv, qp, qv;
      m.R.diagonal() << rp, rp;
      break;
    }
  }
  return m;
}

Vec bbox_to_state(ModelKind kind, const BBox& b) {
  require_valid_box(b);
  Vec v = Vec::Zero(state_dim(kind));
  switch (kind) {
    case ModelKind::Sort:
      v(0) = b.cx();
      v(1) = b.cy();
      v(2) = b.area();
      v(3) = b.w / b.h;
      break;
    case ModelKind::Wh:
      v(0) = b.cx();
      v(1) = b.cy();
      v(2) = b.w;
      v(3) = b.h;
      break;
    case ModelKind::Point:
      v(0) = b.cx();
      v(2) = b.cy();
      break;
  }
  return v;
}

BBox state_to_bbox(ModelKind kind, const Vec& v) {
  require_state_size(kind, v);
  switch (kind) {
    case ModelKind::Sort: {
      const double s = v(2);
      const double r = v(3);
      if (!(s > 0.0) || !(r > 0.0)) {
        throw DegenerateState(
            "state_to_bbox: filtered area/aspect became non-positive");
      }
      const double w = std::sqrt(s * r);
      const double h = s / w;
      return BBox::from_center(v(0), v(1), w, h);
    }
    case ModelKind::Wh: {
      if (!(v(2) > 0.0) || !(v(3) > 0.0)) {
        throw DegenerateState(
            "state_to_bbox: filtered width/height became non-positive");
      }
      return BBox::from_center(v(0), v(1), v(2), v(3));
    }
    case ModelKind::Point:
      return BBox::from_center(v(0), v(2), 1.0, 1.0);
  }
  throw ContractViolation("unknown model kind enum value");
}

Vec bbox_to_measurement(ModelKind kind, const BBox& b) {
  require_valid_box(b);
  Vec z = Vec::Zero(obs_dim(kind));
  switch (kind) {
    case ModelKind::Sort:
      z << b.cx(), b.cy(), b.area(), b.w / b.h;
      break;
    case ModelKind::Wh:
      z << b.cx(), b.cy(), b.w, b.h;
      break;
    case ModelKind::Point:
      z << b.cx(), b.cy();
      break;
  }
  return z;
}

GaussianState initial_state(ModelKind kind, const BBox& b, double q_scale,
                            double r_scale) {
  const LinearModel m = build_model(kind, 1.0, q_scale, r_scale, b.area());
  GaussianState s;
  s.mean = bbox_to_state(kind, b);

  const int n = state_dim(kind);
  const int k = obs_dim(kind);
  s.cov = Mat::Zero(n, n);
  const double vel_var = 100.0 * q_scale * q_scale;
  switch (kind) {
    case ModelKind::Sort:
      for (int i = 0; i < k; ++i) s.cov(i, i) = 10.0 * m.R(i, i);
      s.cov(4, 4) = vel_var;
      s.cov(5, 5) = vel_var;
      s.cov(6, 6) = vel_var * std::max(b.area(), 1.0);
      break;
    case ModelKind::Wh:
      for (int i = 0; i < k; ++i) s.cov(i, i) = 10.0 * m.R(i, i);
      for (int i = 4; i < 8; ++i) s.cov(i, i) = vel_var;
      break;
    case ModelKind::Point:
      s.cov(0, 0) = 10.0 * m.R(0, 0);
      s.cov(2, 2) = 10.0 * m.R(1, 1);
      s.cov(1, 1) = vel_var;
      s.cov(3, 3) = vel_var;
      break;
  }
  return s;
}

} // namespace kftrack::motion
