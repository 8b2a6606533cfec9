#pragma once

#include <map>

#include "gsfc/kernel_id.hpp"
#include "gsfc/kernels.hpp"

// The 7-kernel decomposition of the feature pipeline: projection and covariance
// setup feed a Jacobian stage whose output K-factorizes the 2D covariance, and a
// dedicated direction stage precomputes the SH basis so the color stage is left
// with the 48-coefficient dot products. This is the functional model of what the
// simulator schedules; gsfc::compute_features is the single-pass reference it is
// checked against.
namespace gsfc::staged {

struct ProjectionMsg {
    Vec2 u;
    float depth = 0.0f;
    Vec3 p_c;
    bool culled = false;
};

struct DirVecMsg {
    ShBasis basis;
    bool degenerate = false;
};

ProjectionMsg projection_kernel(const Vec3& p_w, const CameraParams& cam);

// Vectorized covariance path (lane-vector dot products).
Cov3D cov3d_kernel(const Quat& q, const Vec3& s);

struct JacobianMsg {
    Mat23 j;
    bool culled = false;
};

JacobianMsg jacobian_kernel(const Vec3& p_c, const CameraParams& cam);

// Builds K = J * R_cw internally, then Sigma' = K * Sigma * K^T.
Cov2D cov2d_kernel(const Mat23& j, const Cov3D& cov, const CameraParams& cam,
                   float dilation = 0.0f);

Cov2D cov2d_inv_kernel(Cov2D c);

// Ray direction plus SH basis evaluation.
DirVecMsg dir_vec_kernel(const Vec3& p_w, const CameraParams& cam);

Vec3 color_kernel(std::span<const float, 48> sh, const ShBasis& basis,
                  const ColorOptions& opts = {});

// Runs the staged kernels in dataflow order on one Gaussian.
FeatureOutput staged_features(const Gaussian& g, const CameraParams& cam,
                              const FeatureOptions& opts = {});

// Per-kernel arithmetic op counts from one instrumented staged run; input to the
// analytic cost profile.
std::map<KernelId, OpCounts> measure_kernel_ops(const Gaussian& g, const CameraParams& cam,
                                                const FeatureOptions& opts = {});

// Same, grouped per the unpartitioned 5-kernel pipeline: cov2D absorbs the
// Jacobian work, color absorbs the direction/basis work, and cov3D uses the
// scalar triple-loop form.
std::map<KernelId, OpCounts> measure_kernel_ops_naive(const Gaussian& g, const CameraParams& cam,
                                                      const FeatureOptions& opts = {});

}  // namespace gsfc::staged
