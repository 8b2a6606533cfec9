#pragma once

#include <span>

#include "gsfc/lane_vector.hpp"
#include "gsfc/types.hpp"

namespace gsfc {

// Numeric constant of the l=0 real spherical harmonic.
inline constexpr float kShY00 = 0.28209479f;

// Rotation matrix of a (w,x,y,z) quaternion. The input is normalized first;
// throws std::invalid_argument when |q| <= 1e-12.
Mat3 quat_to_rotation(const Quat& q);

// R * diag(s^2) * R^T via the two literal triple loops (temp = R*S, then temp*R^T),
// stored upper-triangular. Records scalar op counts.
Cov3D cov3d_naive(const Mat3& r, const Vec3& s);

// Same covariance as six lane-vector dot products entry_ij = r_i . (r_j (*) s^2).
// Inputs carry 3 populated lanes; nonzero padding lanes are rejected because they
// would corrupt the horizontal reductions. Records lane-op counts.
Cov3D cov3d_vectorized(const LaneVector& r1, const LaneVector& r2, const LaneVector& r3,
                       const LaneVector& s);

struct ProjectResult {
    Vec2 u;
    Vec3 p_c;   // camera-space point; p_c.z is the depth
    bool culled = false;
};

// p_c = R_cw * p_w + t_cw, then pinhole division with z clamped away from zero
// by 1e-6. Points at z <= 0 come back flagged culled, never as an error.
ProjectResult project(const Vec3& p_w, const CameraParams& cam);

struct JacobianResult {
    Mat23 j;
    bool culled = false;
};

// First-order perspective Jacobian [[fx/z, 0, -fx*x/z^2], [0, fy/z, -fy*y/z^2]].
// z below 1e-6 is clamped and flagged culled.
JacobianResult jacobian(const Vec3& p_c, Vec2 focal);

// K = J * R_cw.
Mat23 compute_k(const Mat23& j, const Mat3& rotation_cw);

// Sigma' = K * Sigma * K^T as (a, b, c), with determinant stored. `dilation` is
// added to the diagonal when nonzero (downstream rasterizers commonly use 0.3).
Cov2D cov2d(const Mat23& k, const Cov3D& cov, float dilation = 0.0f);

// Fills conic = (c/det, -b/det, a/det) when det > 1e-9; otherwise flags the
// feature degenerate and zeroes the conic.
Cov2D invert_cov2d(Cov2D c);

struct RayDirResult {
    Vec3 dir;
    bool degenerate = false;
};

// Unit vector from the camera center to the point. Coincident inputs yield
// (0,0,1) with the degenerate flag set.
RayDirResult ray_dir(const Vec3& p_w, const Vec3& cam_pos);

// The 16 real SH basis values for l = 0..3 at a unit direction (checked within
// 1e-4; throws std::invalid_argument otherwise).
ShBasis sh_basis(const Vec3& unit_dir);

struct ColorOptions {
    // Add 0.5 after the SH sum and clamp the result at zero.
    bool offset_and_clamp = true;
};

// Per channel k: sum_i sh[3*i + k] * basis[i], then the optional offset/clamp.
Vec3 sh_color(std::span<const float, 48> sh, const ShBasis& basis, const ColorOptions& opts = {});

struct FeatureOptions {
    float cov2d_dilation = 0.0f;
    ColorOptions color;
};

// End-to-end scalar reference: quat_to_rotation -> cov3d_naive -> project ->
// jacobian -> compute_k -> cov2d -> invert_cov2d -> ray_dir -> sh_basis ->
// sh_color, in that fixed order. Bitwise deterministic for identical inputs.
FeatureOutput compute_features(const Gaussian& g, const CameraParams& cam,
                               const FeatureOptions& opts = {});

}  // namespace gsfc
