#pragma once

#include <array>
#include <cstddef>

#include "gsfc/geometry.hpp"

namespace gsfc {

// One splat primitive. 16 spherical-harmonic coefficients per color channel,
// stored channel-interleaved: coefficient i of channel k lives at sh[3*i + k].
struct Gaussian {
    Vec3 position;               // world units
    Quat rotation;               // unit quaternion expected; normalized on ingest into the kernels
    Vec3 scale;                  // per-axis standard deviation, strictly positive
    std::array<float, 48> sh{};  // view-dependent color coefficients
    float opacity = 1.0f;
};

// Serialized record: position(12) rotation(16) scale(12) sh(192) opacity(4).
inline constexpr std::size_t kGaussianRecordBytes = 236;
static_assert(kGaussianRecordBytes == 59 * sizeof(float));

// Pinhole camera. rotation_cw maps world to camera coordinates, p_c = R_cw * p_w + t_cw.
class CameraParams {
  public:
    // Throws std::invalid_argument unless rotation_cw is orthonormal within 1e-5.
    CameraParams(const Mat3& rotation_cw, const Vec3& translation_cw, Vec2 focal, Vec2 principal);

    const Mat3& rotation_cw() const { return rotation_cw_; }
    const Vec3& translation_cw() const { return translation_cw_; }
    Vec2 focal() const { return focal_; }
    Vec2 principal() const { return principal_; }
    // Camera center in world coordinates, -R_cw^T * t_cw (cached).
    const Vec3& position_w() const { return position_w_; }

    // Identity rotation, camera 30 world units behind the origin looking down +z,
    // focal (500,500), principal point (320,240). Keeps the generator's default
    // [-10,10]^3 positions in front of the camera.
    static CameraParams default_camera();

  private:
    Mat3 rotation_cw_;
    Vec3 translation_cw_;
    Vec2 focal_;
    Vec2 principal_;
    Vec3 position_w_;
};

// Upper-triangular storage (xx, xy, xz, yy, yz, zz) of a symmetric 3x3 covariance.
struct Cov3D {
    float xx = 0.0f, xy = 0.0f, xz = 0.0f, yy = 0.0f, yz = 0.0f, zz = 0.0f;

    Mat3 to_matrix() const {
        Mat3 out;
        out.m = {xx, xy, xz, xy, yy, yz, xz, yz, zz};
        return out;
    }
};

// Symmetric 2x2 covariance [[a,b],[b,c]] plus its inverse (conic) and determinant.
struct Cov2D {
    float a = 0.0f, b = 0.0f, c = 0.0f;
    std::array<float, 3> conic{};  // (c/det, -b/det, a/det); zeroed when degenerate
    float det = 0.0f;
    bool degenerate = false;
};

// Real spherical-harmonic basis values Y_lm for l = 0..3.
struct ShBasis {
    std::array<float, 16> v{};
};

struct FeatureFlags {
    bool culled = false;          // behind-camera (depth <= 0)
    bool degenerate_conic = false;
    bool degenerate_dir = false;  // splat coincides with the camera center
};

// Per-Gaussian pipeline output: screen position, depth, 2D covariance, color.
struct FeatureOutput {
    Vec2 u;
    float depth = 0.0f;
    Cov2D cov2d;
    Vec3 color;
    FeatureFlags flags;
};

}  // namespace gsfc
