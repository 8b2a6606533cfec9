#include "gsfc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gsfc {

thread_local OpRecorder* OpRecorder::top_ = nullptr;

namespace {

constexpr float kZEps = 1e-6f;

// Real SH constants of the degree-3 basis, in the layout used by 3DGS renderers.
constexpr float kC1 = 0.4886025119029199f;
constexpr float kC2[5] = {1.0925484305920792f, -1.0925484305920792f, 0.31539156525252005f,
                          -1.0925484305920792f, 0.5462742152960396f};
constexpr float kC3[7] = {-0.5900435899266435f, 2.890611442640554f,  -0.4570457994644658f,
                          0.3731763325901154f,  -0.4570457994644658f, 1.445305721320277f,
                          -0.5900435899266435f};

bool orthonormal_within(const Mat3& m, float tol) {
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            float dot = 0.0f;
            for (int k = 0; k < 3; ++k) dot += m.at(i, k) * m.at(j, k);
            const float expect = (i == j) ? 1.0f : 0.0f;
            if (std::fabs(dot - expect) > tol) return false;
        }
    }
    return true;
}

}  // namespace

CameraParams::CameraParams(const Mat3& rotation_cw, const Vec3& translation_cw, Vec2 focal,
                           Vec2 principal)
    : rotation_cw_(rotation_cw),
      translation_cw_(translation_cw),
      focal_(focal),
      principal_(principal) {
    if (!orthonormal_within(rotation_cw_, 1e-5f))
        throw std::invalid_argument("CameraParams: rotation_cw is not orthonormal");
    const Mat3 rt = transpose(rotation_cw_);
    const Vec3 p = mat3_mul_vec3(rt, translation_cw_);
    position_w_ = {-p.x, -p.y, -p.z};
}

CameraParams CameraParams::default_camera() {
    return CameraParams(Mat3::identity(), Vec3{0.0f, 0.0f, 30.0f}, Vec2{500.0f, 500.0f},
                        Vec2{320.0f, 240.0f});
}

Mat3 quat_to_rotation(const Quat& q) {
    const float n2 = q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
    const float n = std::sqrt(n2);
    if (n <= 1e-12f) throw std::invalid_argument("quat_to_rotation: zero-norm quaternion");
    const float w = q.w / n, x = q.x / n, y = q.y / n, z = q.z / n;
    OpRecorder::record_mac(4);
    OpRecorder::record_mul(5);  // sqrt + four normalizing divides

    Mat3 r;
    r.m = {1.0f - 2.0f * (y * y + z * z), 2.0f * (x * y - w * z), 2.0f * (x * z + w * y),
           2.0f * (x * y + w * z), 1.0f - 2.0f * (x * x + z * z), 2.0f * (y * z - w * x),
           2.0f * (x * z - w * y), 2.0f * (y * z + w * x), 1.0f - 2.0f * (x * x + y * y)};
    OpRecorder::record_mul(18);
    OpRecorder::record_add(12);
    return r;
}

Cov3D cov3d_naive(const Mat3& r, const Vec3& s) {
    if (s.x <= 0.0f || s.y <= 0.0f || s.z <= 0.0f)
        throw std::invalid_argument("cov3d_naive: scale components must be positive");

    float S[9] = {s.x * s.x, 0.0f, 0.0f, 0.0f, s.y * s.y, 0.0f, 0.0f, 0.0f, s.z * s.z};
    OpRecorder::record_mul(3);

    const float* R = r.m.data();
    float temp[9];
    float cov[9];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            temp[i * 3 + j] = 0.0f;
            for (int k = 0; k < 3; ++k) {
                temp[i * 3 + j] += R[i * 3 + k] * S[k * 3 + j];
                OpRecorder::record_mac();
            }
        }
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            cov[i * 3 + j] = 0.0f;
            for (int k = 0; k < 3; ++k) {
                cov[i * 3 + j] += temp[i * 3 + k] * R[j * 3 + k];
                OpRecorder::record_mac();
            }
        }
    }
    return Cov3D{cov[0], cov[1], cov[2], cov[4], cov[5], cov[8]};
}

Cov3D cov3d_vectorized(const LaneVector& r1, const LaneVector& r2, const LaneVector& r3,
                       const LaneVector& s) {
    const LaneVector* inputs[4] = {&r1, &r2, &r3, &s};
    for (const LaneVector* v : inputs) {
        if (v->populated() < 3)
            throw std::invalid_argument("cov3d_vectorized: lanes 0..2 must be populated");
        for (int i = 3; i < LaneVector::kWidth; ++i)
            if (v->lane(i) != 0.0f)
                throw std::invalid_argument("cov3d_vectorized: nonzero padding lanes");
    }
    if (s.lane(0) <= 0.0f || s.lane(1) <= 0.0f || s.lane(2) <= 0.0f)
        throw std::invalid_argument("cov3d_vectorized: scale components must be positive");

    const LaneVector a = LaneVector::from3(r1.lane(0), r1.lane(1), r1.lane(2));
    const LaneVector b = LaneVector::from3(r2.lane(0), r2.lane(1), r2.lane(2));
    const LaneVector c = LaneVector::from3(r3.lane(0), r3.lane(1), r3.lane(2));
    const LaneVector sv = LaneVector::from3(s.lane(0), s.lane(1), s.lane(2));
    const LaneVector s2 = LaneVector::mul(sv, sv);

    auto entry = [&s2](const LaneVector& ri, const LaneVector& rj) {
        return LaneVector::reduce_add(LaneVector::mul(LaneVector::mul(s2, ri), rj));
    };

    Cov3D out;
    out.xx = entry(a, a);
    out.xy = entry(a, b);
    out.xz = entry(a, c);
    out.yy = entry(b, b);
    out.yz = entry(b, c);
    out.zz = entry(c, c);
    return out;
}

ProjectResult project(const Vec3& p_w, const CameraParams& cam) {
    ProjectResult out;
    const Vec3 rp = mat3_mul_vec3(cam.rotation_cw(), p_w);
    OpRecorder::record_mac(9);
    out.p_c = rp + cam.translation_cw();
    OpRecorder::record_add(3);

    out.culled = out.p_c.z <= 0.0f;
    const float z = std::max(out.p_c.z, kZEps);
    const Vec2 f = cam.focal();
    const Vec2 pp = cam.principal();
    out.u.x = f.x * out.p_c.x / z + pp.x;
    out.u.y = f.y * out.p_c.y / z + pp.y;
    OpRecorder::record_mul(4);
    OpRecorder::record_add(2);
    return out;
}

JacobianResult jacobian(const Vec3& p_c, Vec2 focal) {
    JacobianResult out;
    out.culled = p_c.z < kZEps;
    const float z = std::max(p_c.z, kZEps);
    const float inv_z = 1.0f / z;
    const float inv_z2 = inv_z * inv_z;
    OpRecorder::record_mul(2);
    out.j.m = {focal.x * inv_z, 0.0f, -focal.x * p_c.x * inv_z2,
               0.0f, focal.y * inv_z, -focal.y * p_c.y * inv_z2};
    OpRecorder::record_mul(6);
    return out;
}

Mat23 compute_k(const Mat23& j, const Mat3& rotation_cw) {
    Mat23 k;
    for (int i = 0; i < 2; ++i) {
        for (int c = 0; c < 3; ++c) {
            float acc = 0.0f;
            for (int m = 0; m < 3; ++m) {
                acc += j.at(i, m) * rotation_cw.at(m, c);
                OpRecorder::record_mac();
            }
            k.at(i, c) = acc;
        }
    }
    return k;
}

Cov2D cov2d(const Mat23& k, const Cov3D& cov, float dilation) {
    const Mat3 sigma = cov.to_matrix();
    // temp = K * Sigma (2x3), then entries of temp * K^T.
    float temp[6];
    for (int i = 0; i < 2; ++i) {
        for (int c = 0; c < 3; ++c) {
            float acc = 0.0f;
            for (int m = 0; m < 3; ++m) {
                acc += k.at(i, m) * sigma.at(m, c);
                OpRecorder::record_mac();
            }
            temp[i * 3 + c] = acc;
        }
    }
    auto row_dot = [&](int i, int j) {
        float acc = 0.0f;
        for (int m = 0; m < 3; ++m) {
            acc += temp[i * 3 + m] * k.at(j, m);
            OpRecorder::record_mac();
        }
        return acc;
    };

    Cov2D out;
    out.a = row_dot(0, 0) + dilation;
    out.b = row_dot(0, 1);
    out.c = row_dot(1, 1) + dilation;
    out.det = out.a * out.c - out.b * out.b;
    OpRecorder::record_mul(2);
    OpRecorder::record_add(3);
    return out;
}

Cov2D invert_cov2d(Cov2D c) {
    if (c.det > 1e-9f) {
        const float inv_det = 1.0f / c.det;
        c.conic = {c.c * inv_det, -c.b * inv_det, c.a * inv_det};
        c.degenerate = false;
        OpRecorder::record_mul(4);
    } else {
        c.conic = {0.0f, 0.0f, 0.0f};
        c.degenerate = true;
    }
    return c;
}

RayDirResult ray_dir(const Vec3& p_w, const Vec3& cam_pos) {
    RayDirResult out;
    const Vec3 d = p_w - cam_pos;
    OpRecorder::record_add(3);
    const float len = norm(d);
    OpRecorder::record_mac(3);
    OpRecorder::record_mul(1);  // sqrt
    if (len <= 1e-9f) {
        out.dir = {0.0f, 0.0f, 1.0f};
        out.degenerate = true;
        return out;
    }
    const float inv = 1.0f / len;
    out.dir = {d.x * inv, d.y * inv, d.z * inv};
    OpRecorder::record_mul(4);
    return out;
}

ShBasis sh_basis(const Vec3& r) {
    const float n = norm(r);
    if (std::fabs(n - 1.0f) > 1e-4f)
        throw std::invalid_argument("sh_basis: direction must be unit length");

    const float x = r.x, y = r.y, z = r.z;
    const float xx = x * x, yy = y * y, zz = z * z;
    const float xy = x * y, yz = y * z, xz = x * z;
    OpRecorder::record_mul(6);

    ShBasis b;
    b.v[0] = kShY00;
    b.v[1] = -kC1 * y;
    b.v[2] = kC1 * z;
    b.v[3] = -kC1 * x;
    b.v[4] = kC2[0] * xy;
    b.v[5] = kC2[1] * yz;
    b.v[6] = kC2[2] * (2.0f * zz - xx - yy);
    b.v[7] = kC2[3] * xz;
    b.v[8] = kC2[4] * (xx - yy);
    b.v[9] = kC3[0] * y * (3.0f * xx - yy);
    b.v[10] = kC3[1] * xy * z;
    b.v[11] = kC3[2] * y * (4.0f * zz - xx - yy);
    b.v[12] = kC3[3] * z * (2.0f * zz - 3.0f * xx - 3.0f * yy);
    b.v[13] = kC3[4] * x * (4.0f * zz - xx - yy);
    b.v[14] = kC3[5] * z * (xx - yy);
    b.v[15] = kC3[6] * x * (xx - 3.0f * yy);
    OpRecorder::record_mul(28);
    OpRecorder::record_add(14);
    return b;
}

Vec3 sh_color(std::span<const float, 48> sh, const ShBasis& basis, const ColorOptions& opts) {
    float c[3];
    for (int ch = 0; ch < 3; ++ch) {
        float acc = 0.0f;
        for (int i = 0; i < 16; ++i) {
            acc += sh[static_cast<std::size_t>(3 * i + ch)] * basis.v[static_cast<std::size_t>(i)];
            OpRecorder::record_mac();
        }
        if (opts.offset_and_clamp) {
            acc += 0.5f;
            OpRecorder::record_add();
            acc = std::max(acc, 0.0f);
        }
        c[ch] = acc;
    }
    return {c[0], c[1], c[2]};
}

FeatureOutput compute_features(const Gaussian& g, const CameraParams& cam,
                               const FeatureOptions& opts) {
    FeatureOutput out;

    const Mat3 r = quat_to_rotation(g.rotation);
    const Cov3D cov3 = cov3d_naive(r, g.scale);

    const ProjectResult proj = project(g.position, cam);
    out.u = proj.u;
    out.depth = proj.p_c.z;
    out.flags.culled = proj.culled;

    const JacobianResult jac = jacobian(proj.p_c, cam.focal());
    out.flags.culled = out.flags.culled || jac.culled;

    const Mat23 k = compute_k(jac.j, cam.rotation_cw());
    Cov2D c2 = cov2d(k, cov3, opts.cov2d_dilation);
    c2 = invert_cov2d(c2);
    out.cov2d = c2;
    out.flags.degenerate_conic = c2.degenerate;

    const RayDirResult rd = ray_dir(g.position, cam.position_w());
    out.flags.degenerate_dir = rd.degenerate;
    const ShBasis basis = sh_basis(rd.dir);
    out.color = sh_color(std::span<const float, 48>(g.sh), basis, opts.color);
    return out;
}

}  // namespace gsfc
