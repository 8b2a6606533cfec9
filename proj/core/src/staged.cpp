#include "gsfc/staged.hpp"

namespace gsfc::staged {

ProjectionMsg projection_kernel(const Vec3& p_w, const CameraParams& cam) {
    const ProjectResult r = project(p_w, cam);
    return ProjectionMsg{r.u, r.p_c.z, r.p_c, r.culled};
}

Cov3D cov3d_kernel(const Quat& q, const Vec3& s) {
    const Mat3 r = quat_to_rotation(q);
    const LaneVector r1 = LaneVector::from3(r.at(0, 0), r.at(0, 1), r.at(0, 2));
    const LaneVector r2 = LaneVector::from3(r.at(1, 0), r.at(1, 1), r.at(1, 2));
    const LaneVector r3 = LaneVector::from3(r.at(2, 0), r.at(2, 1), r.at(2, 2));
    const LaneVector sv = LaneVector::from3(s.x, s.y, s.z);
    return cov3d_vectorized(r1, r2, r3, sv);
}

JacobianMsg jacobian_kernel(const Vec3& p_c, const CameraParams& cam) {
    const JacobianResult r = jacobian(p_c, cam.focal());
    return JacobianMsg{r.j, r.culled};
}

Cov2D cov2d_kernel(const Mat23& j, const Cov3D& cov, const CameraParams& cam, float dilation) {
    const Mat23 k = compute_k(j, cam.rotation_cw());
    return cov2d(k, cov, dilation);
}

Cov2D cov2d_inv_kernel(Cov2D c) { return invert_cov2d(c); }

DirVecMsg dir_vec_kernel(const Vec3& p_w, const CameraParams& cam) {
    const RayDirResult r = ray_dir(p_w, cam.position_w());
    return DirVecMsg{sh_basis(r.dir), r.degenerate};
}

Vec3 color_kernel(std::span<const float, 48> sh, const ShBasis& basis, const ColorOptions& opts) {
    return sh_color(sh, basis, opts);
}

FeatureOutput staged_features(const Gaussian& g, const CameraParams& cam,
                              const FeatureOptions& opts) {
    FeatureOutput out;

    const ProjectionMsg proj = projection_kernel(g.position, cam);
    out.u = proj.u;
    out.depth = proj.depth;
    out.flags.culled = proj.culled;

    const JacobianMsg jac = jacobian_kernel(proj.p_c, cam);
    out.flags.culled = out.flags.culled || jac.culled;

    const Cov3D cov3 = cov3d_kernel(g.rotation, g.scale);
    Cov2D c2 = cov2d_kernel(jac.j, cov3, cam, opts.cov2d_dilation);
    c2 = cov2d_inv_kernel(c2);
    out.cov2d = c2;
    out.flags.degenerate_conic = c2.degenerate;

    const DirVecMsg dir = dir_vec_kernel(g.position, cam);
    out.flags.degenerate_dir = dir.degenerate;
    out.color = color_kernel(std::span<const float, 48>(g.sh), dir.basis, opts.color);
    return out;
}

std::map<KernelId, OpCounts> measure_kernel_ops(const Gaussian& g, const CameraParams& cam,
                                                const FeatureOptions& opts) {
    std::map<KernelId, OpCounts> counts;

    ProjectionMsg proj;
    {
        OpRecorder rec;
        proj = projection_kernel(g.position, cam);
        counts[KernelId::projection] = rec.counts();
    }
    JacobianMsg jac;
    {
        OpRecorder rec;
        jac = jacobian_kernel(proj.p_c, cam);
        counts[KernelId::jacobian] = rec.counts();
    }
    Cov3D cov3;
    {
        OpRecorder rec;
        cov3 = cov3d_kernel(g.rotation, g.scale);
        counts[KernelId::cov3d] = rec.counts();
    }
    Cov2D c2;
    {
        OpRecorder rec;
        c2 = cov2d_kernel(jac.j, cov3, cam, opts.cov2d_dilation);
        counts[KernelId::cov2d] = rec.counts();
    }
    {
        OpRecorder rec;
        c2 = cov2d_inv_kernel(c2);
        counts[KernelId::cov2d_inv] = rec.counts();
    }
    DirVecMsg dir;
    {
        OpRecorder rec;
        dir = dir_vec_kernel(g.position, cam);
        counts[KernelId::dir_vec] = rec.counts();
    }
    {
        OpRecorder rec;
        (void)color_kernel(std::span<const float, 48>(g.sh), dir.basis, opts.color);
        counts[KernelId::color] = rec.counts();
    }
    return counts;
}

std::map<KernelId, OpCounts> measure_kernel_ops_naive(const Gaussian& g, const CameraParams& cam,
                                                      const FeatureOptions& opts) {
    std::map<KernelId, OpCounts> counts;

    ProjectResult proj;
    {
        OpRecorder rec;
        proj = project(g.position, cam);
        counts[KernelId::projection] = rec.counts();
    }
    Cov3D cov3;
    {
        OpRecorder rec;
        const Mat3 r = quat_to_rotation(g.rotation);
        cov3 = cov3d_naive(r, g.scale);
        counts[KernelId::cov3d] = rec.counts();
    }
    Cov2D c2;
    {
        OpRecorder rec;
        const JacobianResult jac = jacobian(proj.p_c, cam.focal());
        const Mat23 k = compute_k(jac.j, cam.rotation_cw());
        c2 = cov2d(k, cov3, opts.cov2d_dilation);
        counts[KernelId::cov2d] = rec.counts();
    }
    {
        OpRecorder rec;
        c2 = invert_cov2d(c2);
        counts[KernelId::cov2d_inv] = rec.counts();
    }
    {
        OpRecorder rec;
        const RayDirResult rd = ray_dir(g.position, cam.position_w());
        const ShBasis basis = sh_basis(rd.dir);
        (void)sh_color(std::span<const float, 48>(g.sh), basis, opts.color);
        counts[KernelId::color] = rec.counts();
    }
    return counts;
}

}  // namespace gsfc::staged
