#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace gsfc {

// The staged pipeline kernels. Names follow the per-kernel cycle reports.
enum class KernelId {
    color,
    dir_vec,
    cov2d,
    jacobian,
    cov2d_inv,
    projection,
    cov3d,
};

// Report column order.
inline constexpr std::array<KernelId, 7> kKernelReportOrder = {
    KernelId::color,     KernelId::dir_vec,    KernelId::cov2d, KernelId::jacobian,
    KernelId::cov2d_inv, KernelId::projection, KernelId::cov3d,
};

constexpr std::string_view kernel_name(KernelId k) {
    switch (k) {
        case KernelId::color: return "color";
        case KernelId::dir_vec: return "dir_vec";
        case KernelId::cov2d: return "cov2D";
        case KernelId::jacobian: return "Jacobian";
        case KernelId::cov2d_inv: return "cov2D_inv";
        case KernelId::projection: return "projection";
        case KernelId::cov3d: return "cov3D";
    }
    return "?";
}

std::optional<KernelId> kernel_from_name(std::string_view name);

}  // namespace gsfc
