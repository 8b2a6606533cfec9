#include "gsfc/arch.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace gsfc {

std::optional<KernelId> kernel_from_name(std::string_view name) {
    for (KernelId k : kKernelReportOrder)
        if (kernel_name(k) == name) return k;
    return std::nullopt;
}

namespace arch {

std::optional<Method> method_from_name(std::string_view name) {
    for (Method m : {Method::naive, Method::stream, Method::window})
        if (method_name(m) == name) return m;
    return std::nullopt;
}

const KernelCost& KernelCostProfile::at(KernelId k) const {
    auto it = cost.find(k);
    if (it == cost.end())
        throw ConfigError("profile has no entry for kernel " + std::string(kernel_name(k)));
    return it->second;
}

KernelId KernelCostProfile::bottleneck() const {
    if (cost.empty()) throw ConfigError("empty cost profile");
    KernelId best = cost.begin()->first;
    double best_avg = cost.begin()->second.avg;
    for (const auto& [k, c] : cost) {
        if (c.avg > best_avg) {
            best = k;
            best_avg = c.avg;
        }
    }
    return best;
}

KernelCostProfile calibrated_profile(Method method) {
    KernelCostProfile p;
    p.source = ProfileSource::calibrated;
    switch (method) {
        case Method::naive:
            p.cost = {
                {KernelId::color, {1822, 1812, 1861}},
                {KernelId::cov2d, {1342, 1332, 1381}},
                {KernelId::cov2d_inv, {1180, 1180, 1181}},
                {KernelId::projection, {670, 670, 671}},
                {KernelId::cov3d, {276, 276, 277}},
            };
            break;
        case Method::stream:
            p.cost = {
                {KernelId::color, {433, 428, 485}},
                {KernelId::dir_vec, {262, 77, 428}},
                {KernelId::cov2d, {225, 158, 429}},
                {KernelId::jacobian, {135, 124, 214}},
                {KernelId::cov2d_inv, {230, 158, 483}},
                {KernelId::projection, {79, 79, 429}},
                {KernelId::cov3d, {210, 210, 429}},
            };
            break;
        case Method::window:
            p.cost = {
                {KernelId::color, {371, 371, 371}},
                {KernelId::dir_vec, {83, 83, 83}},
                {KernelId::cov2d, {184, 183, 185}},
                {KernelId::jacobian, {130, 130, 132}},
                {KernelId::cov2d_inv, {57, 57, 57}},
                {KernelId::projection, {89, 89, 89}},
                {KernelId::cov3d, {194, 194, 196}},
            };
            break;
    }
    return p;
}

KernelCostProfile analytic_profile(const std::map<KernelId, OpCounts>& op_counts,
                                   std::span<const KernelId> required_kernels, int lanes_per_mac,
                                   double overhead_cycles) {
    if (lanes_per_mac < 1) throw ConfigError("analytic_profile: lanes_per_mac must be >= 1");
    KernelCostProfile p;
    p.source = ProfileSource::analytic;
    for (KernelId k : required_kernels) {
        auto it = op_counts.find(k);
        if (it == op_counts.end())
            throw ConfigError("analytic_profile: no op counts for kernel " +
                              std::string(kernel_name(k)));
        const OpCounts& c = it->second;
        const double vector_cycles =
            std::ceil(static_cast<double>(c.lane_total()) / static_cast<double>(lanes_per_mac));
        double cycles = static_cast<double>(c.scalar_slots()) + vector_cycles + overhead_cycles;
        if (cycles < 1.0) cycles = 1.0;
        p.cost[k] = KernelCost{cycles, cycles, cycles};
    }
    return p;
}

namespace {

std::int64_t ceil_div(std::int64_t num, std::int64_t den) { return (num + den - 1) / den; }

}  // namespace

std::int64_t window_load_cycles(std::int64_t bytes, const InterfaceSpec& iface) {
    if (bytes < 0) throw ConfigError("transfer: negative byte count");
    if (bytes == 0) return 0;
    const std::int64_t bits_per_cycle =
        static_cast<std::int64_t>(iface.window_load_units) * iface.window_load_bits;
    return ceil_div(bytes * 8, bits_per_cycle);
}

std::int64_t window_store_cycles(std::int64_t bytes, const InterfaceSpec& iface) {
    if (bytes < 0) throw ConfigError("transfer: negative byte count");
    if (bytes == 0) return 0;
    const std::int64_t bits_per_cycle =
        static_cast<std::int64_t>(iface.window_store_units) * iface.window_store_bits;
    return ceil_div(bytes * 8, bits_per_cycle);
}

std::int64_t transfer_cycles(std::int64_t bytes, const InterfaceSpec& iface) {
    if (bytes < 0) throw ConfigError("transfer: negative byte count");
    if (bytes == 0) return 0;
    if (iface.kind == InterfaceKind::stream)
        return ceil_div(bytes * 8, iface.stream_bits_per_cycle);
    return std::max(window_load_cycles(bytes, iface), window_store_cycles(bytes, iface));
}

double ContentionModel::factor(int n_units) const {
    if (n_units <= saturation_units) return 1.0;
    return 1.0 / (1.0 + excess_stall_fraction * static_cast<double>(n_units - saturation_units));
}

void save_profile(const KernelCostProfile& profile, std::ostream& out) {
    out << "source = "
        << (profile.source == ProfileSource::calibrated ? "calibrated" : "analytic") << "\n";
    for (KernelId k : kKernelReportOrder) {
        if (!profile.has(k)) continue;
        const KernelCost& c = profile.at(k);
        const std::string_view n = kernel_name(k);
        out << n << ".avg = " << c.avg << "\n";
        out << n << ".min = " << c.min << "\n";
        out << n << ".max = " << c.max << "\n";
    }
}

void save_profile_file(const KernelCostProfile& profile, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open profile file for writing: " + path);
    out.precision(17);
    save_profile(profile, out);
}

KernelCostProfile load_profile(std::istream& in) {
    KernelCostProfile p;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key, eq;
        if (!(ls >> key)) continue;  // blank line
        if (!(ls >> eq) || eq != "=")
            throw ConfigError("profile line " + std::to_string(lineno) + ": expected 'key = value'");
        if (key == "source") {
            std::string v;
            ls >> v;
            if (v == "calibrated")
                p.source = ProfileSource::calibrated;
            else if (v == "analytic")
                p.source = ProfileSource::analytic;
            else
                throw ConfigError("profile line " + std::to_string(lineno) + ": unknown source");
            continue;
        }
        const auto dotpos = key.find('.');
        if (dotpos == std::string::npos)
            throw ConfigError("profile line " + std::to_string(lineno) + ": unknown key " + key);
        const std::string kname = key.substr(0, dotpos);
        const std::string field = key.substr(dotpos + 1);
        const auto kid = kernel_from_name(kname);
        if (!kid)
            throw ConfigError("profile line " + std::to_string(lineno) + ": unknown kernel " +
                              kname);
        double value = 0.0;
        if (!(ls >> value))
            throw ConfigError("profile line " + std::to_string(lineno) + ": bad number");
        KernelCost& c = p.cost[*kid];
        if (field == "avg")
            c.avg = value;
        else if (field == "min")
            c.min = value;
        else if (field == "max")
            c.max = value;
        else
            throw ConfigError("profile line " + std::to_string(lineno) + ": unknown field " +
                              field);
    }
    for (const auto& [k, c] : p.cost) {
        if (c.avg <= 0.0 || c.min <= 0.0 || c.max <= 0.0 || c.avg < c.min || c.avg > c.max)
            throw ConfigError("profile: invalid cycle range for kernel " +
                              std::string(kernel_name(k)));
    }
    return p;
}

KernelCostProfile load_profile_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open profile file: " + path);
    return load_profile(in);
}

}  // namespace arch
}  // namespace gsfc
