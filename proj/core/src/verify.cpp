#include "gsfc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "gsfc/kernels.hpp"
#include "gsfc/staged.hpp"

namespace gsfc::io {

namespace {

double rel_dev(float a, float b) {
    const double da = a, db = b;
    const double scale = std::max({1.0, std::fabs(da), std::fabs(db)});
    return std::fabs(da - db) / scale;
}

void note(VerifyReport& r, const std::string& field, float a, float b) {
    const double d = rel_dev(a, b);
    auto& slot = r.max_deviation[field];
    slot = std::max(slot, d);
    r.worst_deviation = std::max(r.worst_deviation, d);
}

}  // namespace

VerifyReport verify(const std::vector<Gaussian>& gaussians, const CameraParams& cam,
                    double tolerance) {
    VerifyReport report;
    report.records = static_cast<std::int64_t>(gaussians.size());
    report.tolerance = tolerance;

    for (std::size_t i = 0; i < gaussians.size(); ++i) {
        FeatureOutput ref, staged_out;
        try {
            ref = compute_features(gaussians[i], cam);
            staged_out = staged::staged_features(gaussians[i], cam);
        } catch (const std::invalid_argument& e) {
            report.invalid.push_back({static_cast<std::int64_t>(i), e.what()});
            continue;
        }
        ++report.compared;

        note(report, "u.x", ref.u.x, staged_out.u.x);
        note(report, "u.y", ref.u.y, staged_out.u.y);
        note(report, "depth", ref.depth, staged_out.depth);
        note(report, "cov2d.a", ref.cov2d.a, staged_out.cov2d.a);
        note(report, "cov2d.b", ref.cov2d.b, staged_out.cov2d.b);
        note(report, "cov2d.c", ref.cov2d.c, staged_out.cov2d.c);
        note(report, "conic.0", ref.cov2d.conic[0], staged_out.cov2d.conic[0]);
        note(report, "conic.1", ref.cov2d.conic[1], staged_out.cov2d.conic[1]);
        note(report, "conic.2", ref.cov2d.conic[2], staged_out.cov2d.conic[2]);
        note(report, "color.r", ref.color.x, staged_out.color.x);
        note(report, "color.g", ref.color.y, staged_out.color.y);
        note(report, "color.b", ref.color.z, staged_out.color.z);

        if (ref.flags.culled != staged_out.flags.culled ||
            ref.flags.degenerate_conic != staged_out.flags.degenerate_conic ||
            ref.flags.degenerate_dir != staged_out.flags.degenerate_dir)
            ++report.flag_mismatches;
    }

    report.pass = report.compared > 0 && report.worst_deviation <= tolerance &&
                  report.flag_mismatches == 0;
    return report;
}

std::string verify_report_text(const VerifyReport& report) {
    std::ostringstream out;
    out << "records:  " << report.records << "\n";
    out << "compared: " << report.compared << "\n";
    for (const auto& bad : report.invalid)
        out << "invalid record " << bad.index << ": " << bad.reason << "\n";
    out << "max per-field deviation (tolerance " << report.tolerance << "):\n";
    for (const auto& [field, dev] : report.max_deviation) {
        char line[96];
        std::snprintf(line, sizeof(line), "  %-10s %.3e\n", field.c_str(), dev);
        out << line;
    }
    if (report.flag_mismatches > 0) out << "flag mismatches: " << report.flag_mismatches << "\n";
    out << (report.pass ? "PASS" : "FAIL") << "\n";
    return out.str();
}

}  // namespace gsfc::io
