#pragma once

#include <map>
#include <string>
#include <vector>

#include "gsfc/types.hpp"

namespace gsfc::io {

struct VerifyReport {
    bool pass = false;
    std::int64_t records = 0;
    std::int64_t compared = 0;
    double tolerance = 1e-5;
    // Largest deviation across compared records, per output field; metric is
    // |a - b| / max(1, |a|, |b|).
    std::map<std::string, double> max_deviation;
    double worst_deviation = 0.0;
    struct InvalidRecord {
        std::int64_t index;
        std::string reason;
    };
    std::vector<InvalidRecord> invalid;  // skipped (e.g. zero-norm rotation)
    std::int64_t flag_mismatches = 0;
};

// Runs the single-pass reference and the staged 7-kernel pipeline on every
// Gaussian and compares all output fields. Invalid records are reported
// individually; the rest are still processed.
VerifyReport verify(const std::vector<Gaussian>& gaussians, const CameraParams& cam,
                    double tolerance = 1e-5);

std::string verify_report_text(const VerifyReport& report);

}  // namespace gsfc::io
