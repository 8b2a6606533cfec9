#include "gsfc/dataset.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace gsfc::io {

namespace {

// Hand-rolled transforms on top of mt19937_64; std::*_distribution output is
// implementation-defined and would tie file bytes to a libstdc++ version.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Box-Muller; one normal per call, the pair partner is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = unit();
        while (u1 <= 0.0) u1 = unit();
        const double u2 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace

std::vector<Gaussian> generate(std::int64_t count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("generate: count must be >= 1");
    Rng rng(seed);

    std::vector<Gaussian> out;
    out.reserve(static_cast<std::size_t>(count));
    const double log_lo = std::log(0.01);
    const double log_hi = std::log(1.0);

    for (std::int64_t i = 0; i < count; ++i) {
        Gaussian g;
        g.position = {static_cast<float>(rng.uniform(-10.0, 10.0)),
                      static_cast<float>(rng.uniform(-10.0, 10.0)),
                      static_cast<float>(rng.uniform(-10.0, 10.0))};

        double q[4];
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (double& c : q) {
                c = rng.normal();
                norm2 += c * c;
            }
        } while (norm2 < 1e-12);
        const double inv = 1.0 / std::sqrt(norm2);
        g.rotation = {static_cast<float>(q[0] * inv), static_cast<float>(q[1] * inv),
                      static_cast<float>(q[2] * inv), static_cast<float>(q[3] * inv)};

        g.scale = {static_cast<float>(std::exp(rng.uniform(log_lo, log_hi))),
                   static_cast<float>(std::exp(rng.uniform(log_lo, log_hi))),
                   static_cast<float>(std::exp(rng.uniform(log_lo, log_hi)))};

        for (std::size_t c = 0; c < 48; ++c)
            g.sh[c] = static_cast<float>(0.5 * rng.normal());
        for (std::size_t ch = 0; ch < 3; ++ch) g.sh[ch] += 0.5f;  // degree-0 shift

        g.opacity = static_cast<float>(1.0 - rng.unit());  // (0, 1]
        out.push_back(g);
    }
    return out;
}

}  // namespace gsfc::io
