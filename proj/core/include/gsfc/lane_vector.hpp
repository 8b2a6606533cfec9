#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>

namespace gsfc {

// Arithmetic-op counters for the analytic cost model. Scalar ops and vector
// lane ops are tracked separately; a vector op over k populated lanes counts
// k lane ops. Counting never changes numeric results.
struct OpCounts {
    std::uint64_t mul = 0;  // scalar multiplies (divisions and square roots count here too)
    std::uint64_t mac = 0;  // scalar multiply-accumulates
    std::uint64_t add = 0;  // scalar additions/subtractions
    std::uint64_t lane_mul = 0;
    std::uint64_t lane_mac = 0;
    std::uint64_t lane_add = 0;

    std::uint64_t scalar_total() const { return mul + mac + add; }
    // Scalar issue slots: the scalar unit has no fused multiply-add, so a MAC
    // issues as a multiply plus an add. Vector MACs stay single-slot.
    std::uint64_t scalar_slots() const { return mul + 2 * mac + add; }
    std::uint64_t lane_total() const { return lane_mul + lane_mac + lane_add; }
    std::uint64_t total_multiplies() const { return mul + mac + lane_mul + lane_mac; }

    OpCounts& operator+=(const OpCounts& o) {
        mul += o.mul;
        mac += o.mac;
        add += o.add;
        lane_mul += o.lane_mul;
        lane_mac += o.lane_mac;
        lane_add += o.lane_add;
        return *this;
    }
};

// RAII scope that records arithmetic ops executed on this thread. Scopes nest;
// every active scope sees the counts. When no scope is active recording is a no-op,
// so all kernels stay pure functions of their inputs.
class OpRecorder {
  public:
    OpRecorder() : prev_(top_) { top_ = this; }
    ~OpRecorder() { top_ = prev_; }
    OpRecorder(const OpRecorder&) = delete;
    OpRecorder& operator=(const OpRecorder&) = delete;

    const OpCounts& counts() const { return counts_; }

    static void record_mul(std::uint64_t n = 1) {
        for (OpRecorder* r = top_; r; r = r->prev_) r->counts_.mul += n;
    }
    static void record_mac(std::uint64_t n = 1) {
        for (OpRecorder* r = top_; r; r = r->prev_) r->counts_.mac += n;
    }
    static void record_add(std::uint64_t n = 1) {
        for (OpRecorder* r = top_; r; r = r->prev_) r->counts_.add += n;
    }
    static void record_lane_mul(std::uint64_t n) {
        for (OpRecorder* r = top_; r; r = r->prev_) r->counts_.lane_mul += n;
    }
    static void record_lane_mac(std::uint64_t n) {
        for (OpRecorder* r = top_; r; r = r->prev_) r->counts_.lane_mac += n;
    }
    static void record_lane_add(std::uint64_t n) {
        for (OpRecorder* r = top_; r; r = r->prev_) r->counts_.lane_add += n;
    }

  private:
    OpCounts counts_;
    OpRecorder* prev_;
    static thread_local OpRecorder* top_;
};

// Fixed-width vector of 8 float32 lanes. Elementwise ops touch exactly the
// populated lane count; horizontal reduction sums the populated lanes left
// to right. Models one SIMD register of the tile processor.
class LaneVector {
  public:
    static constexpr int kWidth = 8;

    LaneVector() = default;

    static LaneVector from(std::span<const float> values) {
        if (values.size() > kWidth) throw std::invalid_argument("LaneVector: more than 8 lanes");
        LaneVector v;
        v.populated_ = static_cast<int>(values.size());
        for (int i = 0; i < v.populated_; ++i) v.lanes_[i] = values[i];
        return v;
    }

    static LaneVector from3(float a, float b, float c) {
        const float vals[3] = {a, b, c};
        return from(std::span<const float>(vals, 3));
    }

    int populated() const { return populated_; }
    float lane(int i) const { return lanes_[static_cast<std::size_t>(i)]; }

    // Elementwise product over the populated lanes.
    static LaneVector mul(const LaneVector& a, const LaneVector& b) {
        check_same(a, b);
        LaneVector out;
        out.populated_ = a.populated_;
        for (int i = 0; i < a.populated_; ++i) out.lanes_[i] = a.lanes_[i] * b.lanes_[i];
        OpRecorder::record_lane_mul(static_cast<std::uint64_t>(a.populated_));
        return out;
    }

    // acc + a * b, elementwise over the populated lanes.
    static LaneVector mac(const LaneVector& acc, const LaneVector& a, const LaneVector& b) {
        check_same(a, b);
        check_same(acc, a);
        LaneVector out;
        out.populated_ = a.populated_;
        for (int i = 0; i < a.populated_; ++i)
            out.lanes_[i] = acc.lanes_[i] + a.lanes_[i] * b.lanes_[i];
        OpRecorder::record_lane_mac(static_cast<std::uint64_t>(a.populated_));
        return out;
    }

    // Horizontal sum of the populated lanes, left to right.
    static float reduce_add(const LaneVector& v) {
        float sum = 0.0f;
        for (int i = 0; i < v.populated_; ++i) sum += v.lanes_[i];
        if (v.populated_ > 1)
            OpRecorder::record_lane_add(static_cast<std::uint64_t>(v.populated_ - 1));
        return sum;
    }

  private:
    static void check_same(const LaneVector& a, const LaneVector& b) {
        if (a.populated_ != b.populated_)
            throw std::invalid_argument("LaneVector: populated lane count mismatch");
    }

    std::array<float, kWidth> lanes_{};
    int populated_ = 0;
};

}  // namespace gsfc
