#pragma once

#include <array>
#include <cmath>

namespace gsfc {

struct Vec2 {
    float x = 0.0f;
    float y = 0.0f;
};

struct Vec3 {
    float x = 0.0f;
    float y = 0.0f;
    float z = 0.0f;
};

// Scalar-first quaternion (w, x, y, z).
struct Quat {
    float w = 1.0f;
    float x = 0.0f;
    float y = 0.0f;
    float z = 0.0f;
};

// Row-major 3x3 matrix.
struct Mat3 {
    std::array<float, 9> m{};

    float& at(int r, int c) { return m[r * 3 + c]; }
    float at(int r, int c) const { return m[r * 3 + c]; }

    static Mat3 identity() {
        Mat3 out;
        out.m = {1.0f, 0.0f, 0.0f, 0.0f, 1.0f, 0.0f, 0.0f, 0.0f, 1.0f};
        return out;
    }
};

// Row-major 2x3 matrix.
struct Mat23 {
    std::array<float, 6> m{};

    float& at(int r, int c) { return m[r * 3 + c]; }
    float at(int r, int c) const { return m[r * 3 + c]; }
};

inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }

inline float dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline float norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 mat3_mul_vec3(const Mat3& m, const Vec3& v) {
    return {m.m[0] * v.x + m.m[1] * v.y + m.m[2] * v.z,
            m.m[3] * v.x + m.m[4] * v.y + m.m[5] * v.z,
            m.m[6] * v.x + m.m[7] * v.y + m.m[8] * v.z};
}

inline Mat3 transpose(const Mat3& m) {
    Mat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            out.at(r, c) = m.at(c, r);
    return out;
}

}  // namespace gsfc
