#include "gsfc/gaussian_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace gsfc::io {

namespace {

void put_u16le(std::string& buf, std::uint16_t v) {
    buf.push_back(static_cast<char>(v & 0xff));
    buf.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u64le(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f32le(std::string& buf, float f) {
    const auto bits = std::bit_cast<std::uint32_t>(f);
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

std::uint16_t get_u16le(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint64_t get_u64le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

float get_f32le(const unsigned char* p) {
    std::uint32_t bits = 0;
    for (int i = 3; i >= 0; --i) bits = (bits << 8) | p[i];
    return std::bit_cast<float>(bits);
}

void serialize_record(std::string& buf, const Gaussian& g) {
    put_f32le(buf, g.position.x);
    put_f32le(buf, g.position.y);
    put_f32le(buf, g.position.z);
    put_f32le(buf, g.rotation.w);
    put_f32le(buf, g.rotation.x);
    put_f32le(buf, g.rotation.y);
    put_f32le(buf, g.rotation.z);
    put_f32le(buf, g.scale.x);
    put_f32le(buf, g.scale.y);
    put_f32le(buf, g.scale.z);
    for (float c : g.sh) put_f32le(buf, c);
    put_f32le(buf, g.opacity);
}

Gaussian deserialize_record(const unsigned char* p) {
    Gaussian g;
    g.position = {get_f32le(p), get_f32le(p + 4), get_f32le(p + 8)};
    g.rotation = {get_f32le(p + 12), get_f32le(p + 16), get_f32le(p + 20), get_f32le(p + 24)};
    g.scale = {get_f32le(p + 28), get_f32le(p + 32), get_f32le(p + 36)};
    for (std::size_t i = 0; i < 48; ++i) g.sh[i] = get_f32le(p + 40 + 4 * i);
    g.opacity = get_f32le(p + 232);
    return g;
}

}  // namespace

void write_gaussian_file(std::ostream& out, const std::vector<Gaussian>& gaussians,
                         std::uint16_t flags) {
    std::string buf;
    buf.reserve(kGaussianFileHeaderBytes + gaussians.size() * kGaussianRecordBytes);
    buf.append(kGaussianFileMagic, 4);
    put_u16le(buf, kGaussianFileVersion);
    put_u16le(buf, flags);
    put_u64le(buf, gaussians.size());
    for (const Gaussian& g : gaussians) serialize_record(buf, g);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw ParseError("gaussian file: write failed");
}

void write_gaussian_file(const std::string& path, const std::vector<Gaussian>& gaussians,
                         std::uint16_t flags) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("gaussian file: cannot open for writing: " + path);
    write_gaussian_file(out, gaussians, flags);
}

std::vector<Gaussian> read_gaussian_file(std::istream& in) {
    std::string data;
    {
        std::ostringstream ss;
        ss << in.rdbuf();
        data = ss.str();
    }
    const auto* p = reinterpret_cast<const unsigned char*>(data.data());

    if (data.size() < kGaussianFileHeaderBytes)
        throw ParseError("gaussian file: truncated header, got " + std::to_string(data.size()) +
                         " bytes, need " + std::to_string(kGaussianFileHeaderBytes));
    if (std::memcmp(data.data(), kGaussianFileMagic, 4) != 0)
        throw ParseError("gaussian file: bad magic at byte offset 0");
    const std::uint16_t version = get_u16le(p + 4);
    if (version != kGaussianFileVersion)
        throw ParseError("gaussian file: unsupported version " + std::to_string(version) +
                         " at byte offset 4");
    const std::uint64_t count = get_u64le(p + 8);

    const std::uint64_t expected =
        kGaussianFileHeaderBytes + count * static_cast<std::uint64_t>(kGaussianRecordBytes);
    if (data.size() != expected)
        throw ParseError("gaussian file: payload length mismatch at byte offset " +
                         std::to_string(std::min<std::uint64_t>(data.size(), expected)) +
                         ": expected " + std::to_string(expected) + " bytes total, got " +
                         std::to_string(data.size()));

    std::vector<Gaussian> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
        out.push_back(deserialize_record(p + kGaussianFileHeaderBytes + i * kGaussianRecordBytes));
    return out;
}

std::vector<Gaussian> read_gaussian_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("gaussian file: cannot open: " + path);
    return read_gaussian_file(in);
}

}  // namespace gsfc::io
