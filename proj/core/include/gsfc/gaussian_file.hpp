#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsfc/types.hpp"

namespace gsfc::io {

// Raised on malformed input; the message names the byte offset of the problem.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr char kGaussianFileMagic[4] = {'G', 'S', 'F', 'C'};
inline constexpr std::uint16_t kGaussianFileVersion = 1;
inline constexpr std::size_t kGaussianFileHeaderBytes = 16;

// Binary container: 16-byte header (magic "GSFC", u16 version, u16 flags,
// u64 count, little-endian) followed by count 236-byte records in field order
// position(12) rotation(16) scale(12) sh(192) opacity(4). Round-trips are
// bit-identical; readers do not normalize or otherwise touch the payload.
void write_gaussian_file(std::ostream& out, const std::vector<Gaussian>& gaussians,
                         std::uint16_t flags = 0);
void write_gaussian_file(const std::string& path, const std::vector<Gaussian>& gaussians,
                         std::uint16_t flags = 0);

std::vector<Gaussian> read_gaussian_file(std::istream& in);
std::vector<Gaussian> read_gaussian_file(const std::string& path);

}  // namespace gsfc::io
