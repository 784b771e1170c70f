#ifndef GA_PNG_HPP
#define GA_PNG_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ga/render.hpp"

namespace ga {

// 8-bit RGB PNG, no alpha. The zlib stream uses an in-tree deflate encoder
// (single fixed-Huffman block, greedy LZ77) so identical pixels produce
// identical files on every platform.
std::vector<uint8_t> encode_png(const Image& img);

// Atomic: writes to a temp file in the target directory, then renames.
void write_file_atomic(const std::filesystem::path& path, const std::vector<uint8_t>& bytes);
void write_png(const std::filesystem::path& path, const Image& img);

uint32_t crc32(const uint8_t* data, size_t len, uint32_t seed = 0);
uint32_t adler32(const uint8_t* data, size_t len);

// Raw deflate stream (single fixed-Huffman block), exposed for the format
// round-trip tests.
std::vector<uint8_t> deflate_fixed(const std::vector<uint8_t>& raw);

}  // namespace ga

#endif  // GA_PNG_HPP
