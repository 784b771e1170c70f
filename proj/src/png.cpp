#include "ga/png.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace ga {

uint32_t crc32(const uint8_t* data, size_t len, uint32_t seed) {
  static const std::array<uint32_t, 256> table = [] {
    std::array<uint32_t, 256> t{};
    for (uint32_t i = 0; i < 256; ++i) {
      uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  uint32_t c = seed ^ 0xFFFFFFFFu;
  for (size_t i = 0; i < len; ++i) c = table[(c ^ data[i]) & 0xFF] ^ (c >> 8);
  return c ^ 0xFFFFFFFFu;
}

uint32_t adler32(const uint8_t* data, size_t len) {
  uint32_t a = 1, b = 0;
  for (size_t i = 0; i < len; ++i) {
    a = (a + data[i]) % 65521u;
    b = (b + a) % 65521u;
  }
  return (b << 16) | a;
}

namespace {

class BitWriter {
 public:
  explicit BitWriter(std::vector<uint8_t>& out) : out_(out) {}

  // value's low `count` bits, LSB first (extra bits, block header).
  void bits(uint32_t value, int count) {
    for (int i = 0; i < count; ++i) {
      acc_ |= ((value >> i) & 1u) << fill_;
      if (++fill_ == 8) flush_byte();
    }
  }

  // Huffman code of `length` bits, most-significant bit first.
  void code(uint32_t value, int length) {
    for (int i = length - 1; i >= 0; --i) {
      acc_ |= ((value >> i) & 1u) << fill_;
      if (++fill_ == 8) flush_byte();
    }
  }

  void align() {
    if (fill_ > 0) flush_byte();
  }

 private:
  void flush_byte() {
    out_.push_back(static_cast<uint8_t>(acc_));
    acc_ = 0;
    fill_ = 0;
  }
  std::vector<uint8_t>& out_;
  uint32_t acc_ = 0;
  int fill_ = 0;
};

void put_fixed_literal(BitWriter& bw, int lit) {
  if (lit < 144)
    bw.code(0x30u + static_cast<uint32_t>(lit), 8);
  else
    bw.code(0x190u + static_cast<uint32_t>(lit - 144), 9);
}

void put_fixed_lenlen(BitWriter& bw, int sym) {  // 256..287
  if (sym < 280)
    bw.code(static_cast<uint32_t>(sym - 256), 7);
  else
    bw.code(0xC0u + static_cast<uint32_t>(sym - 280), 8);
}

struct LengthCode {
  int symbol;
  int extra_bits;
  int extra_value;
};

LengthCode length_code(int length) {  // 3..258
  static constexpr int base[] = {3,  4,  5,  6,  7,  8,  9,  10, 11,  13,  15,  17,  19,  23, 27,
                                 31, 35, 43, 51, 59, 67, 83, 99, 115, 131, 163, 195, 227, 258};
  static constexpr int extra[] = {0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2,
                                  2, 3, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 0};
  int idx = 28;
  while (base[idx] > length) --idx;
  return {257 + idx, extra[idx], length - base[idx]};
}

LengthCode distance_code(int dist) {  // 1..32768
  static constexpr int base[] = {1,    2,    3,    4,    5,    7,     9,     13,    17,   25,
                                 33,   49,   65,   97,   129,  193,   257,   385,   513,  769,
                                 1025, 1537, 2049, 3073, 4097, 6145,  8193,  12289, 16385, 24577};
  static constexpr int extra[] = {0, 0, 0, 0, 1, 1, 2, 2,  3,  3,  4,  4,  5,  5,  6,
                                  6, 7, 7, 8, 8, 9, 9, 10, 10, 11, 11, 12, 12, 13, 13};
  int idx = 29;
  while (base[idx] > dist) --idx;
  return {idx, extra[idx], dist - base[idx]};
}

void put_be32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v >> 24));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

void put_chunk(std::vector<uint8_t>& out, const char type[4], const std::vector<uint8_t>& data) {
  put_be32(out, static_cast<uint32_t>(data.size()));
  const size_t start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  put_be32(out, crc32(out.data() + start, out.size() - start));
}

}  // namespace

std::vector<uint8_t> deflate_fixed(const std::vector<uint8_t>& raw) {
  constexpr int kMinMatch = 3;
  constexpr int kMaxMatch = 258;
  constexpr int kWindow = 32768;
  constexpr int kMaxChain = 64;
  constexpr int kHashBits = 15;
  constexpr size_t kHashSize = 1u << kHashBits;

  std::vector<uint8_t> out;
  out.reserve(raw.size() / 4 + 64);
  BitWriter bw(out);
  bw.bits(1, 1);  // BFINAL
  bw.bits(1, 2);  // BTYPE: fixed Huffman

  const size_t n = raw.size();
  std::vector<int32_t> head(kHashSize, -1);
  std::vector<int32_t> prev(n, -1);
  auto hash3 = [&](size_t i) -> uint32_t {
    const uint32_t h = static_cast<uint32_t>(raw[i]) | (static_cast<uint32_t>(raw[i + 1]) << 8) |
                       (static_cast<uint32_t>(raw[i + 2]) << 16);
    return (h * 2654435761u) >> (32 - kHashBits);
  };

  size_t i = 0;
  while (i < n) {
    int best_len = 0;
    int best_dist = 0;
    if (i + kMinMatch <= n) {
      const uint32_t h = hash3(i);
      int32_t cand = head[h];
      int chain = kMaxChain;
      const int max_len = static_cast<int>(std::min<size_t>(kMaxMatch, n - i));
      while (cand >= 0 && chain-- > 0) {
        const size_t c = static_cast<size_t>(cand);
        if (i - c > kWindow) break;
        if (raw[c + static_cast<size_t>(best_len)] == raw[i + static_cast<size_t>(best_len)]) {
          int len = 0;
          while (len < max_len && raw[c + static_cast<size_t>(len)] == raw[i + static_cast<size_t>(len)]) ++len;
          if (len > best_len) {
            best_len = len;
            best_dist = static_cast<int>(i - c);
            if (len >= max_len) break;
          }
        }
        cand = prev[c];
      }
    }

    if (best_len >= kMinMatch) {
      const LengthCode lc = length_code(best_len);
      put_fixed_lenlen(bw, lc.symbol);
      bw.bits(static_cast<uint32_t>(lc.extra_value), lc.extra_bits);
      const LengthCode dc = distance_code(best_dist);
      bw.code(static_cast<uint32_t>(dc.symbol), 5);
      bw.bits(static_cast<uint32_t>(dc.extra_value), dc.extra_bits);
      // Insert hash entries across the match so later matches can see it.
      const size_t end = i + static_cast<size_t>(best_len);
      while (i < end) {
        if (i + kMinMatch <= n) {
          const uint32_t h = hash3(i);
          prev[i] = head[h];
          head[h] = static_cast<int32_t>(i);
        }
        ++i;
      }
    } else {
      put_fixed_literal(bw, raw[i]);
      if (i + kMinMatch <= n) {
        const uint32_t h = hash3(i);
        prev[i] = head[h];
        head[h] = static_cast<int32_t>(i);
      }
      ++i;
    }
  }
  put_fixed_lenlen(bw, 256);  // end of block
  bw.align();
  return out;
}

std::vector<uint8_t> encode_png(const Image& img) {
  if (img.width <= 0 || img.height <= 0 ||
      img.pixels.size() != static_cast<size_t>(img.width) * img.height * 3)
    throw std::invalid_argument("encode_png: bad image buffer");

  // Filter 0 (None) per scanline.
  std::vector<uint8_t> raw;
  raw.reserve(static_cast<size_t>(img.height) * (1 + static_cast<size_t>(img.width) * 3));
  for (int y = 0; y < img.height; ++y) {
    raw.push_back(0);
    const uint8_t* row = img.pixels.data() + static_cast<size_t>(y) * img.width * 3;
    raw.insert(raw.end(), row, row + static_cast<size_t>(img.width) * 3);
  }

  std::vector<uint8_t> idat;
  idat.push_back(0x78);
  idat.push_back(0x9C);
  std::vector<uint8_t> compressed = deflate_fixed(raw);
  idat.insert(idat.end(), compressed.begin(), compressed.end());
  const uint32_t checksum = adler32(raw.data(), raw.size());
  put_be32(idat, checksum);

  std::vector<uint8_t> ihdr;
  put_be32(ihdr, static_cast<uint32_t>(img.width));
  put_be32(ihdr, static_cast<uint32_t>(img.height));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(2);  // color type: truecolor RGB
  ihdr.push_back(0);  // compression
  ihdr.push_back(0);  // filter
  ihdr.push_back(0);  // interlace

  std::vector<uint8_t> png{0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  put_chunk(png, "IHDR", ihdr);
  put_chunk(png, "IDAT", idat);
  put_chunk(png, "IEND", {});
  return png;
}

void write_file_atomic(const std::filesystem::path& path, const std::vector<uint8_t>& bytes) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_png(const std::filesystem::path& path, const Image& img) {
  write_file_atomic(path, encode_png(img));
}

}  // namespace ga
