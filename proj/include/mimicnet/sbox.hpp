#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mimicnet/error.hpp"
#include "mimicnet/truth_table.hpp"

namespace mimicnet {

namespace sbox_data {

inline constexpr std::array<std::uint8_t, 16> kPresent = {
    0x0C, 0x05, 0x06, 0x0B, 0x09, 0x00, 0x0A, 0x0D, 0x03, 0x0E, 0x0F, 0x08, 0x04, 0x07, 0x01, 0x02,
};

// DES tables in published row-major layout: index = 16 * row + column.
inline constexpr std::array<std::uint8_t, 64> kDesS1 = {
    0x0E, 0x04, 0x0D, 0x01, 0x02, 0x0F, 0x0B, 0x08, 0x03, 0x0A, 0x06, 0x0C, 0x05, 0x09, 0x00, 0x07,
    0x00, 0x0F, 0x07, 0x04, 0x0E, 0x02, 0x0D, 0x01, 0x0A, 0x06, 0x0C, 0x0B, 0x09, 0x05, 0x03, 0x08,
    0x04, 0x01, 0x0E, 0x08, 0x0D, 0x06, 0x02, 0x0B, 0x0F, 0x0C, 0x09, 0x07, 0x03, 0x0A, 0x05, 0x00,
    0x0F, 0x0C, 0x08, 0x02, 0x04, 0x09, 0x01, 0x07, 0x05, 0x0B, 0x03, 0x0E, 0x0A, 0x00, 0x06, 0x0D,
};

inline constexpr std::array<std::uint8_t, 64> kDesS2 = {
    0x0F, 0x01, 0x08, 0x0E, 0x06, 0x0B, 0x03, 0x04, 0x09, 0x07, 0x02, 0x0D, 0x0C, 0x00, 0x05, 0x0A,
    0x03, 0x0D, 0x04, 0x07, 0x0F, 0x02, 0x08, 0x0E, 0x0C, 0x00, 0x01, 0x0A, 0x06, 0x09, 0x0B, 0x05,
    0x00, 0x0E, 0x07, 0x0B, 0x0A, 0x04, 0x0D, 0x01, 0x05, 0x08, 0x0C, 0x06, 0x09, 0x03, 0x02, 0x0F,
    0x0D, 0x08, 0x0A, 0x01, 0x03, 0x0F, 0x04, 0x02, 0x0B, 0x06, 0x07, 0x0C, 0x00, 0x05, 0x0E, 0x09,
};

inline constexpr std::array<std::uint8_t, 64> kDesS3 = {
    0x0A, 0x00, 0x09, 0x0E, 0x06, 0x03, 0x0F, 0x05, 0x01, 0x0D, 0x0C, 0x07, 0x0B, 0x04, 0x02, 0x08,
    0x0D, 0x07, 0x00, 0x09, 0x03, 0x04, 0x06, 0x0A, 0x02, 0x08, 0x05, 0x0E, 0x0C, 0x0B, 0x0F, 0x01,
    0x0D, 0x06, 0x04, 0x09, 0x08, 0x0F, 0x03, 0x00, 0x0B, 0x01, 0x02, 0x0C, 0x05, 0x0A, 0x0E, 0x07,
    0x01, 0x0A, 0x0D, 0x00, 0x06, 0x09, 0x08, 0x07, 0x04, 0x0F, 0x0E, 0x03, 0x0B, 0x05, 0x02, 0x0C,
};

inline constexpr std::array<std::uint8_t, 64> kDesS4 = {
    0x07, 0x0D, 0x0E, 0x03, 0x00, 0x06, 0x09, 0x0A, 0x01, 0x02, 0x08, 0x05, 0x0B, 0x0C, 0x04, 0x0F,
    0x0D, 0x08, 0x0B, 0x05, 0x06, 0x0F, 0x00, 0x03, 0x04, 0x07, 0x02, 0x0C, 0x01, 0x0A, 0x0E, 0x09,
    0x0A, 0x06, 0x09, 0x00, 0x0C, 0x0B, 0x07, 0x0D, 0x0F, 0x01, 0x03, 0x0E, 0x05, 0x02, 0x08, 0x04,
    0x03, 0x0F, 0x00, 0x06, 0x0A, 0x01, 0x0D, 0x08, 0x09, 0x04, 0x05, 0x0B, 0x0C, 0x07, 0x02, 0x0E,
};

inline constexpr std::array<std::uint8_t, 64> kDesS5 = {
    0x02, 0x0C, 0x04, 0x01, 0x07, 0x0A, 0x0B, 0x06, 0x08, 0x05, 0x03, 0x0F, 0x0D, 0x00, 0x0E, 0x09,
    0x0E, 0x0B, 0x02, 0x0C, 0x04, 0x07, 0x0D, 0x01, 0x05, 0x00, 0x0F, 0x0A, 0x03, 0x09, 0x08, 0x06,
    0x04, 0x02, 0x01, 0x0B, 0x0A, 0x0D, 0x07, 0x08, 0x0F, 0x09, 0x0C, 0x05, 0x06, 0x03, 0x00, 0x0E,
    0x0B, 0x08, 0x0C, 0x07, 0x01, 0x0E, 0x02, 0x0D, 0x06, 0x0F, 0x00, 0x09, 0x0A, 0x04, 0x05, 0x03,
};

inline constexpr std::array<std::uint8_t, 64> kDesS6 = {
    0x0C, 0x01, 0x0A, 0x0F, 0x09, 0x02, 0x06, 0x08, 0x00, 0x0D, 0x03, 0x04, 0x0E, 0x07, 0x05, 0x0B,
    0x0A, 0x0F, 0x04, 0x02, 0x07, 0x0C, 0x09, 0x05, 0x06, 0x01, 0x0D, 0x0E, 0x00, 0x0B, 0x03, 0x08,
    0x09, 0x0E, 0x0F, 0x05, 0x02, 0x08, 0x0C, 0x03, 0x07, 0x00, 0x04, 0x0A, 0x01, 0x0D, 0x0B, 0x06,
    0x04, 0x03, 0x02, 0x0C, 0x09, 0x05, 0x0F, 0x0A, 0x0B, 0x0E, 0x01, 0x07, 0x06, 0x00, 0x08, 0x0D,
};

inline constexpr std::array<std::uint8_t, 64> kDesS7 = {
    0x04, 0x0B, 0x02, 0x0E, 0x0F, 0x00, 0x08, 0x0D, 0x03, 0x0C, 0x09, 0x07, 0x05, 0x0A, 0x06, 0x01,
    0x0D, 0x00, 0x0B, 0x07, 0x04, 0x09, 0x01, 0x0A, 0x0E, 0x03, 0x05, 0x0C, 0x02, 0x0F, 0x08, 0x06,
    0x01, 0x04, 0x0B, 0x0D, 0x0C, 0x03, 0x07, 0x0E, 0x0A, 0x0F, 0x06, 0x08, 0x00, 0x05, 0x09, 0x02,
    0x06, 0x0B, 0x0D, 0x08, 0x01, 0x04, 0x0A, 0x07, 0x09, 0x05, 0x00, 0x0F, 0x0E, 0x02, 0x03, 0x0C,
};

inline constexpr std::array<std::uint8_t, 64> kDesS8 = {
    0x0D, 0x02, 0x08, 0x04, 0x06, 0x0F, 0x0B, 0x01, 0x0A, 0x09, 0x03, 0x0E, 0x05, 0x00, 0x0C, 0x07,
    0x01, 0x0F, 0x0D, 0x08, 0x0A, 0x03, 0x07, 0x04, 0x0C, 0x05, 0x06, 0x0B, 0x00, 0x0E, 0x09, 0x02,
    0x07, 0x0B, 0x04, 0x01, 0x09, 0x0C, 0x0E, 0x02, 0x00, 0x06, 0x0A, 0x0D, 0x0F, 0x03, 0x05, 0x08,
    0x02, 0x01, 0x0E, 0x07, 0x04, 0x0A, 0x08, 0x0D, 0x0F, 0x0C, 0x09, 0x00, 0x03, 0x05, 0x06, 0x0B,
};

inline constexpr std::array<std::uint8_t, 256> kAes = {
    0x63, 0x7C, 0x77, 0x7B, 0xF2, 0x6B, 0x6F, 0xC5, 0x30, 0x01, 0x67, 0x2B, 0xFE, 0xD7, 0xAB, 0x76,
    0xCA, 0x82, 0xC9, 0x7D, 0xFA, 0x59, 0x47, 0xF0, 0xAD, 0xD4, 0xA2, 0xAF, 0x9C, 0xA4, 0x72, 0xC0,
    0xB7, 0xFD, 0x93, 0x26, 0x36, 0x3F, 0xF7, 0xCC, 0x34, 0xA5, 0xE5, 0xF1, 0x71, 0xD8, 0x31, 0x15,
    0x04, 0xC7, 0x23, 0xC3, 0x18, 0x96, 0x05, 0x9A, 0x07, 0x12, 0x80, 0xE2, 0xEB, 0x27, 0xB2, 0x75,
    0x09, 0x83, 0x2C, 0x1A, 0x1B, 0x6E, 0x5A, 0xA0, 0x52, 0x3B, 0xD6, 0xB3, 0x29, 0xE3, 0x2F, 0x84,
    0x53, 0xD1, 0x00, 0xED, 0x20, 0xFC, 0xB1, 0x5B, 0x6A, 0xCB, 0xBE, 0x39, 0x4A, 0x4C, 0x58, 0xCF,
    0xD0, 0xEF, 0xAA, 0xFB, 0x43, 0x4D, 0x33, 0x85, 0x45, 0xF9, 0x02, 0x7F, 0x50, 0x3C, 0x9F, 0xA8,
    0x51, 0xA3, 0x40, 0x8F, 0x92, 0x9D, 0x38, 0xF5, 0xBC, 0xB6, 0xDA, 0x21, 0x10, 0xFF, 0xF3, 0xD2,
    0xCD, 0x0C, 0x13, 0xEC, 0x5F, 0x97, 0x44, 0x17, 0xC4, 0xA7, 0x7E, 0x3D, 0x64, 0x5D, 0x19, 0x73,
    0x60, 0x81, 0x4F, 0xDC, 0x22, 0x2A, 0x90, 0x88, 0x46, 0xEE, 0xB8, 0x14, 0xDE, 0x5E, 0x0B, 0xDB,
    0xE0, 0x32, 0x3A, 0x0A, 0x49, 0x06, 0x24, 0x5C, 0xC2, 0xD3, 0xAC, 0x62, 0x91, 0x95, 0xE4, 0x79,
    0xE7, 0xC8, 0x37, 0x6D, 0x8D, 0xD5, 0x4E, 0xA9, 0x6C, 0x56, 0xF4, 0xEA, 0x65, 0x7A, 0xAE, 0x08,
    0xBA, 0x78, 0x25, 0x2E, 0x1C, 0xA6, 0xB4, 0xC6, 0xE8, 0xDD, 0x74, 0x1F, 0x4B, 0xBD, 0x8B, 0x8A,
    0x70, 0x3E, 0xB5, 0x66, 0x48, 0x03, 0xF6, 0x0E, 0x61, 0x35, 0x57, 0xB9, 0x86, 0xC1, 0x1D, 0x9E,
    0xE1, 0xF8, 0x98, 0x11, 0x69, 0xD9, 0x8E, 0x94, 0x9B, 0x1E, 0x87, 0xE9, 0xCE, 0x55, 0x28, 0xDF,
    0x8C, 0xA1, 0x89, 0x0D, 0xBF, 0xE6, 0x42, 0x68, 0x41, 0x99, 0x2D, 0x0F, 0xB0, 0x54, 0xBB, 0x16,
};


// DES S-boxes take a 6-bit input b0..b5 (b0 most significant): (b0 b5)
// selects the row and (b1 b2 b3 b4) the column.
constexpr std::uint8_t des_lookup(const std::array<std::uint8_t, 64>& s, unsigned x) {
  const unsigned row = ((x >> 5) & 1U) * 2 + (x & 1U);
  const unsigned col = (x >> 1) & 0xFU;
  return s[16 * row + col];
}

constexpr std::array<std::uint8_t, 64> des_by_input(const std::array<std::uint8_t, 64>& s) {
  std::array<std::uint8_t, 64> out{};
  for (unsigned x = 0; x < 64; ++x) out[x] = des_lookup(s, x);
  return out;
}

// FNV-1a over the table in input order.
template <std::size_t N>
constexpr std::uint64_t checksum(const std::array<std::uint8_t, N>& t) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto v : t) {
    h ^= v;
    h *= 0x100000001b3ULL;
  }
  return h;
}

static_assert(checksum(kPresent) == 0xa097cbf35be485bdULL, "PRESENT table corrupted");
static_assert(checksum(des_by_input(kDesS1)) == 0xced7475889011d25ULL, "DES_S1 table corrupted");
static_assert(checksum(des_by_input(kDesS2)) == 0x16e1dcc5bedf8901ULL, "DES_S2 table corrupted");
static_assert(checksum(des_by_input(kDesS3)) == 0x063fc8fbe1199d49ULL, "DES_S3 table corrupted");
static_assert(checksum(des_by_input(kDesS4)) == 0x190fef5efdaf09a5ULL, "DES_S4 table corrupted");
static_assert(checksum(des_by_input(kDesS5)) == 0x76ac970fc705e265ULL, "DES_S5 table corrupted");
static_assert(checksum(des_by_input(kDesS6)) == 0x75febffa554ee7fdULL, "DES_S6 table corrupted");
static_assert(checksum(des_by_input(kDesS7)) == 0x032f1dd3f70f3929ULL, "DES_S7 table corrupted");
static_assert(checksum(des_by_input(kDesS8)) == 0xb126161b18e332e9ULL, "DES_S8 table corrupted");
static_assert(checksum(kAes) == 0xe6e1048ef0bc324dULL, "AES table corrupted");

}  // namespace sbox_data

inline const std::vector<std::string>& sbox_names() {
  static const std::vector<std::string> names = {"PRESENT", "DES_S1", "DES_S2", "DES_S3", "DES_S4",
                                                 "DES_S5",  "DES_S6", "DES_S7", "DES_S8", "AES"};
  return names;
}

/// Published substitution tables. Names are case-insensitive.
inline TruthTable sbox_table(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  auto to_rows = [](const auto& arr) { return std::vector<std::uint32_t>(arr.begin(), arr.end()); };
  if (up == "PRESENT") return TruthTable(4, 4, to_rows(sbox_data::kPresent));
  if (up == "AES") return TruthTable(8, 8, to_rows(sbox_data::kAes));
  static const std::array<const std::array<std::uint8_t, 64>*, 8> des = {
      &sbox_data::kDesS1, &sbox_data::kDesS2, &sbox_data::kDesS3, &sbox_data::kDesS4,
      &sbox_data::kDesS5, &sbox_data::kDesS6, &sbox_data::kDesS7, &sbox_data::kDesS8};
  if (up.size() == 6 && up.rfind("DES_S", 0) == 0 && up[5] >= '1' && up[5] <= '8') {
    return TruthTable(6, 4, to_rows(sbox_data::des_by_input(*des[static_cast<std::size_t>(up[5] - '1')])));
  }
  throw UnknownSBox("unknown S-box '" + std::string(name) + "'");
}

}  // namespace mimicnet
