// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Byte-exact serialization primitives.  Multi-byte integers are big-endian.
// Every group element encoding starts with a one-byte type tag; the same
// encodings are used on the wire, in files and in proof transcripts.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "olbsq/errors.hpp"

namespace olbsq {

// element / field type tags
inline constexpr uint8_t kTagScalar = 0x04;
inline constexpr uint8_t kTagG1 = 0x11;
inline constexpr uint8_t kTagG2 = 0x12;
inline constexpr uint8_t kTagGt = 0x13;
inline constexpr uint8_t kTagMsg32 = 0x20;

// encoded sizes including the tag byte
inline constexpr size_t kScalarWire = 1 + 32;
inline constexpr size_t kG1Wire = 1 + 64;
inline constexpr size_t kG2Wire = 1 + 128;
inline constexpr size_t kGtWire = 1 + 384;
inline constexpr size_t kMsg32Wire = 1 + 32;

class ByteWriter {
 public:
  void u8(uint8_t v) { buf_.push_back(v); }
  void u16(uint16_t v) {
    buf_.push_back(static_cast<uint8_t>(v >> 8));
    buf_.push_back(static_cast<uint8_t>(v));
  }
  void u32(uint32_t v) {
    for (int i = 3; i >= 0; --i)
      buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  void bytes(std::span<const uint8_t> b) {
    buf_.insert(buf_.end(), b.begin(), b.end());
  }
  const std::vector<uint8_t>& data() const { return buf_; }
  std::vector<uint8_t> take() { return std::move(buf_); }
  size_t size() const { return buf_.size(); }

 private:
  std::vector<uint8_t> buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> in) : in_(in) {}

  uint8_t u8() {
    need(1);
    return in_[pos_++];
  }
  uint16_t u16() {
    need(2);
    uint16_t v = static_cast<uint16_t>((in_[pos_] << 8) | in_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | in_[pos_ + static_cast<size_t>(i)];
    pos_ += 4;
    return v;
  }
  std::span<const uint8_t> bytes(size_t n) {
    need(n);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  size_t remaining() const { return in_.size() - pos_; }
  // Rejects an element count that could not possibly fit in the unread
  // input (each element occupies at least min_bytes on the wire), so a
  // corrupt count fails parsing before any allocation is sized by it.
  void need_items(uint64_t count, size_t min_bytes) const {
    if (count > remaining() / min_bytes)
      fail(Errc::kFormat, "element count exceeds the available bytes");
  }
  void expect_end() const {
    if (pos_ != in_.size())
      fail(Errc::kFormat, "trailing bytes after structure");
  }

 private:
  void need(size_t n) const {
    if (in_.size() - pos_ < n) fail(Errc::kFormat, "truncated structure");
  }
  std::span<const uint8_t> in_;
  size_t pos_ = 0;
};

}  // namespace olbsq
