// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0

#include "olbsq/group.hpp"

#include <array>

namespace olbsq {

namespace instrument {

namespace {

struct TraceState {
  bool active = false;
  OpCounts counts;
};

thread_local TraceState t_state;

}  // namespace

void begin_trace() {
  if (t_state.active) fail(Errc::kUsage, "operation trace already open");
  t_state.active = true;
  t_state.counts = OpCounts{};
}

OpCounts end_trace() {
  if (!t_state.active) fail(Errc::kUsage, "no operation trace open");
  t_state.active = false;
  return t_state.counts;
}

bool trace_active() { return t_state.active; }

void on_exp_source(uint64_t logical, uint64_t physical) {
  if (!t_state.active) return;
  t_state.counts.exp_source += logical;
  t_state.counts.exp_source_physical += physical;
}

void on_exp_target() {
  if (t_state.active) ++t_state.counts.exp_target;
}

void on_pairing() {
  if (t_state.active) ++t_state.counts.pairings;
}

void on_hash() {
  if (t_state.active) ++t_state.counts.hashes;
}

}  // namespace instrument

namespace {

bool all_zero(std::span<const uint8_t> b) {
  uint8_t acc = 0;
  for (uint8_t c : b) acc |= c;
  return acc == 0;
}

std::span<const uint8_t, 32> word(std::span<const uint8_t> b, size_t idx) {
  return std::span<const uint8_t, 32>(b.data() + 32 * idx, 32);
}

}  // namespace

void G1Element::serialize(ByteWriter& w) const {
  w.u8(kTagG1);
  std::array<uint8_t, 64> buf{};  // identity stays all-zero; (0,0) is off-curve
  bn::G1Affine a = p_.to_affine();
  if (!a.infinity) {
    a.x.to_bytes(std::span<uint8_t, 32>(buf.data(), 32));
    a.y.to_bytes(std::span<uint8_t, 32>(buf.data() + 32, 32));
  }
  w.bytes(buf);
}

G1Element G1Element::deserialize(ByteReader& r) {
  if (r.u8() != kTagG1) fail(Errc::kFormat, "expected left-group element tag");
  auto b = r.bytes(64);
  if (all_zero(b)) return identity();
  bn::Fp x, y;
  if (!bn::Fp::from_bytes(word(b, 0), x) || !bn::Fp::from_bytes(word(b, 1), y))
    fail(Errc::kCanonicity, "left-group coordinate not canonical");
  bn::G1Affine a{x, y, false};
  if (!bn::G1::affine_on_curve(a))
    fail(Errc::kCanonicity, "left-group point not on curve");
  // curve has cofactor one on this side: on-curve implies prime-order subgroup
  return G1Element(bn::G1::from_affine(a));
}

void G2Element::serialize(ByteWriter& w) const {
  w.u8(kTagG2);
  std::array<uint8_t, 128> buf{};
  bn::G2Affine a = p_.to_affine();
  if (!a.infinity) {
    a.x.re.to_bytes(std::span<uint8_t, 32>(buf.data(), 32));
    a.x.im.to_bytes(std::span<uint8_t, 32>(buf.data() + 32, 32));
    a.y.re.to_bytes(std::span<uint8_t, 32>(buf.data() + 64, 32));
    a.y.im.to_bytes(std::span<uint8_t, 32>(buf.data() + 96, 32));
  }
  w.bytes(buf);
}

G2Element G2Element::deserialize(ByteReader& r) {
  if (r.u8() != kTagG2) fail(Errc::kFormat, "expected right-group element tag");
  auto b = r.bytes(128);
  if (all_zero(b)) return identity();
  bn::Fp xr, xi, yr, yi;
  if (!bn::Fp::from_bytes(word(b, 0), xr) ||
      !bn::Fp::from_bytes(word(b, 1), xi) ||
      !bn::Fp::from_bytes(word(b, 2), yr) ||
      !bn::Fp::from_bytes(word(b, 3), yi))
    fail(Errc::kCanonicity, "right-group coordinate not canonical");
  bn::G2Affine a{bn::Fp2(xr, xi), bn::Fp2(yr, yi), false};
  if (!bn::G2::affine_on_curve(a))
    fail(Errc::kCanonicity, "right-group point not on curve");
  bn::G2 p = bn::G2::from_affine(a);
  if (!p.in_subgroup())
    fail(Errc::kCanonicity, "right-group point outside prime-order subgroup");
  return G2Element(p);
}

void TargetElement::serialize(ByteWriter& w) const {
  w.u8(kTagGt);
  std::array<uint8_t, 384> buf{};
  const bn::Fp* c[12] = {
      &v_.c0.c0.re, &v_.c0.c0.im, &v_.c0.c1.re, &v_.c0.c1.im,
      &v_.c0.c2.re, &v_.c0.c2.im, &v_.c1.c0.re, &v_.c1.c0.im,
      &v_.c1.c1.re, &v_.c1.c1.im, &v_.c1.c2.re, &v_.c1.c2.im,
  };
  for (size_t i = 0; i < 12; ++i)
    c[i]->to_bytes(std::span<uint8_t, 32>(buf.data() + 32 * i, 32));
  w.bytes(buf);
}

TargetElement TargetElement::deserialize(ByteReader& r) {
  if (r.u8() != kTagGt) fail(Errc::kFormat, "expected target-group element tag");
  auto b = r.bytes(384);
  bn::Fp c[12];
  for (size_t i = 0; i < 12; ++i)
    if (!bn::Fp::from_bytes(word(b, i), c[i]))
      fail(Errc::kCanonicity, "target-group coefficient not canonical");
  bn::Fp12 v(bn::Fp6(bn::Fp2(c[0], c[1]), bn::Fp2(c[2], c[3]),
                     bn::Fp2(c[4], c[5])),
             bn::Fp6(bn::Fp2(c[6], c[7]), bn::Fp2(c[8], c[9]),
                     bn::Fp2(c[10], c[11])));
  if (!bn::in_gt(v))
    fail(Errc::kCanonicity, "value outside the pairing target group");
  return TargetElement(v);
}

TargetElement TargetElement::sample(RandomSource& rng) {
  // fixed target-group generator: the pairing of the source generators
  static const bn::Fp12 kGen = bn::pairing(bn::G1::generator().to_affine(),
                                           bn::G2::generator().to_affine());
  return TargetElement(kGen.pow_ct(Scalar::random(rng).raw().to_canonical()));
}

TargetElement pair(const G1Element& a, const G2Element& b) {
  instrument::on_pairing();
  return TargetElement::from_raw(
      bn::pairing(a.raw().to_affine(), b.raw().to_affine()));
}

bool DualElement::consistent() const {
  // both slots carry the same discrete log iff e(L, g2) == e(g1, R)
  return bn::pairing(l_.raw().to_affine(),
                     bn::G2::generator().to_affine()) ==
         bn::pairing(bn::G1::generator().to_affine(),
                     r_.raw().to_affine());
}

void serialize_scalar(ByteWriter& w, const Scalar& s) {
  w.u8(kTagScalar);
  w.bytes(s.to_bytes());
}

Scalar deserialize_scalar(ByteReader& r) {
  if (r.u8() != kTagScalar) fail(Errc::kFormat, "expected scalar tag");
  auto b = r.bytes(32);
  auto s = Scalar::from_bytes(std::span<const uint8_t, 32>(b.data(), 32));
  if (!s) fail(Errc::kCanonicity, "scalar not canonical");
  return *s;
}

void serialize_msg32(ByteWriter& w, std::span<const uint8_t, 32> m) {
  w.u8(kTagMsg32);
  w.bytes(m);
}

std::array<uint8_t, 32> deserialize_msg32(ByteReader& r) {
  if (r.u8() != kTagMsg32) fail(Errc::kFormat, "expected message tag");
  auto b = r.bytes(32);
  std::array<uint8_t, 32> out{};
  std::copy(b.begin(), b.end(), out.begin());
  return out;
}

}  // namespace olbsq
