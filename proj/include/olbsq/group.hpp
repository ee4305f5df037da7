// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Pairing-group elements as the protocol sees them.
//
// The construction is written for a symmetric pairing; this library
// instantiates it on an asymmetric (type-3) curve by fixing, for every
// element, the pairing slot(s) it is used in.  G1Element is a left-slot
// element, G2Element a right-slot element, and DualElement carries both
// slots under one shared exponent for the few public bases that genuinely
// appear on both sides of a pairing.  The slot assignment is total: every
// pairing in the protocol is pair(left, right), and every element that
// crosses the wire travels in exactly one slot.
//
// Exponentiations, pairings and challenge hashes are counted against a
// thread-local tally while a trace is open (see instrument below).  A
// dual-slot exponentiation counts once logically and twice physically.
// Random sampling helpers use uncounted arithmetic: they are parameter
// generation, not protocol formula evaluations.

#pragma once

#include "olbsq/bn/pairing.hpp"
#include "olbsq/scalar.hpp"
#include "olbsq/serialize.hpp"

namespace olbsq {

struct OpCounts {
  uint64_t exp_source = 0;           // logical source-group exponentiations
  uint64_t exp_source_physical = 0;  // includes both slots of dual exps
  uint64_t exp_target = 0;
  uint64_t pairings = 0;
  uint64_t hashes = 0;
  uint64_t bytes_sent_user = 0;      // filled in by transport harnesses
  uint64_t bytes_sent_provider = 0;
};

namespace instrument {

// Counters are per-thread and confined to one open trace at a time.
void begin_trace();          // throws kUsage when a trace is already open
OpCounts end_trace();        // throws kUsage when none is open
bool trace_active();

void on_exp_source(uint64_t logical, uint64_t physical);
void on_exp_target();
void on_pairing();
void on_hash();

}  // namespace instrument

class G1Element {
 public:
  G1Element() = default;  // identity

  static G1Element identity() { return G1Element(); }
  // fixed curve generator for the left slot (used for sampling bases)
  static G1Element base() { return G1Element(bn::G1::generator()); }

  // group operation (the protocol's groups are written multiplicatively)
  G1Element operator*(const G1Element& o) const {
    return G1Element(p_.add_vartime(o.p_));
  }
  G1Element inverse() const { return G1Element(p_.negate()); }

  // counted exponentiation, fixed-schedule (safe for secret exponents)
  G1Element pow(const Scalar& e) const {
    instrument::on_exp_source(1, 1);
    return pow_uncounted(e);
  }
  // counted exponentiation by a small public integer
  G1Element pow_public(uint64_t e) const {
    instrument::on_exp_source(1, 1);
    uint64_t limbs[1] = {e};
    return G1Element(p_.mul_vartime(std::span<const uint64_t>(limbs, 1)));
  }
  // uncounted: sampling and encoding-validation paths
  G1Element pow_uncounted(const Scalar& e) const {
    return G1Element(p_.mul_ct(e.raw().to_canonical()));
  }

  bool is_identity() const { return p_.is_identity(); }
  bool operator==(const G1Element& o) const { return p_ == o.p_; }
  bool operator!=(const G1Element& o) const { return p_ != o.p_; }

  void serialize(ByteWriter& w) const;
  static G1Element deserialize(ByteReader& r);

  const bn::G1& raw() const { return p_; }
  static G1Element from_raw(const bn::G1& p) { return G1Element(p); }

 private:
  explicit G1Element(const bn::G1& p) : p_(p) {}
  bn::G1 p_;
};

class G2Element {
 public:
  G2Element() = default;

  static G2Element identity() { return G2Element(); }
  static G2Element base() { return G2Element(bn::G2::generator()); }

  G2Element operator*(const G2Element& o) const {
    return G2Element(p_.add_vartime(o.p_));
  }
  G2Element inverse() const { return G2Element(p_.negate()); }

  G2Element pow(const Scalar& e) const {
    instrument::on_exp_source(1, 1);
    return pow_uncounted(e);
  }
  G2Element pow_public(uint64_t e) const {
    instrument::on_exp_source(1, 1);
    uint64_t limbs[1] = {e};
    return G2Element(p_.mul_vartime(std::span<const uint64_t>(limbs, 1)));
  }
  G2Element pow_uncounted(const Scalar& e) const {
    return G2Element(p_.mul_ct(e.raw().to_canonical()));
  }

  bool is_identity() const { return p_.is_identity(); }
  bool operator==(const G2Element& o) const { return p_ == o.p_; }
  bool operator!=(const G2Element& o) const { return p_ != o.p_; }

  void serialize(ByteWriter& w) const;
  static G2Element deserialize(ByteReader& r);

  const bn::G2& raw() const { return p_; }
  static G2Element from_raw(const bn::G2& p) { return G2Element(p); }

 private:
  explicit G2Element(const bn::G2& p) : p_(p) {}
  bn::G2 p_;
};

class TargetElement {
 public:
  TargetElement() : v_(bn::Fp12::one()) {}

  static TargetElement one() { return TargetElement(); }
  // uniform element of the target group (uncounted sampling path)
  static TargetElement sample(RandomSource& rng);

  TargetElement operator*(const TargetElement& o) const {
    return TargetElement(v_ * o.v_);
  }
  TargetElement operator/(const TargetElement& o) const {
    return TargetElement(v_ * o.v_.inverse());
  }
  TargetElement inverse() const { return TargetElement(v_.inverse()); }

  TargetElement pow(const Scalar& e) const {
    instrument::on_exp_target();
    return pow_uncounted(e);
  }
  TargetElement pow_uncounted(const Scalar& e) const {
    return TargetElement(v_.pow_ct(e.raw().to_canonical()));
  }

  bool is_one() const { return v_.is_one(); }
  bool operator==(const TargetElement& o) const { return v_ == o.v_; }
  bool operator!=(const TargetElement& o) const { return v_ != o.v_; }

  void serialize(ByteWriter& w) const;
  static TargetElement deserialize(ByteReader& r);

  const bn::Fp12& raw() const { return v_; }
  static TargetElement from_raw(const bn::Fp12& v) { return TargetElement(v); }

 private:
  explicit TargetElement(const bn::Fp12& v) : v_(v) {}
  bn::Fp12 v_;
};

// counted bilinear map: left slot x right slot -> target
TargetElement pair(const G1Element& a, const G2Element& b);

// tagged scalar / 32-byte-nonce encodings used in structures and transcripts
void serialize_scalar(ByteWriter& w, const Scalar& s);
Scalar deserialize_scalar(ByteReader& r);
void serialize_msg32(ByteWriter& w, std::span<const uint8_t, 32> m);
std::array<uint8_t, 32> deserialize_msg32(ByteReader& r);

// a base carried in both slots under one exponent
class DualElement {
 public:
  DualElement() = default;

  const G1Element& left() const { return l_; }
  const G2Element& right() const { return r_; }

  // one logical exponentiation applied to both slots
  DualElement pow(const Scalar& e) const {
    instrument::on_exp_source(1, 2);
    return pow_uncounted(e);
  }
  DualElement pow_uncounted(const Scalar& e) const {
    return DualElement(l_.pow_uncounted(e), r_.pow_uncounted(e));
  }

  DualElement operator*(const DualElement& o) const {
    return DualElement(l_ * o.l_, r_ * o.r_);
  }

  // fresh random base (both slots, shared discrete log); uncounted sampling
  static DualElement sample(RandomSource& rng) {
    Scalar e = Scalar::random(rng);
    return DualElement(G1Element::base().pow_uncounted(e),
                       G2Element::base().pow_uncounted(e));
  }
  static DualElement from_parts(const G1Element& l, const G2Element& r) {
    return DualElement(l, r);
  }

  // both slots share one discrete log (pairing cross-check; uncounted)
  bool consistent() const;

  bool operator==(const DualElement& o) const {
    return l_ == o.l_ && r_ == o.r_;
  }

  void serialize(ByteWriter& w) const {
    l_.serialize(w);
    r_.serialize(w);
  }
  static DualElement deserialize(ByteReader& r) {
    G1Element l = G1Element::deserialize(r);
    G2Element rt = G2Element::deserialize(r);
    return DualElement(l, rt);
  }

 private:
  DualElement(const G1Element& l, const G2Element& r) : l_(l), r_(r) {}
  G1Element l_;
  G2Element r_;
};

}  // namespace olbsq
