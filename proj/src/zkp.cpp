// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0

#include "olbsq/zkp.hpp"

#include <string_view>

#include "olbsq/hash.hpp"
#include "olbsq/transfer.hpp"

namespace olbsq {

namespace {

constexpr std::string_view kDomainSP1 = "OLBSQ/v1/PiSP1";
constexpr std::string_view kDomainU = "OLBSQ/v1/PiU";
constexpr std::string_view kDomainSP2 = "OLBSQ/v1/PiSP2";
constexpr uint16_t kProofVersion = 1;

// hard parse-time bound on reply cells; sessions enforce tighter limits
constexpr uint64_t kMaxProofCells = uint64_t{1} << 24;

Scalar nonzero_scalar(RandomSource& rng) {
  for (;;) {
    Scalar s = Scalar::random(rng);
    if (!s.is_zero()) return s;
  }
}

// blinding points are sampled outside the instrumented counters — only
// protocol formula evaluations are costed
G2Element sample_blind_point(RandomSource& rng) {
  return G2Element::base().pow_uncounted(nonzero_scalar(rng));
}

void expect_proof_version(ByteReader& r) {
  if (r.u16() != kProofVersion)
    fail(Errc::kFormat, "unsupported proof version");
}

}  // namespace

// ---------------------------------------------------------------------------
// Setup honesty

void ProofSP1::serialize(ByteWriter& w) const {
  w.u16(kProofVersion);
  H_prime.serialize(w);
  serialize_scalar(w, c);
  h_hat.serialize(w);
  serialize_msg32(w, msg);
}

ProofSP1 ProofSP1::deserialize(ByteReader& r) {
  expect_proof_version(r);
  ProofSP1 p;
  p.H_prime = TargetElement::deserialize(r);
  p.c = deserialize_scalar(r);
  p.h_hat = G2Element::deserialize(r);
  p.msg = deserialize_msg32(r);
  return p;
}

ProofSP1 prove_sp1(const G2Element& h_frak, const PublicParams& pp,
                   RandomSource& rng) {
  ProofSP1 p;
  p.msg = rng.bytes32();
  G2Element h_prime = sample_blind_point(rng);
  p.H_prime = pair(pp.gk.left(), h_prime);
  Transcript tr;
  tr.append(pp.H).append(p.H_prime).append_msg(p.msg);
  p.c = hash_to_scalar(kDomainSP1, tr);
  p.h_hat = h_prime * h_frak.pow(-p.c);
  return p;
}

bool verify_sp1(const PublicParams& pp, const ProofSP1& proof) {
  Transcript tr;
  tr.append(pp.H).append(proof.H_prime).append_msg(proof.msg);
  Scalar c = hash_to_scalar(kDomainSP1, tr);
  if (c != proof.c) return false;
  return proof.H_prime ==
         pair(pp.gk.left(), proof.h_hat) * pp.H.pow(proof.c);
}

// ---------------------------------------------------------------------------
// Query construction and honesty proof

void QueryCommitments::serialize(ByteWriter& w) const {
  w.u32(l);
  w.u32(k);
  E1.serialize(w);
  E2.serialize(w);
  F1.serialize(w);
  F2.serialize(w);
  J1.serialize(w);
  J2.serialize(w);
  I1.serialize(w);
  I2.serialize(w);
  I3.serialize(w);
  I4.serialize(w);
}

QueryCommitments QueryCommitments::deserialize(ByteReader& r) {
  QueryCommitments q;
  q.l = r.u32();
  q.k = r.u32();
  if (q.l < 1 || q.k < 1)
    fail(Errc::kFormat, "rectangle dimensions must be positive");
  q.E1 = G1Element::deserialize(r);
  q.E2 = G1Element::deserialize(r);
  q.F1 = G1Element::deserialize(r);
  q.F2 = G2Element::deserialize(r);
  q.J1 = G1Element::deserialize(r);
  q.J2 = G2Element::deserialize(r);
  q.I1 = G2Element::deserialize(r);
  q.I2 = G2Element::deserialize(r);
  q.I3 = G2Element::deserialize(r);
  q.I4 = G2Element::deserialize(r);
  return q;
}

void ProofU::serialize(ByteWriter& w) const {
  w.u16(kProofVersion);
  E1p.serialize(w);
  E2p.serialize(w);
  for (const auto& t : Theta) t.serialize(w);
  for (const auto& s : c) serialize_scalar(w, s);
  for (const auto& s : z) serialize_scalar(w, s);
  serialize_msg32(w, msg);
}

ProofU ProofU::deserialize(ByteReader& r) {
  expect_proof_version(r);
  ProofU p;
  p.E1p = G1Element::deserialize(r);
  p.E2p = G1Element::deserialize(r);
  for (auto& t : p.Theta) t = TargetElement::deserialize(r);
  for (auto& s : p.c) s = deserialize_scalar(r);
  for (auto& s : p.z) s = deserialize_scalar(r);
  p.msg = deserialize_msg32(r);
  return p;
}

BuiltQuery build_query(const PublicParams& pp, uint32_t i, uint32_t j,
                       uint32_t l, uint32_t k, RandomSource& rng) {
  if (i < 1 || j < 1 || l < 1 || k < 1 ||
      static_cast<uint64_t>(i) + l > pp.m ||
      static_cast<uint64_t>(j) + k > pp.n)
    fail(Errc::kRange, "query rectangle outside the grid");

  BuiltQuery out;
  UserQueryState& st = out.state;
  st.i = i;
  st.j = j;
  st.l = l;
  st.k = k;
  for (auto& ri : st.r) ri = nonzero_scalar(rng);
  st.c_i1 = pp.c(i).c1;
  st.c_i2 = pp.c(i).c2;
  st.d_j1 = pp.d(j).d1;
  st.d_j2 = pp.d(j).d2;
  st.gamma1_i = pp.gamma1(i);
  st.gamma2_j = pp.gamma2(j);
  st.gamma1_il = pp.gamma1(i + l);
  st.gamma2_jk = pp.gamma2(j + k);

  const G1Element& gk = pp.gk.left();
  const G1Element& g1 = pp.g1.left();
  const G1Element& h1 = pp.h1.left();

  QueryCommitments& q = out.omega;
  q.l = l;
  q.k = k;
  q.E1 = gk.pow(-st.r[0]) * g1.pow_public(i);
  q.E2 = gk.pow(-st.r[1]) * h1.pow_public(j);
  q.F1 = gk.pow(st.r[2]) * st.c_i1;
  q.F2 = st.c_i2.right().pow(st.r[3]);
  q.J1 = gk.pow(st.r[4]) * st.d_j1;
  q.J2 = st.d_j2.right().pow(st.r[5]);
  q.I1 = st.gamma1_i.pow(st.r[6]);
  q.I2 = st.gamma2_j.pow(st.r[7]);
  q.I3 = st.gamma1_il.pow(st.r[8]);
  q.I4 = st.gamma2_jk.pow(st.r[9]);
  st.omega = q;

  // proof blinds: rb/sb mask the start coordinates, s1..s10 the exponents
  Scalar rb = nonzero_scalar(rng);
  Scalar sb = nonzero_scalar(rng);
  std::array<Scalar, 10> s;
  for (auto& si : s) si = nonzero_scalar(rng);

  ProofU& p = out.proof;
  p.msg = rng.bytes32();
  p.E1p = gk.pow(s[0]) * g1.pow(rb);
  p.E2p = gk.pow(s[1]) * h1.pow(sb);

  // relation commitments; pairings with a repeated base are evaluated once
  TargetElement P_gF2 = pair(gk, q.F2);
  TargetElement P_g2g2 = pair(pp.g2.left(), pp.g2.right());
  TargetElement P_gJ2 = pair(gk, q.J2);
  TargetElement P_h2h2 = pair(pp.h2.left(), pp.h2.right());
  TargetElement P_g1I1 = pair(g1, q.I1);
  TargetElement P_g1g1 = pair(g1, pp.g1.right());
  TargetElement P_h1I2 = pair(h1, q.I2);
  TargetElement P_h1h1 = pair(h1, pp.h1.right());
  TargetElement P_gI1 = pair(gk, q.I1);
  TargetElement P_gI2 = pair(gk, q.I2);
  TargetElement P_gI3 = pair(gk, q.I3);
  TargetElement P_gI4 = pair(gk, q.I4);
  TargetElement P_g1I3 = pair(g1, q.I3);
  TargetElement P_h1I4 = pair(h1, q.I4);

  p.Theta[0] = P_gF2.pow(s[2]);
  p.Theta[1] = P_g2g2.pow(s[3]);
  p.Theta[2] = P_gJ2.pow(s[4]);
  p.Theta[3] = P_h2h2.pow(s[5]);
  p.Theta[4] = P_g1I1.pow(rb);
  p.Theta[5] = P_g1g1.pow(s[6]);
  p.Theta[6] = P_h1I2.pow(sb);
  p.Theta[7] = P_h1h1.pow(s[7]);
  p.Theta[8] = P_g1g1.pow(s[8]);
  p.Theta[9] = P_h1h1.pow(s[9]);
  p.Theta[10] = P_gI1.pow(s[0]);
  p.Theta[11] = P_gI2.pow(s[1]);
  p.Theta[12] = P_gI3.pow(s[0]);
  p.Theta[13] = P_gI4.pow(s[1]);
  p.Theta[14] = P_g1I3.pow(rb);
  p.Theta[15] = P_h1I4.pow(sb);

  auto chal = [&p](const auto& x, const auto& y) {
    Transcript tr;
    tr.append(x).append(y).append_msg(p.msg);
    return hash_to_scalar(kDomainU, tr);
  };
  p.c[0] = chal(q.E1, p.E1p);
  p.c[1] = chal(q.E2, p.E2p);
  p.c[2] = chal(p.Theta[4], p.Theta[5]);
  p.c[3] = chal(p.Theta[6], p.Theta[7]);
  p.c[4] = chal(p.Theta[8], p.Theta[14]);
  p.c[5] = chal(p.Theta[9], p.Theta[15]);
  p.c[6] = chal(p.Theta[0], p.Theta[1]);
  p.c[7] = chal(p.Theta[2], p.Theta[3]);
  p.c[8] = chal(p.Theta[5], p.Theta[10]);
  p.c[9] = chal(p.Theta[7], p.Theta[11]);
  p.c[10] = chal(p.Theta[8], p.Theta[12]);
  p.c[11] = chal(p.Theta[9], p.Theta[13]);

  Scalar is = Scalar::from_u64(i);
  Scalar js = Scalar::from_u64(j);
  const std::array<Scalar, 10>& r = st.r;
  p.z[0] = s[0] + p.c[0] * r[0];
  p.z[1] = rb - p.c[0] * is;
  p.z[2] = s[1] + p.c[1] * r[1];
  p.z[3] = sb - p.c[1] * js;
  p.z[4] = s[6] + p.c[2] * r[6];
  p.z[5] = rb - p.c[2] * is;
  p.z[6] = sb - p.c[3] * js;
  p.z[7] = s[7] + p.c[3] * r[7];
  p.z[8] = s[8] + p.c[4] * r[8];
  p.z[9] = rb - p.c[4] * is;
  p.z[10] = s[9] + p.c[5] * r[9];
  p.z[11] = sb - p.c[5] * js;
  p.z[12] = s[2] - p.c[6] * r[2];
  p.z[13] = s[3] - p.c[6] * r[3];
  p.z[14] = s[4] - p.c[7] * r[4];
  p.z[15] = s[5] - p.c[7] * r[5];
  p.z[16] = s[6] - p.c[8] * r[6];
  p.z[17] = s[0] + p.c[8] * r[0];
  p.z[18] = s[7] - p.c[9] * r[7];
  p.z[19] = s[1] + p.c[9] * r[1];
  p.z[20] = s[8] - p.c[10] * r[8];
  p.z[21] = s[0] + p.c[10] * r[0];
  p.z[22] = s[9] - p.c[11] * r[9];
  p.z[23] = s[1] + p.c[11] * r[1];
  return out;
}

bool verify_query(const PublicParams& pp, const QueryCommitments& q,
                  const ProofU& p) {
  auto chal = [&p](const auto& x, const auto& y) {
    Transcript tr;
    tr.append(x).append(y).append_msg(p.msg);
    return hash_to_scalar(kDomainU, tr);
  };
  bool ok = true;
  ok &= p.c[0] == chal(q.E1, p.E1p);
  ok &= p.c[1] == chal(q.E2, p.E2p);
  ok &= p.c[2] == chal(p.Theta[4], p.Theta[5]);
  ok &= p.c[3] == chal(p.Theta[6], p.Theta[7]);
  ok &= p.c[4] == chal(p.Theta[8], p.Theta[14]);
  ok &= p.c[5] == chal(p.Theta[9], p.Theta[15]);
  ok &= p.c[6] == chal(p.Theta[0], p.Theta[1]);
  ok &= p.c[7] == chal(p.Theta[2], p.Theta[3]);
  ok &= p.c[8] == chal(p.Theta[5], p.Theta[10]);
  ok &= p.c[9] == chal(p.Theta[7], p.Theta[11]);
  ok &= p.c[10] == chal(p.Theta[8], p.Theta[12]);
  ok &= p.c[11] == chal(p.Theta[9], p.Theta[13]);

  const G1Element& gk = pp.gk.left();
  const G1Element& g1 = pp.g1.left();
  const G1Element& h1 = pp.h1.left();
  G1Element W1inv = pp.W1.inverse();
  G1Element W1pinv = pp.W1p.inverse();

  // the two start-coordinate relations, directly over source elements
  ok &= p.E1p == gk.pow(p.z[0]) * g1.pow(p.z[1]) * q.E1.pow(p.c[0]);
  ok &= p.E2p == gk.pow(p.z[2]) * h1.pow(p.z[3]) * q.E2.pow(p.c[1]);

  // every distinct pairing is evaluated exactly once
  TargetElement P_g1I1 = pair(g1, q.I1);
  TargetElement P_g1g1 = pair(g1, pp.g1.right());
  TargetElement P_W1invI1 = pair(W1inv, q.I1);
  TargetElement P_h1I2 = pair(h1, q.I2);
  TargetElement P_h1h1 = pair(h1, pp.h1.right());
  TargetElement P_W1pinvI2 = pair(W1pinv, q.I2);
  TargetElement P_g1I3 = pair(g1, q.I3);
  TargetElement P_W1invI3 = pair(W1inv, q.I3);
  TargetElement P_h1I4 = pair(h1, q.I4);
  TargetElement P_W1pinvI4 = pair(W1pinv, q.I4);
  TargetElement P_gF2 = pair(gk, q.F2);
  TargetElement P_g2g2 = pair(pp.g2.left(), pp.g2.right());
  TargetElement P_FW2F2 = pair(q.F1 * pp.W2.left(), q.F2);
  TargetElement P_gJ2 = pair(gk, q.J2);
  TargetElement P_h2h2 = pair(pp.h2.left(), pp.h2.right());
  TargetElement P_JW2pJ2 = pair(q.J1 * pp.W2p.left(), q.J2);
  TargetElement P_gI1 = pair(gk, q.I1);
  TargetElement P_EW1I1 = pair(q.E1 * pp.W1, q.I1);
  TargetElement P_gI2 = pair(gk, q.I2);
  TargetElement P_EW1pI2 = pair(q.E2 * pp.W1p, q.I2);
  TargetElement P_gI3 = pair(gk, q.I3);
  TargetElement P_ElW1I3 = pair(q.E1 * g1.pow_public(q.l) * pp.W1, q.I3);
  TargetElement P_gI4 = pair(gk, q.I4);
  TargetElement P_EkW1pI4 = pair(q.E2 * h1.pow_public(q.k) * pp.W1p, q.I4);

  // membership of the hidden start coordinates in the published index range
  ok &= p.Theta[4] * p.Theta[5] ==
        P_g1I1.pow(p.z[5]) * P_g1g1.pow(p.z[4]) * P_W1invI1.pow(p.c[2]);
  ok &= p.Theta[6] * p.Theta[7] ==
        P_h1I2.pow(p.z[6]) * P_h1h1.pow(p.z[7]) * P_W1pinvI2.pow(p.c[3]);
  // membership of the far corner (start + rectangle size)
  ok &= p.Theta[8] * p.Theta[14] ==
        P_g1g1.pow(p.z[8]) * P_g1I3.pow(p.z[9]) *
            (P_W1invI3 * P_g1I3.pow(-Scalar::from_u64(q.l))).pow(p.c[4]);
  ok &= p.Theta[9] * p.Theta[15] ==
        P_h1h1.pow(p.z[10]) * P_h1I4.pow(p.z[11]) *
            (P_W1pinvI4 * P_h1I4.pow(-Scalar::from_u64(q.k))).pow(p.c[5]);
  // well-formedness of the blinded key handles
  ok &= p.Theta[0] * p.Theta[1] ==
        P_gF2.pow(p.z[12]) * P_g2g2.pow(p.z[13]) * P_FW2F2.pow(p.c[6]);
  ok &= p.Theta[2] * p.Theta[3] ==
        P_gJ2.pow(p.z[14]) * P_h2h2.pow(p.z[15]) * P_JW2pJ2.pow(p.c[7]);
  // the membership witnesses speak about the same coordinates as E1, E2
  ok &= p.Theta[5] * p.Theta[10] ==
        P_g1g1.pow(p.z[16]) * P_gI1.pow(p.z[17]) * P_EW1I1.pow(p.c[8]);
  ok &= p.Theta[7] * p.Theta[11] ==
        P_h1h1.pow(p.z[18]) * P_gI2.pow(p.z[19]) * P_EW1pI2.pow(p.c[9]);
  ok &= p.Theta[8] * p.Theta[12] ==
        P_g1g1.pow(p.z[20]) * P_gI3.pow(p.z[21]) * P_ElW1I3.pow(p.c[10]);
  ok &= p.Theta[9] * p.Theta[13] ==
        P_h1h1.pow(p.z[22]) * P_gI4.pow(p.z[23]) * P_EkW1pI4.pow(p.c[11]);
  return ok;
}

// ---------------------------------------------------------------------------
// Key honesty

void ProofSP2Cell::serialize(ByteWriter& w) const {
  Upsilon1.serialize(w);
  Upsilon2.serialize(w);
  Upsilon3.serialize(w);
  serialize_scalar(w, c1);
  serialize_scalar(w, c2);
  serialize_scalar(w, z1);
  serialize_scalar(w, z2);
  h_cell.serialize(w);
  L_prime.serialize(w);
}

ProofSP2Cell ProofSP2Cell::deserialize(ByteReader& r) {
  ProofSP2Cell c;
  c.Upsilon1 = G1Element::deserialize(r);
  c.Upsilon2 = TargetElement::deserialize(r);
  c.Upsilon3 = TargetElement::deserialize(r);
  c.c1 = deserialize_scalar(r);
  c.c2 = deserialize_scalar(r);
  c.z1 = deserialize_scalar(r);
  c.z2 = deserialize_scalar(r);
  c.h_cell = G2Element::deserialize(r);
  c.L_prime = TargetElement::deserialize(r);
  return c;
}

const ProofSP2Cell& ProofSP2::cell(uint32_t mu, uint32_t nu) const {
  if (mu < 1 || mu > l || nu < 1 || nu > k)
    fail(Errc::kArgument, "cell offset out of range");
  return cells[static_cast<size_t>(mu - 1) * k + (nu - 1)];
}

void ProofSP2::serialize(ByteWriter& w) const {
  w.u16(kProofVersion);
  w.u32(l);
  w.u32(k);
  for (const auto& c : cells) c.serialize(w);
  H_tilde.serialize(w);
  serialize_msg32(w, msg);
}

ProofSP2 ProofSP2::deserialize(ByteReader& r) {
  expect_proof_version(r);
  ProofSP2 p;
  p.l = r.u32();
  p.k = r.u32();
  if (p.l < 1 || p.k < 1)
    fail(Errc::kFormat, "rectangle dimensions must be positive");
  uint64_t count = static_cast<uint64_t>(p.l) * p.k;
  if (count > kMaxProofCells)
    fail(Errc::kFormat, "cell count beyond supported bounds");
  r.need_items(count, kG1Wire + 3 * kGtWire + 4 * kScalarWire + kG2Wire);
  p.cells.reserve(count);
  for (uint64_t idx = 0; idx < count; ++idx)
    p.cells.push_back(ProofSP2Cell::deserialize(r));
  p.H_tilde = TargetElement::deserialize(r);
  p.msg = deserialize_msg32(r);
  return p;
}

ProofSP2 prove_sp2(const SecretKey& sk, const PublicParams& pp,
                   const QueryCommitments& omega, const KeyBundle& keys,
                   RandomSource& rng) {
  const uint32_t l = omega.l, k = omega.k;
  const size_t count = static_cast<size_t>(l) * k;
  if (keys.l != l || keys.k != k || keys.K.size() != count ||
      keys.L.size() != count)
    fail(Errc::kArgument, "key bundle does not match the query size");
  if (l >= pp.m || k >= pp.n)
    fail(Errc::kArgument, "rectangle exceeds the grid bounds");

  ProofSP2 p;
  p.l = l;
  p.k = k;
  p.msg = rng.bytes32();
  p.cells.reserve(count);

  G2Element h_tilde = sample_blind_point(rng);
  p.H_tilde = pair(pp.gk.left(), h_tilde);

  std::vector<Scalar> xp(l + 1), yp(k + 1);
  xp[0] = Scalar::one();
  for (uint32_t mu = 1; mu <= l; ++mu) xp[mu] = xp[mu - 1] * sk.x;
  yp[0] = Scalar::one();
  for (uint32_t nu = 1; nu <= k; ++nu) yp[nu] = yp[nu - 1] * sk.y;

  for (uint32_t mu = 1; mu <= l; ++mu) {
    for (uint32_t nu = 1; nu <= k; ++nu) {
      const G1Element& K = keys.k_at(mu, nu);
      const TargetElement& L = keys.l_at(mu, nu);
      Scalar om = nonzero_scalar(rng);
      Scalar ps = nonzero_scalar(rng);

      ProofSP2Cell cell;
      cell.Upsilon1 = omega.F1.pow(om) * omega.J1.pow(ps);
      cell.Upsilon2 =
          pair(pp.c(mu).c2.left(), pp.g2.right()).pow(-om);
      cell.Upsilon3 =
          pair(pp.d(nu).d2.left(), pp.h2.right()).pow(-ps);

      Transcript t1;
      t1.append(K)
          .append(cell.Upsilon1)
          .append(cell.Upsilon2)
          .append(cell.Upsilon3)
          .append_msg(p.msg);
      cell.c1 = hash_to_scalar(kDomainSP2, t1);
      Transcript t2;
      t2.append(L).append(pp.H).append_msg(p.msg);
      cell.c2 = hash_to_scalar(kDomainSP2, t2);

      cell.z1 = om - cell.c1 * xp[mu];
      cell.z2 = ps - cell.c1 * yp[nu];
      cell.h_cell = h_tilde * sk.h_frak.pow(-cell.c2);
      cell.L_prime = pair(K, h_tilde);
      p.cells.push_back(std::move(cell));
    }
  }
  return p;
}

bool verify_sp2(const PublicParams& pp, const QueryCommitments& omega,
                const KeyBundle& keys, const ProofSP2& proof) {
  const uint32_t l = omega.l, k = omega.k;
  const size_t count = static_cast<size_t>(l) * k;
  if (proof.l != l || proof.k != k || proof.cells.size() != count)
    return false;
  if (keys.l != l || keys.k != k || keys.K.size() != count ||
      keys.L.size() != count)
    return false;
  if (l >= pp.m || k >= pp.n) return false;  // no honest query has these

  TargetElement P_g2g2 = pair(pp.g2.left(), pp.g2.right());
  TargetElement P_h2h2 = pair(pp.h2.left(), pp.h2.right());

  bool ok = true;
  G1Element g1mu = G1Element::identity();
  for (uint32_t mu = 1; mu <= l; ++mu) {
    g1mu = g1mu * pp.g1.left();
    G1Element h1nu = G1Element::identity();
    for (uint32_t nu = 1; nu <= k; ++nu) {
      h1nu = h1nu * pp.h1.left();
      const ProofSP2Cell& pc = proof.cell(mu, nu);
      const G1Element& K = keys.k_at(mu, nu);
      const TargetElement& L = keys.l_at(mu, nu);

      Transcript t1;
      t1.append(K)
          .append(pc.Upsilon1)
          .append(pc.Upsilon2)
          .append(pc.Upsilon3)
          .append_msg(proof.msg);
      ok &= pc.c1 == hash_to_scalar(kDomainSP2, t1);
      Transcript t2;
      t2.append(L).append(pp.H).append_msg(proof.msg);
      ok &= pc.c2 == hash_to_scalar(kDomainSP2, t2);

      // the key has the committed structure relative to the blinded query
      G1Element structured = K * (omega.E1 * g1mu * omega.E2 * h1nu).inverse();
      ok &= pc.Upsilon1 == omega.F1.pow(pc.z1) * omega.J1.pow(pc.z2) *
                               structured.pow(pc.c1);
      // the exponents are the published secret powers for this cell offset
      TargetElement P_C2g2 = pair(pp.c(mu).c2.left(), pp.g2.right());
      TargetElement P_C2W2 = pair(pp.c(mu).c2.left(), pp.W2.right());
      ok &= pc.Upsilon2 ==
            P_C2g2.pow(-pc.z1) * (P_C2W2 / P_g2g2).pow(pc.c1);
      TargetElement P_D2h2 = pair(pp.d(nu).d2.left(), pp.h2.right());
      TargetElement P_D2W2p = pair(pp.d(nu).d2.left(), pp.W2p.right());
      ok &= pc.Upsilon3 ==
            P_D2h2.pow(-pc.z2) * (P_D2W2p / P_h2h2).pow(pc.c1);
      // the masked pairing value was built with the same secret point
      ok &= pc.L_prime == pair(K, pc.h_cell) * L.pow(pc.c2);
      ok &= proof.H_tilde ==
            pair(pp.gk.left(), pc.h_cell) * pp.H.pow(pc.c2);
    }
  }
  return ok;
}

}  // namespace olbsq
