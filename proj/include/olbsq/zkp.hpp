// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// The three non-interactive proof systems of the protocol, made
// non-interactive with hashing over canonical tagged transcripts:
//
//  * setup honesty    — the provider knows the secret masking point behind
//                       the published masking base (prove_sp1/verify_sp1);
//  * query honesty    — the user's blinded query is well-formed and its
//                       rectangle lies inside the published grid, without
//                       revealing the start cell (build_query/verify_query);
//  * key honesty      — the provider derived the reply keys with the same
//                       secrets that produced the published parameters
//                       (prove_sp2/verify_sp2).
//
// Provers draw randomness from a caller-supplied source and are otherwise
// pure; verifiers are pure functions of public data. All proof objects are
// immutable values with a versioned, byte-for-byte documented wire format
// (fields serialized in declaration order; every element carries its type
// tag; challenge transcripts reuse exactly those tagged encodings).

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "olbsq/catalog.hpp"

namespace olbsq {

// ---------------------------------------------------------------------------
// Setup-honesty proof: knowledge of the secret point whose pairing with the
// blind generator equals the published masking base.

struct ProofSP1 {
  TargetElement H_prime;        // blinded masking base
  Scalar c;                     // transcript challenge
  G2Element h_hat;              // blinded secret point
  std::array<uint8_t, 32> msg;  // per-proof nonce message

  void serialize(ByteWriter& w) const;
  static ProofSP1 deserialize(ByteReader& r);
};

ProofSP1 prove_sp1(const G2Element& h_frak, const PublicParams& pp,
                   RandomSource& rng);
bool verify_sp1(const PublicParams& pp, const ProofSP1& proof);

// ---------------------------------------------------------------------------
// The user's blinded query: rectangle size in clear, start cell hidden
// inside ten blinded group elements.

struct QueryCommitments {
  uint32_t l = 0;  // rectangle width  (columns retrieved: i+1 .. i+l)
  uint32_t k = 0;  // rectangle height (rows retrieved:    j+1 .. j+k)
  G1Element E1, E2;       // blinded start coordinates
  G1Element F1;           // blinded column key handle
  G2Element F2;           //   and its inverse-exponent companion
  G1Element J1;           // blinded row key handle
  G2Element J2;           //   and its inverse-exponent companion
  G2Element I1, I2;       // blinded membership witnesses for (i, j)
  G2Element I3, I4;       // blinded membership witnesses for (i+l, j+k)

  void serialize(ByteWriter& w) const;
  static QueryCommitments deserialize(ByteReader& r);
};

// Query-honesty proof: sixteen blinded relation commitments, twelve
// per-relation challenges, twenty-four responses.
struct ProofU {
  G1Element E1p, E2p;
  std::array<TargetElement, 16> Theta;
  std::array<Scalar, 12> c;
  std::array<Scalar, 24> z;
  std::array<uint8_t, 32> msg;

  void serialize(ByteWriter& w) const;
  static ProofU deserialize(ByteReader& r);
};

// The user's secret witness for an issued query. Kept client-side only;
// never serialized to the wire.
struct UserQueryState {
  uint32_t i = 0, j = 0;  // start cell (the anchor itself is not retrieved)
  uint32_t l = 0, k = 0;
  std::array<Scalar, 10> r;  // blinding exponents r1..r10 (r[0] is r1)
  // witness copies of the published elements the query was built from
  G1Element c_i1;
  DualElement c_i2;
  G1Element d_j1;
  DualElement d_j2;
  G2Element gamma1_i, gamma2_j, gamma1_il, gamma2_jk;
  // the user's own commitments, kept for reply verification at recovery
  QueryCommitments omega;
};

struct BuiltQuery {
  UserQueryState state;
  QueryCommitments omega;
  ProofU proof;
};

// Builds the blinded query for rectangle start (i, j) and size l x k, along
// with its well-formedness/range proof. Throws a range error unless
// 1 <= i, i+l <= pp.m, 1 <= j, j+k <= pp.n, and l, k >= 1.
BuiltQuery build_query(const PublicParams& pp, uint32_t i, uint32_t j,
                       uint32_t l, uint32_t k, RandomSource& rng);
bool verify_query(const PublicParams& pp, const QueryCommitments& omega,
                  const ProofU& proof);

// ---------------------------------------------------------------------------
// Key-honesty proof, one tuple per reply cell plus a shared blinded base.

struct ProofSP2Cell {
  G1Element Upsilon1;               // blinded key-structure commitment
  TargetElement Upsilon2, Upsilon3;  // blinded secret-power commitments
  Scalar c1, c2;                    // per-cell challenges
  Scalar z1, z2;                    // responses for the two secret powers
  G2Element h_cell;                 // per-cell blinding of the secret point
  TargetElement L_prime;            // pairing of the cell key with the blind

  void serialize(ByteWriter& w) const;
  static ProofSP2Cell deserialize(ByteReader& r);
};

struct ProofSP2 {
  uint32_t l = 0, k = 0;
  std::vector<ProofSP2Cell> cells;  // (mu, nu) with mu outer, nu inner
  TargetElement H_tilde;            // shared blinded masking base
  std::array<uint8_t, 32> msg;

  const ProofSP2Cell& cell(uint32_t mu, uint32_t nu) const;

  void serialize(ByteWriter& w) const;
  static ProofSP2 deserialize(ByteReader& r);
};

struct KeyBundle;  // defined by the transfer layer (key derivation output)

ProofSP2 prove_sp2(const SecretKey& sk, const PublicParams& pp,
                   const QueryCommitments& omega, const KeyBundle& keys,
                   RandomSource& rng);
bool verify_sp2(const PublicParams& pp, const QueryCommitments& omega,
                const KeyBundle& keys, const ProofSP2& proof);

}  // namespace olbsq
