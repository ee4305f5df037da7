// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// The service-transfer phases: provider-side oblivious key derivation for a
// requested l x k rectangle, user-side service recovery, the plaintext
// reference oracle the protocol must agree with, and the two session state
// machines that pin the message order
//
//     provider proves setup honesty
//       -> user sends blinded query + proof
//       -> provider replies with derived keys + proof
//       -> user verifies and recovers the rectangle.
//
// The provider's computation reads only (l, k) and the blinded commitments;
// the start cell (i, j) appears in no provider-side signature. Retrieved
// cells are (i+mu, j+nu) for mu in [1,l], nu in [1,k] — the anchor cell
// itself is never part of the rectangle.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "olbsq/zkp.hpp"

namespace olbsq {

// The provider's reply: one structured key point and one masked pairing
// value per requested cell, plus the masking base echoed back.
struct KeyBundle {
  uint32_t l = 0, k = 0;
  std::vector<G1Element> K;      // cell keys, (mu, nu) with mu outer
  std::vector<TargetElement> L;  // their pairings with the secret point
  TargetElement H;               // echoed masking base

  const G1Element& k_at(uint32_t mu, uint32_t nu) const;
  const TargetElement& l_at(uint32_t mu, uint32_t nu) const;

  void serialize(ByteWriter& w) const;
  static KeyBundle deserialize(ByteReader& r);
};

// Plaintext rectangle, indexed by offsets into the query rectangle;
// offset (mu, nu) holds the payload of absolute cell (i+mu, j+nu).
struct RecoveredServices {
  uint32_t i = 0, j = 0;  // anchor the offsets refer to
  uint32_t l = 0, k = 0;
  std::vector<std::vector<uint8_t>> cells;  // (mu, nu) with mu outer

  const std::vector<uint8_t>& payload(uint32_t mu, uint32_t nu) const;

  bool operator==(const RecoveredServices&) const = default;
};

// Provider side: derive the reply keys from the blinded query alone.
// Requires 1 <= l < pp.m and 1 <= k < pp.n (the only rectangle sizes any
// in-range query can have); throws an argument error otherwise.
KeyBundle derive_keys(const SecretKey& sk, const PublicParams& pp,
                      const QueryCommitments& omega);

// User side: check the provider's key-honesty proof (a failed check aborts
// with a protocol error; no partial results), then unblind every cell and
// open its payload against the encrypted catalog.
RecoveredServices recover_services(const UserQueryState& state,
                                   const PublicParams& pp,
                                   const KeyBundle& keys,
                                   const ProofSP2& proof,
                                   const EncryptedCatalog& cat);

// Reference oracle: what an incorruptible third party holding the plaintext
// grid would hand the user. `plain` is the row-major grid (row outer,
// column inner) of m*n payloads. Returns nothing when the rectangle is out
// of range or the provider refuses.
std::optional<RecoveredServices> ideal_functionality(
    const std::vector<std::vector<uint8_t>>& plain, uint32_t m, uint32_t n,
    uint32_t i, uint32_t j, uint32_t l, uint32_t k,
    bool provider_accepts = true);

// ---------------------------------------------------------------------------
// Session state machines. One session = one protocol run, single-owner.
// Out-of-order calls are usage errors; failed verifications move the
// session to Aborted and throw protocol errors.

enum class SessionPhase {
  Init,
  ProviderProven,
  QuerySent,
  Done,
  Aborted,
};

class UserSession {
 public:
  // References must outlive the session; the rectangle is validated here.
  UserSession(const PublicParams& pp, const EncryptedCatalog& cat,
              uint32_t i, uint32_t j, uint32_t l, uint32_t k);

  SessionPhase phase() const { return phase_; }

  // Step 1: the provider's setup-honesty proof arrives.
  void on_provider_proof(const ProofSP1& proof);
  // Step 2: build and hand out the query message.
  std::pair<QueryCommitments, ProofU> make_query(RandomSource& rng);
  // Step 3: the provider's reply arrives; verify and recover.
  RecoveredServices on_reply(const KeyBundle& keys, const ProofSP2& proof);

 private:
  const PublicParams& pp_;
  const EncryptedCatalog& cat_;
  uint32_t i_, j_, l_, k_;
  SessionPhase phase_ = SessionPhase::Init;
  UserQueryState state_;
};

class ProviderSession {
 public:
  // max_cells bounds l*k per session (resource protection).
  ProviderSession(const SecretKey& sk, const PublicParams& pp,
                  uint64_t max_cells);

  SessionPhase phase() const { return phase_; }

  // Step 1: open the session by proving setup honesty.
  ProofSP1 make_setup_proof(RandomSource& rng);
  // Step 2: the user's query arrives; verify it, derive keys, prove them.
  // Throws a range error when l*k exceeds max_cells, a protocol error when
  // the query proof does not verify.
  std::pair<KeyBundle, ProofSP2> on_query(const QueryCommitments& omega,
                                          const ProofU& proof,
                                          RandomSource& rng);

 private:
  const SecretKey& sk_;
  const PublicParams& pp_;
  uint64_t max_cells_;
  SessionPhase phase_ = SessionPhase::Init;
};

}  // namespace olbsq
