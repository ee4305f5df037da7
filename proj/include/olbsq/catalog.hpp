// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Provider-side setup: the secret key, the published parameters, and the
// encrypted m×n service catalog.
//
// The grid is 1-based: column index i runs over [1, m], row index j over
// [1, n].  A query anchored at (i, j) retrieves cells (i+µ, j+ν), so the
// anchor itself is never part of the answer.
//
// Published per cell:
//     A_{i,j} = g1^i · h1^j · g2^{x^i} · h2^{y^j}
//     B_{i,j} = pair(A_{i,j}, h) · M_{i,j}
// where M_{i,j} is a fresh random target-group element.  M doubles as a KEM
// key: the cell's application payload travels alongside as an authenticated
// ciphertext under a key derived from M's encoding, so arbitrary bytes ride
// on the masking math unchanged.
//
// Index witnesses (the range-proof signatures) and the per-coordinate
// triples:
//     Gamma1[i] = g1^{1/(alpha1+i)}        Gamma2[j] = h1^{1/(beta1+j)}
//     C[i] = (g2^{x^i}, g2^{1/(alpha2+x^i)}, H^{x^i})
//     D[j] = (h2^{y^j}, h2^{1/(beta2+y^j)}, H^{y^j})

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "olbsq/group.hpp"
#include "olbsq/rng.hpp"

namespace olbsq {

// the single supported instantiation of the pairing groups
inline constexpr uint8_t kCurveId = 1;

struct SecretKey {
  Scalar alpha1, alpha2, beta1, beta2, x, y;
  G2Element h_frak;  // the pairing-masking secret, right slot

  void serialize(ByteWriter& w) const;
  static SecretKey deserialize(ByteReader& r);
};

// per-column triple: (g2^{x^i}, g2^{1/(alpha2+x^i)}, H^{x^i})
struct CTriple {
  G1Element c1;
  DualElement c2;
  TargetElement c3;
};

// per-row triple: (h2^{y^j}, h2^{1/(beta2+y^j)}, H^{y^j})
struct DTriple {
  G1Element d1;
  DualElement d2;
  TargetElement d3;
};

struct PublicParams {
  uint32_t m = 0, n = 0;
  // generators; all usable in either pairing slot
  DualElement g1, g2, h1, h2, gk;
  TargetElement H;  // pair(gk, h_frak)
  G1Element W1, W1p;
  DualElement W2, W2p;
  std::vector<G2Element> Gamma1;  // index witnesses, columns 1..m
  std::vector<G2Element> Gamma2;  // rows 1..n
  std::vector<CTriple> C;         // columns 1..m
  std::vector<DTriple> D;         // rows 1..n

  // 1-based accessors (throw kArgument when out of range)
  const G2Element& gamma1(uint32_t i) const;
  const G2Element& gamma2(uint32_t j) const;
  const CTriple& c(uint32_t i) const;
  const DTriple& d(uint32_t j) const;

  // structural consistency: vector sizes match m, n; m, n >= 1; generators
  // and H are non-trivial
  void validate() const;

  // element body only; m and n travel in the enclosing header
  void serialize(ByteWriter& w) const;
  static PublicParams deserialize(ByteReader& r, uint32_t m, uint32_t n);
};

struct CatalogCell {
  G1Element A;
  TargetElement B;
  std::vector<uint8_t> payload;  // sealed application bytes
};

struct EncryptedCatalog {
  uint32_t m = 0, n = 0;
  std::vector<CatalogCell> cells;  // row-major: row j outer, column i inner

  const CatalogCell& cell(uint32_t i, uint32_t j) const;
  CatalogCell& cell(uint32_t i, uint32_t j);

  // cell records only; m and n travel in the enclosing header
  void serialize(ByteWriter& w) const;
  static EncryptedCatalog deserialize(ByteReader& r, uint32_t m, uint32_t n);
};

struct ServiceCell {
  TargetElement mask;            // M_{i,j}
  std::vector<uint8_t> payload;  // opened application bytes
};

struct SetupResult {
  SecretKey sk;
  PublicParams pp;
  EncryptedCatalog catalog;
};

// Build a fresh key, parameters and encrypted catalog over the given
// services.  `services` is row-major (row j outer, column i inner) with
// exactly m*n entries.  Throws kArgument on bad dimensions.
SetupResult setup(uint8_t curve_id, uint32_t m, uint32_t n,
                  const std::vector<std::vector<uint8_t>>& services,
                  RandomSource& rng);
inline SetupResult setup(uint32_t m, uint32_t n,
                         const std::vector<std::vector<uint8_t>>& services,
                         RandomSource& rng) {
  return setup(kCurveId, m, n, services, rng);
}

// Test oracle: open cell (i, j) directly with the secret key, bypassing the
// transfer protocol.  Throws kArgument out of range, kIntegrity on a
// tampered payload.
ServiceCell decrypt_direct(const SecretKey& sk, const PublicParams& pp,
                           const EncryptedCatalog& cat, uint32_t i,
                           uint32_t j);

// Payload hybrid layer: authenticated encryption under a key derived from
// the mask's canonical encoding.
std::vector<uint8_t> wrap_payload(const TargetElement& mask,
                                  std::span<const uint8_t> payload,
                                  RandomSource& rng);
std::vector<uint8_t> unwrap_payload(const TargetElement& mask,
                                    std::span<const uint8_t> ct);

// Provider self-check: every published element carries the exponent the
// secret key says it should (uncounted; test/diagnostic use).
bool params_consistent(const SecretKey& sk, const PublicParams& pp);

// --- persistence ---------------------------------------------------------
// Catalog file: magic "OLBSQCAT", version, curve id, m, n, the parameters
// in declared order, then row-major (A, B, payload) records.
void write_catalog_file(const std::string& path, const PublicParams& pp,
                        const EncryptedCatalog& cat);
std::pair<PublicParams, EncryptedCatalog> read_catalog_file(
    const std::string& path);

// Secret-key file: magic "OLBSQKEY"; written with owner-only permissions.
void write_secret_key_file(const std::string& path, const SecretKey& sk);
SecretKey read_secret_key_file(const std::string& path);

}  // namespace olbsq
