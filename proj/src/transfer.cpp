// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0

#include "olbsq/transfer.hpp"

#include <string>

namespace olbsq {

namespace {

constexpr uint64_t kMaxBundleCells = uint64_t{1} << 24;

size_t cell_index(uint32_t mu, uint32_t nu, uint32_t l, uint32_t k,
                  const char* what) {
  if (mu < 1 || mu > l || nu < 1 || nu > k)
    fail(Errc::kArgument, std::string(what) + ": cell offset out of range");
  return static_cast<size_t>(mu - 1) * k + (nu - 1);
}

}  // namespace

const G1Element& KeyBundle::k_at(uint32_t mu, uint32_t nu) const {
  return K[cell_index(mu, nu, l, k, "key bundle")];
}

const TargetElement& KeyBundle::l_at(uint32_t mu, uint32_t nu) const {
  return L[cell_index(mu, nu, l, k, "key bundle")];
}

void KeyBundle::serialize(ByteWriter& w) const {
  w.u32(l);
  w.u32(k);
  for (const auto& e : K) e.serialize(w);
  for (const auto& e : L) e.serialize(w);
  H.serialize(w);
}

KeyBundle KeyBundle::deserialize(ByteReader& r) {
  KeyBundle kb;
  kb.l = r.u32();
  kb.k = r.u32();
  if (kb.l < 1 || kb.k < 1)
    fail(Errc::kFormat, "rectangle dimensions must be positive");
  uint64_t count = static_cast<uint64_t>(kb.l) * kb.k;
  if (count > kMaxBundleCells)
    fail(Errc::kFormat, "cell count beyond supported bounds");
  r.need_items(count, kG1Wire + kGtWire);
  kb.K.reserve(count);
  for (uint64_t idx = 0; idx < count; ++idx)
    kb.K.push_back(G1Element::deserialize(r));
  kb.L.reserve(count);
  for (uint64_t idx = 0; idx < count; ++idx)
    kb.L.push_back(TargetElement::deserialize(r));
  kb.H = TargetElement::deserialize(r);
  return kb;
}

const std::vector<uint8_t>& RecoveredServices::payload(uint32_t mu,
                                                       uint32_t nu) const {
  return cells[cell_index(mu, nu, l, k, "recovered rectangle")];
}

KeyBundle derive_keys(const SecretKey& sk, const PublicParams& pp,
                      const QueryCommitments& omega) {
  const uint32_t l = omega.l, k = omega.k;
  if (l < 1 || k < 1 || l >= pp.m || k >= pp.n)
    fail(Errc::kArgument, "rectangle exceeds the grid bounds");

  KeyBundle kb;
  kb.l = l;
  kb.k = k;
  kb.H = pp.H;
  kb.K.reserve(static_cast<size_t>(l) * k);
  kb.L.reserve(static_cast<size_t>(l) * k);

  // secret powers walk an incremental scalar chain; each power costs one
  // exponentiation of the blinded handle, not mu of them
  std::vector<G1Element> F1x(l + 1), J1y(k + 1);
  Scalar xp = Scalar::one(), yp = Scalar::one();
  for (uint32_t mu = 1; mu <= l; ++mu) {
    xp = xp * sk.x;
    F1x[mu] = omega.F1.pow(xp);
  }
  for (uint32_t nu = 1; nu <= k; ++nu) {
    yp = yp * sk.y;
    J1y[nu] = omega.J1.pow(yp);
  }

  const G1Element E12 = omega.E1 * omega.E2;
  G1Element g1mu = G1Element::identity();
  for (uint32_t mu = 1; mu <= l; ++mu) {
    g1mu = g1mu * pp.g1.left();
    const G1Element base_mu = E12 * g1mu * F1x[mu];
    G1Element h1nu = G1Element::identity();
    for (uint32_t nu = 1; nu <= k; ++nu) {
      h1nu = h1nu * pp.h1.left();
      G1Element key = base_mu * h1nu * J1y[nu];
      kb.L.push_back(pair(key, sk.h_frak));
      kb.K.push_back(std::move(key));
    }
  }
  return kb;
}

RecoveredServices recover_services(const UserQueryState& state,
                                   const PublicParams& pp,
                                   const KeyBundle& keys,
                                   const ProofSP2& proof,
                                   const EncryptedCatalog& cat) {
  if (keys.l != state.l || keys.k != state.k)
    fail(Errc::kProtocol, "reply size does not match the query");
  if (!verify_sp2(pp, state.omega, keys, proof))
    fail(Errc::kProtocol, "key-honesty proof rejected");

  RecoveredServices out;
  out.i = state.i;
  out.j = state.j;
  out.l = state.l;
  out.k = state.k;
  out.cells.reserve(static_cast<size_t>(state.l) * state.k);

  // the blinding contribution shared by every cell is removed once
  TargetElement Hr12 = pp.H.pow(-(state.r[0] + state.r[1]));
  for (uint32_t mu = 1; mu <= state.l; ++mu) {
    for (uint32_t nu = 1; nu <= state.k; ++nu) {
      TargetElement blind = Hr12 * pp.c(mu).c3.pow(state.r[2]) *
                            pp.d(nu).d3.pow(state.r[4]);
      TargetElement P = keys.l_at(mu, nu) / blind;
      const CatalogCell& cell = cat.cell(state.i + mu, state.j + nu);
      TargetElement mask = cell.B / P;
      try {
        out.cells.push_back(unwrap_payload(mask, cell.payload));
      } catch (const Error& e) {
        if (e.code() == Errc::kIntegrity)
          fail(Errc::kIntegrity,
               "cell (" + std::to_string(state.i + mu) + "," +
                   std::to_string(state.j + nu) + ") failed to open");
        throw;
      }
    }
  }
  return out;
}

std::optional<RecoveredServices> ideal_functionality(
    const std::vector<std::vector<uint8_t>>& plain, uint32_t m, uint32_t n,
    uint32_t i, uint32_t j, uint32_t l, uint32_t k, bool provider_accepts) {
  if (plain.size() != static_cast<size_t>(m) * n)
    fail(Errc::kArgument, "plaintext grid does not match the grid size");
  if (!provider_accepts) return std::nullopt;
  if (i < 1 || j < 1 || l < 1 || k < 1 ||
      static_cast<uint64_t>(i) + l > m || static_cast<uint64_t>(j) + k > n)
    return std::nullopt;

  RecoveredServices out;
  out.i = i;
  out.j = j;
  out.l = l;
  out.k = k;
  out.cells.reserve(static_cast<size_t>(l) * k);
  for (uint32_t mu = 1; mu <= l; ++mu)
    for (uint32_t nu = 1; nu <= k; ++nu)
      out.cells.push_back(
          plain[static_cast<size_t>(j + nu - 1) * m + (i + mu - 1)]);
  return out;
}

// ---------------------------------------------------------------------------
// Session state machines

UserSession::UserSession(const PublicParams& pp, const EncryptedCatalog& cat,
                         uint32_t i, uint32_t j, uint32_t l, uint32_t k)
    : pp_(pp), cat_(cat), i_(i), j_(j), l_(l), k_(k) {
  if (pp.m != cat.m || pp.n != cat.n)
    fail(Errc::kArgument, "catalog does not match the parameters");
  if (i < 1 || j < 1 || l < 1 || k < 1 ||
      static_cast<uint64_t>(i) + l > pp.m ||
      static_cast<uint64_t>(j) + k > pp.n)
    fail(Errc::kRange, "query rectangle outside the grid");
}

void UserSession::on_provider_proof(const ProofSP1& proof) {
  if (phase_ != SessionPhase::Init)
    fail(Errc::kUsage, "setup-honesty proof expected first");
  if (!verify_sp1(pp_, proof)) {
    phase_ = SessionPhase::Aborted;
    fail(Errc::kProtocol, "setup-honesty proof rejected");
  }
  phase_ = SessionPhase::ProviderProven;
}

std::pair<QueryCommitments, ProofU> UserSession::make_query(
    RandomSource& rng) {
  if (phase_ != SessionPhase::ProviderProven)
    fail(Errc::kUsage,
         "query can only be built after the provider proves setup honesty");
  BuiltQuery built = build_query(pp_, i_, j_, l_, k_, rng);
  state_ = std::move(built.state);
  phase_ = SessionPhase::QuerySent;
  return {std::move(built.omega), std::move(built.proof)};
}

RecoveredServices UserSession::on_reply(const KeyBundle& keys,
                                        const ProofSP2& proof) {
  if (phase_ != SessionPhase::QuerySent)
    fail(Errc::kUsage, "no outstanding query");
  try {
    RecoveredServices out = recover_services(state_, pp_, keys, proof, cat_);
    phase_ = SessionPhase::Done;
    return out;
  } catch (...) {
    phase_ = SessionPhase::Aborted;
    throw;
  }
}

ProviderSession::ProviderSession(const SecretKey& sk, const PublicParams& pp,
                                 uint64_t max_cells)
    : sk_(sk), pp_(pp), max_cells_(max_cells) {}

ProofSP1 ProviderSession::make_setup_proof(RandomSource& rng) {
  if (phase_ != SessionPhase::Init)
    fail(Errc::kUsage, "setup-honesty proof already issued");
  ProofSP1 p = prove_sp1(sk_.h_frak, pp_, rng);
  phase_ = SessionPhase::ProviderProven;
  return p;
}

std::pair<KeyBundle, ProofSP2> ProviderSession::on_query(
    const QueryCommitments& omega, const ProofU& proof, RandomSource& rng) {
  if (phase_ != SessionPhase::ProviderProven)
    fail(Errc::kUsage, "query arrived out of order");
  if (omega.l < 1 || omega.k < 1 ||
      static_cast<uint64_t>(omega.l) * omega.k > max_cells_ ||
      omega.l >= pp_.m || omega.k >= pp_.n) {
    phase_ = SessionPhase::Aborted;
    fail(Errc::kRange, "requested rectangle not serviceable");
  }
  if (!verify_query(pp_, omega, proof)) {
    phase_ = SessionPhase::Aborted;
    fail(Errc::kProtocol, "query proof rejected");
  }
  KeyBundle keys = derive_keys(sk_, pp_, omega);
  ProofSP2 p2 = prove_sp2(sk_, pp_, omega, keys, rng);
  phase_ = SessionPhase::Done;
  return {std::move(keys), std::move(p2)};
}

}  // namespace olbsq
