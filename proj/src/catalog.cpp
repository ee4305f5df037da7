// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0

#include "olbsq/catalog.hpp"

#include "olbsq/fsio.hpp"
#include "olbsq/hash.hpp"

namespace olbsq {

namespace {

constexpr uint16_t kCatalogVersion = 1;
constexpr char kCatalogMagic[8] = {'O', 'L', 'B', 'S', 'Q', 'C', 'A', 'T'};
constexpr char kKeyMagic[8] = {'O', 'L', 'B', 'S', 'Q', 'K', 'E', 'Y'};
constexpr std::string_view kPayloadKeyInfo = "olbsq/v1/payload-key";

Scalar nonzero_scalar(RandomSource& rng) {
  for (;;) {
    Scalar s = Scalar::random(rng);
    if (!s.is_zero()) return s;
  }
}

DualElement sample_generator(RandomSource& rng) {
  for (;;) {
    DualElement d = DualElement::sample(rng);
    if (!d.left().is_identity()) return d;
  }
}

// every exponent-inverse denominator used by setup must be nonzero
bool denominators_ok(const SecretKey& sk, uint32_t m, uint32_t n) {
  Scalar xi = Scalar::one();
  for (uint32_t i = 1; i <= m; ++i) {
    xi = xi * sk.x;
    if ((sk.alpha1 + Scalar::from_u64(i)).is_zero()) return false;
    if ((sk.alpha2 + xi).is_zero()) return false;
  }
  Scalar yj = Scalar::one();
  for (uint32_t j = 1; j <= n; ++j) {
    yj = yj * sk.y;
    if ((sk.beta1 + Scalar::from_u64(j)).is_zero()) return false;
    if ((sk.beta2 + yj).is_zero()) return false;
  }
  return true;
}

void write_magic(ByteWriter& w, const char (&magic)[8]) {
  w.bytes(std::span<const uint8_t>(
      reinterpret_cast<const uint8_t*>(magic), 8));
}

void expect_magic(ByteReader& r, const char (&magic)[8], const char* what) {
  auto got = r.bytes(8);
  for (int i = 0; i < 8; ++i)
    if (got[static_cast<size_t>(i)] != static_cast<uint8_t>(magic[i]))
      fail(Errc::kFormat, std::string("not a ") + what + " file");
}

void expect_version_and_curve(ByteReader& r) {
  if (r.u16() != kCatalogVersion)
    fail(Errc::kFormat, "unsupported file version");
  if (r.u8() != kCurveId) fail(Errc::kFormat, "unsupported curve id");
}

}  // namespace

void SecretKey::serialize(ByteWriter& w) const {
  serialize_scalar(w, alpha1);
  serialize_scalar(w, alpha2);
  serialize_scalar(w, beta1);
  serialize_scalar(w, beta2);
  serialize_scalar(w, x);
  serialize_scalar(w, y);
  h_frak.serialize(w);
}

SecretKey SecretKey::deserialize(ByteReader& r) {
  SecretKey sk;
  sk.alpha1 = deserialize_scalar(r);
  sk.alpha2 = deserialize_scalar(r);
  sk.beta1 = deserialize_scalar(r);
  sk.beta2 = deserialize_scalar(r);
  sk.x = deserialize_scalar(r);
  sk.y = deserialize_scalar(r);
  sk.h_frak = G2Element::deserialize(r);
  return sk;
}

const G2Element& PublicParams::gamma1(uint32_t i) const {
  if (i < 1 || i > m) fail(Errc::kArgument, "column index out of range");
  return Gamma1[i - 1];
}

const G2Element& PublicParams::gamma2(uint32_t j) const {
  if (j < 1 || j > n) fail(Errc::kArgument, "row index out of range");
  return Gamma2[j - 1];
}

const CTriple& PublicParams::c(uint32_t i) const {
  if (i < 1 || i > m) fail(Errc::kArgument, "column index out of range");
  return C[i - 1];
}

const DTriple& PublicParams::d(uint32_t j) const {
  if (j < 1 || j > n) fail(Errc::kArgument, "row index out of range");
  return D[j - 1];
}

void PublicParams::validate() const {
  if (m < 1 || n < 1) fail(Errc::kFormat, "grid dimensions must be positive");
  if (Gamma1.size() != m || C.size() != m || Gamma2.size() != n ||
      D.size() != n)
    fail(Errc::kFormat, "parameter vectors do not match the grid");
  for (const DualElement* g : {&g1, &g2, &h1, &h2, &gk})
    if (g->left().is_identity() || g->right().is_identity())
      fail(Errc::kFormat, "trivial generator in parameters");
  if (H.is_one()) fail(Errc::kFormat, "trivial masking base in parameters");
}

void PublicParams::serialize(ByteWriter& w) const {
  g1.serialize(w);
  g2.serialize(w);
  h1.serialize(w);
  h2.serialize(w);
  gk.serialize(w);
  H.serialize(w);
  W1.serialize(w);
  W2.serialize(w);
  W1p.serialize(w);
  W2p.serialize(w);
  for (const auto& g : Gamma1) g.serialize(w);
  for (const auto& g : Gamma2) g.serialize(w);
  for (const auto& t : C) {
    t.c1.serialize(w);
    t.c2.serialize(w);
    t.c3.serialize(w);
  }
  for (const auto& t : D) {
    t.d1.serialize(w);
    t.d2.serialize(w);
    t.d3.serialize(w);
  }
}

PublicParams PublicParams::deserialize(ByteReader& r, uint32_t m, uint32_t n) {
  PublicParams pp;
  pp.m = m;
  pp.n = n;
  pp.g1 = DualElement::deserialize(r);
  pp.g2 = DualElement::deserialize(r);
  pp.h1 = DualElement::deserialize(r);
  pp.h2 = DualElement::deserialize(r);
  pp.gk = DualElement::deserialize(r);
  pp.H = TargetElement::deserialize(r);
  pp.W1 = G1Element::deserialize(r);
  pp.W2 = DualElement::deserialize(r);
  pp.W1p = G1Element::deserialize(r);
  pp.W2p = DualElement::deserialize(r);
  // per column: one anchor point plus a handle triple; same per row
  constexpr size_t kPerColumn =
      kG2Wire + (kG1Wire + kG1Wire + kG2Wire + kGtWire);
  r.need_items(static_cast<uint64_t>(m) + n, kPerColumn);
  pp.Gamma1.reserve(m);
  for (uint32_t i = 0; i < m; ++i)
    pp.Gamma1.push_back(G2Element::deserialize(r));
  pp.Gamma2.reserve(n);
  for (uint32_t j = 0; j < n; ++j)
    pp.Gamma2.push_back(G2Element::deserialize(r));
  pp.C.reserve(m);
  for (uint32_t i = 0; i < m; ++i) {
    CTriple t;
    t.c1 = G1Element::deserialize(r);
    t.c2 = DualElement::deserialize(r);
    t.c3 = TargetElement::deserialize(r);
    pp.C.push_back(std::move(t));
  }
  pp.D.reserve(n);
  for (uint32_t j = 0; j < n; ++j) {
    DTriple t;
    t.d1 = G1Element::deserialize(r);
    t.d2 = DualElement::deserialize(r);
    t.d3 = TargetElement::deserialize(r);
    pp.D.push_back(std::move(t));
  }
  return pp;
}

const CatalogCell& EncryptedCatalog::cell(uint32_t i, uint32_t j) const {
  if (i < 1 || i > m || j < 1 || j > n)
    fail(Errc::kArgument, "cell index out of range");
  return cells[static_cast<size_t>(j - 1) * m + (i - 1)];
}

CatalogCell& EncryptedCatalog::cell(uint32_t i, uint32_t j) {
  if (i < 1 || i > m || j < 1 || j > n)
    fail(Errc::kArgument, "cell index out of range");
  return cells[static_cast<size_t>(j - 1) * m + (i - 1)];
}

void EncryptedCatalog::serialize(ByteWriter& w) const {
  for (const auto& c : cells) {
    c.A.serialize(w);
    c.B.serialize(w);
    if (c.payload.size() > UINT32_MAX)
      fail(Errc::kArgument, "cell payload too large");
    w.u32(static_cast<uint32_t>(c.payload.size()));
    w.bytes(c.payload);
  }
}

EncryptedCatalog EncryptedCatalog::deserialize(ByteReader& r, uint32_t m,
                                               uint32_t n) {
  EncryptedCatalog cat;
  cat.m = m;
  cat.n = n;
  size_t count = static_cast<size_t>(m) * n;
  r.need_items(count, kG1Wire + kGtWire + 4);
  cat.cells.reserve(count);
  for (size_t idx = 0; idx < count; ++idx) {
    CatalogCell c;
    c.A = G1Element::deserialize(r);
    c.B = TargetElement::deserialize(r);
    uint32_t len = r.u32();
    auto body = r.bytes(len);
    c.payload.assign(body.begin(), body.end());
    cat.cells.push_back(std::move(c));
  }
  return cat;
}

SetupResult setup(uint8_t curve_id, uint32_t m, uint32_t n,
                  const std::vector<std::vector<uint8_t>>& services,
                  RandomSource& rng) {
  if (curve_id != kCurveId) fail(Errc::kArgument, "unsupported curve id");
  if (m < 1 || n < 1) fail(Errc::kArgument, "grid dimensions must be positive");
  if (services.size() != static_cast<size_t>(m) * n)
    fail(Errc::kArgument, "expected exactly m*n service entries");

  SetupResult out;
  PublicParams& pp = out.pp;
  SecretKey& sk = out.sk;
  pp.m = m;
  pp.n = n;

  // sampling phase (uncounted): generators, secrets, masking point
  pp.g1 = sample_generator(rng);
  pp.g2 = sample_generator(rng);
  pp.h1 = sample_generator(rng);
  pp.h2 = sample_generator(rng);
  pp.gk = sample_generator(rng);
  for (;;) {
    sk.alpha1 = nonzero_scalar(rng);
    sk.alpha2 = nonzero_scalar(rng);
    sk.beta1 = nonzero_scalar(rng);
    sk.beta2 = nonzero_scalar(rng);
    sk.x = nonzero_scalar(rng);
    sk.y = nonzero_scalar(rng);
    if (denominators_ok(sk, m, n)) break;  // else resample wholesale
  }
  sk.h_frak = G2Element::base().pow_uncounted(nonzero_scalar(rng));

  // index powers of the secrets (scalar work, uncounted)
  std::vector<Scalar> xpow(m + 1), ypow(n + 1);
  xpow[0] = Scalar::one();
  for (uint32_t i = 1; i <= m; ++i) xpow[i] = xpow[i - 1] * sk.x;
  ypow[0] = Scalar::one();
  for (uint32_t j = 1; j <= n; ++j) ypow[j] = ypow[j - 1] * sk.y;

  // published values (counted work)
  pp.H = pair(pp.gk.left(), sk.h_frak);
  pp.W1 = pp.g1.left().pow(sk.alpha1);
  pp.W2 = pp.g2.pow(sk.alpha2);
  pp.W1p = pp.h1.left().pow(sk.beta1);
  pp.W2p = pp.h2.pow(sk.beta2);

  pp.Gamma1.reserve(m);
  pp.C.reserve(m);
  for (uint32_t i = 1; i <= m; ++i) {
    pp.Gamma1.push_back(
        pp.g1.right().pow((sk.alpha1 + Scalar::from_u64(i)).inverse()));
    CTriple t;
    t.c1 = pp.g2.left().pow(xpow[i]);
    t.c2 = pp.g2.pow((sk.alpha2 + xpow[i]).inverse());
    t.c3 = pp.H.pow(xpow[i]);
    pp.C.push_back(std::move(t));
  }
  pp.Gamma2.reserve(n);
  pp.D.reserve(n);
  for (uint32_t j = 1; j <= n; ++j) {
    pp.Gamma2.push_back(
        pp.h1.right().pow((sk.beta1 + Scalar::from_u64(j)).inverse()));
    DTriple t;
    t.d1 = pp.h2.left().pow(ypow[j]);
    t.d2 = pp.h2.pow((sk.beta2 + ypow[j]).inverse());
    t.d3 = pp.H.pow(ypow[j]);
    pp.D.push_back(std::move(t));
  }

  EncryptedCatalog& cat = out.catalog;
  cat.m = m;
  cat.n = n;
  cat.cells.reserve(static_cast<size_t>(m) * n);
  for (uint32_t j = 1; j <= n; ++j) {
    for (uint32_t i = 1; i <= m; ++i) {
      CatalogCell c;
      c.A = pp.g1.left().pow_public(i) * pp.h1.left().pow_public(j) *
            pp.g2.left().pow(xpow[i]) * pp.h2.left().pow(ypow[j]);
      TargetElement mask = TargetElement::sample(rng);
      c.B = pair(c.A, sk.h_frak) * mask;
      const auto& svc = services[static_cast<size_t>(j - 1) * m + (i - 1)];
      c.payload = wrap_payload(mask, svc, rng);
      cat.cells.push_back(std::move(c));
    }
  }
  return out;
}

ServiceCell decrypt_direct(const SecretKey& sk, const PublicParams& pp,
                           const EncryptedCatalog& cat, uint32_t i,
                           uint32_t j) {
  (void)pp;
  const CatalogCell& c = cat.cell(i, j);  // throws kArgument out of range
  ServiceCell out;
  out.mask = c.B / pair(c.A, sk.h_frak);
  out.payload = unwrap_payload(out.mask, c.payload);
  return out;
}

std::vector<uint8_t> wrap_payload(const TargetElement& mask,
                                  std::span<const uint8_t> payload,
                                  RandomSource& rng) {
  ByteWriter w;
  mask.serialize(w);
  std::vector<uint8_t> key = hkdf_sha256(
      w.data(), {},
      std::span<const uint8_t>(
          reinterpret_cast<const uint8_t*>(kPayloadKeyInfo.data()),
          kPayloadKeyInfo.size()),
      32);
  return aead_seal(std::span<const uint8_t, 32>(key.data(), 32), payload, rng);
}

std::vector<uint8_t> unwrap_payload(const TargetElement& mask,
                                    std::span<const uint8_t> ct) {
  ByteWriter w;
  mask.serialize(w);
  std::vector<uint8_t> key = hkdf_sha256(
      w.data(), {},
      std::span<const uint8_t>(
          reinterpret_cast<const uint8_t*>(kPayloadKeyInfo.data()),
          kPayloadKeyInfo.size()),
      32);
  return aead_open(std::span<const uint8_t, 32>(key.data(), 32), ct);
}

bool params_consistent(const SecretKey& sk, const PublicParams& pp) {
  if (pp.H != pair(pp.gk.left(), sk.h_frak)) return false;
  if (pp.W1 != pp.g1.left().pow_uncounted(sk.alpha1)) return false;
  if (!(pp.W2 == pp.g2.pow_uncounted(sk.alpha2))) return false;
  if (pp.W1p != pp.h1.left().pow_uncounted(sk.beta1)) return false;
  if (!(pp.W2p == pp.h2.pow_uncounted(sk.beta2))) return false;

  Scalar xi = Scalar::one();
  for (uint32_t i = 1; i <= pp.m; ++i) {
    xi = xi * sk.x;
    if (pp.gamma1(i) != pp.g1.right().pow_uncounted(
                            (sk.alpha1 + Scalar::from_u64(i)).inverse()))
      return false;
    const CTriple& t = pp.c(i);
    if (t.c1 != pp.g2.left().pow_uncounted(xi)) return false;
    if (!(t.c2 == pp.g2.pow_uncounted((sk.alpha2 + xi).inverse())))
      return false;
    if (t.c3 != pp.H.pow_uncounted(xi)) return false;
  }
  Scalar yj = Scalar::one();
  for (uint32_t j = 1; j <= pp.n; ++j) {
    yj = yj * sk.y;
    if (pp.gamma2(j) != pp.h1.right().pow_uncounted(
                            (sk.beta1 + Scalar::from_u64(j)).inverse()))
      return false;
    const DTriple& t = pp.d(j);
    if (t.d1 != pp.h2.left().pow_uncounted(yj)) return false;
    if (!(t.d2 == pp.h2.pow_uncounted((sk.beta2 + yj).inverse())))
      return false;
    if (t.d3 != pp.H.pow_uncounted(yj)) return false;
  }
  return true;
}

void write_catalog_file(const std::string& path, const PublicParams& pp,
                        const EncryptedCatalog& cat) {
  if (pp.m != cat.m || pp.n != cat.n)
    fail(Errc::kArgument, "parameters and catalog disagree on grid size");
  ByteWriter w;
  write_magic(w, kCatalogMagic);
  w.u16(kCatalogVersion);
  w.u8(kCurveId);
  w.u32(pp.m);
  w.u32(pp.n);
  pp.serialize(w);
  cat.serialize(w);
  write_file(path, w.data());
}

std::pair<PublicParams, EncryptedCatalog> read_catalog_file(
    const std::string& path) {
  std::vector<uint8_t> data = read_file(path);
  ByteReader r(data);
  expect_magic(r, kCatalogMagic, "catalog");
  expect_version_and_curve(r);
  uint32_t m = r.u32();
  uint32_t n = r.u32();
  if (m < 1 || n < 1) fail(Errc::kFormat, "grid dimensions must be positive");
  if (static_cast<uint64_t>(m) * n > (1u << 24))
    fail(Errc::kFormat, "grid size beyond supported bounds");
  PublicParams pp = PublicParams::deserialize(r, m, n);
  pp.validate();
  EncryptedCatalog cat = EncryptedCatalog::deserialize(r, m, n);
  r.expect_end();
  return {std::move(pp), std::move(cat)};
}

void write_secret_key_file(const std::string& path, const SecretKey& sk) {
  ByteWriter w;
  write_magic(w, kKeyMagic);
  w.u16(kCatalogVersion);
  w.u8(kCurveId);
  sk.serialize(w);
  write_file(path, w.data(), /*restrict_permissions=*/true);
}

SecretKey read_secret_key_file(const std::string& path) {
  std::vector<uint8_t> data = read_file(path);
  ByteReader r(data);
  expect_magic(r, kKeyMagic, "secret-key");
  expect_version_and_curve(r);
  SecretKey sk = SecretKey::deserialize(r);
  r.expect_end();
  return sk;
}

}  // namespace olbsq
