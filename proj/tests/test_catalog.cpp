// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Catalog generation: published parameters, encrypted grid cells,
// operation-count accounting, payload sealing, and file round-trips.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <string>
#include <sys/stat.h>
#include <unistd.h>
#include <vector>

#include "olbsq/catalog.hpp"
#include "olbsq/fsio.hpp"
#include "olbsq/hash.hpp"

using namespace olbsq;

namespace {

// distinct, recognizable per-cell plaintext for a given grid position
std::vector<uint8_t> service_blob(uint32_t i, uint32_t j) {
  std::string s = "service row=" + std::to_string(j) +
                  " col=" + std::to_string(i) + " payload body";
  return std::vector<uint8_t>(s.begin(), s.end());
}

std::vector<std::vector<uint8_t>> service_grid(uint32_t m, uint32_t n) {
  std::vector<std::vector<uint8_t>> out;
  out.reserve(static_cast<size_t>(m) * n);
  for (uint32_t j = 1; j <= n; ++j)
    for (uint32_t i = 1; i <= m; ++i) out.push_back(service_blob(i, j));
  return out;
}

struct TempFile {
  std::string path;
  explicit TempFile(const char* name)
      : path(std::string("/tmp/olbsq_test_") + name + "_" +
             std::to_string(::getpid())) {}
  ~TempFile() { std::remove(path.c_str()); }
};

// run `fn`, which is expected to throw; report the thrown error class, or
// fail the test outright when nothing was thrown
template <class Fn>
Errc error_code_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error, none was thrown");
  return Errc::kUsage;  // unreachable
}

}  // namespace

TEST_CASE("setup rejects bad arguments") {
  DeterministicRandom rng(100);
  CHECK(error_code_of([&] { setup(1, 0, 3, {}, rng); }) == Errc::kArgument);
  CHECK(error_code_of([&] { setup(1, 3, 0, {}, rng); }) == Errc::kArgument);
  CHECK(error_code_of([&] {
          setup(1, 2, 2, service_grid(2, 1), rng);  // 2 entries, need 4
        }) == Errc::kArgument);
  CHECK(error_code_of([&] { setup(9, 1, 1, service_grid(1, 1), rng); }) ==
        Errc::kArgument);  // unknown curve id
}

TEST_CASE("every cell of a 4x4 catalog decrypts to its plaintext") {
  DeterministicRandom rng(101);
  const uint32_t m = 4, n = 4;
  SetupResult s = setup(m, n, service_grid(m, n), rng);
  for (uint32_t j = 1; j <= n; ++j)
    for (uint32_t i = 1; i <= m; ++i) {
      ServiceCell cell = decrypt_direct(s.sk, s.pp, s.catalog, i, j);
      CHECK(cell.payload == service_blob(i, j));
      // the mask is exactly what the grid equation hides
      CHECK(s.catalog.cell(i, j).B ==
            pair(s.catalog.cell(i, j).A, s.sk.h_frak) * cell.mask);
    }
}

TEST_CASE("cell accessors enforce the 1-based grid range") {
  DeterministicRandom rng(102);
  SetupResult s = setup(2, 3, service_grid(2, 3), rng);
  CHECK(error_code_of([&] { decrypt_direct(s.sk, s.pp, s.catalog, 0, 1); }) ==
        Errc::kArgument);
  CHECK(error_code_of([&] { decrypt_direct(s.sk, s.pp, s.catalog, 3, 1); }) ==
        Errc::kArgument);
  CHECK(error_code_of([&] { decrypt_direct(s.sk, s.pp, s.catalog, 1, 0); }) ==
        Errc::kArgument);
  CHECK(error_code_of([&] { decrypt_direct(s.sk, s.pp, s.catalog, 1, 4); }) ==
        Errc::kArgument);
  CHECK(error_code_of([&] { s.pp.gamma1(0); }) == Errc::kArgument);
  CHECK(error_code_of([&] { s.pp.gamma1(3); }) == Errc::kArgument);
  CHECK(error_code_of([&] { s.pp.d(4); }) == Errc::kArgument);
}

TEST_CASE("setup performs the budgeted operation counts") {
  struct Case {
    uint32_t m, n;
  } cases[] = {{1, 1}, {2, 3}, {4, 4}};
  for (const auto& c : cases) {
    CAPTURE(c.m);
    CAPTURE(c.n);
    DeterministicRandom rng(103 + c.m * 16 + c.n);
    instrument::begin_trace();
    SetupResult s = setup(c.m, c.n, service_grid(c.m, c.n), rng);
    OpCounts ops = instrument::end_trace();
    const uint64_t m = c.m, n = c.n;
    CHECK(ops.exp_source == 4 + 3 * m + 3 * n + 4 * m * n);
    CHECK(ops.exp_target == m + n);
    CHECK(ops.pairings == 1 + m * n);
    CHECK(ops.hashes == 0);
    CHECK(params_consistent(s.sk, s.pp));
  }
}

TEST_CASE("published parameters satisfy their defining identities") {
  DeterministicRandom rng(104);
  const uint32_t m = 3, n = 4;
  SetupResult s = setup(m, n, service_grid(m, n), rng);
  const PublicParams& pp = s.pp;
  const SecretKey& sk = s.sk;

  pp.validate();

  // masking base is the pairing of the blind generator with the secret point
  CHECK(pp.H == pair(pp.gk.left(), sk.h_frak));

  // inverse-exponent columns: e(W1 * g1^i, Gamma1[i]) == e(g1, g1-right)
  TargetElement g1_pair = pair(pp.g1.left(), pp.g1.right());
  for (uint32_t i = 1; i <= m; ++i)
    CHECK(pair(pp.W1 * pp.g1.left().pow_public(i), pp.gamma1(i)) == g1_pair);
  TargetElement h1_pair = pair(pp.h1.left(), pp.h1.right());
  for (uint32_t j = 1; j <= n; ++j)
    CHECK(pair(pp.W1p * pp.h1.left().pow_public(j), pp.gamma2(j)) == h1_pair);

  // secret-power triples: e(W2 * C1, C2) == e(g2, g2), C3 == H^{x^i}
  TargetElement g2_pair = pair(pp.g2.left(), pp.g2.right());
  TargetElement h2_pair = pair(pp.h2.left(), pp.h2.right());
  Scalar xi = Scalar::one();
  for (uint32_t i = 1; i <= m; ++i) {
    xi = xi * sk.x;
    const CTriple& t = pp.c(i);
    CHECK(t.c2.consistent());
    CHECK(pair(pp.W2.left() * t.c1, t.c2.right()) == g2_pair);
    CHECK(t.c1 == pp.g2.left().pow_uncounted(xi));
    CHECK(t.c3 == pp.H.pow_uncounted(xi));
  }
  Scalar yj = Scalar::one();
  for (uint32_t j = 1; j <= n; ++j) {
    yj = yj * sk.y;
    const DTriple& t = pp.d(j);
    CHECK(t.d2.consistent());
    CHECK(pair(pp.W2p.left() * t.d1, t.d2.right()) == h2_pair);
    CHECK(t.d1 == pp.h2.left().pow_uncounted(yj));
    CHECK(t.d3 == pp.H.pow_uncounted(yj));
  }

  // grid points carry the advertised four-generator structure
  for (uint32_t j = 1; j <= n; ++j) {
    Scalar yv = Scalar::zero();
    for (uint32_t t = 0; t < j; ++t) yv = yv + Scalar::one();
    for (uint32_t i = 1; i <= m; ++i) {
      Scalar xp = Scalar::one(), yp = Scalar::one();
      for (uint32_t t = 0; t < i; ++t) xp = xp * sk.x;
      for (uint32_t t = 0; t < j; ++t) yp = yp * sk.y;
      G1Element expect = pp.g1.left().pow_public(i) *
                         pp.h1.left().pow_public(j) *
                         pp.g2.left().pow_uncounted(xp) *
                         pp.h2.left().pow_uncounted(yp);
      CHECK(s.catalog.cell(i, j).A == expect);
    }
  }

  // a mismatched key is detected
  SecretKey other = sk;
  DeterministicRandom rng2(105);
  other.x = Scalar::random(rng2);
  CHECK_FALSE(params_consistent(other, pp));
}

TEST_CASE("payload sealing round-trips and authenticates") {
  DeterministicRandom rng(106);
  TargetElement mask = TargetElement::sample(rng);

  std::vector<uint8_t> big(1024);
  for (size_t i = 0; i < big.size(); ++i)
    big[i] = static_cast<uint8_t>(i * 31 + 7);
  std::vector<uint8_t> sealed = wrap_payload(mask, big, rng);
  CHECK(unwrap_payload(mask, sealed) == big);

  std::vector<uint8_t> empty_sealed = wrap_payload(mask, {}, rng);
  CHECK(unwrap_payload(mask, empty_sealed).empty());

  // wrong mask fails the authenticator
  TargetElement wrong = TargetElement::sample(rng);
  CHECK(error_code_of([&] { unwrap_payload(wrong, sealed); }) ==
        Errc::kIntegrity);

  // bit-flip anywhere fails the authenticator
  for (size_t at : {size_t{0}, sealed.size() / 2, sealed.size() - 1}) {
    std::vector<uint8_t> bad = sealed;
    bad[at] ^= 0x01;
    CHECK(error_code_of([&] { unwrap_payload(mask, bad); }) ==
          Errc::kIntegrity);
  }
}

TEST_CASE("tampered catalog cell fails to decrypt") {
  DeterministicRandom rng(107);
  SetupResult s = setup(2, 2, service_grid(2, 2), rng);
  s.catalog.cell(1, 2).payload[5] ^= 0x80;
  CHECK(error_code_of([&] { decrypt_direct(s.sk, s.pp, s.catalog, 1, 2); }) ==
        Errc::kIntegrity);
  // other cells unaffected
  CHECK(decrypt_direct(s.sk, s.pp, s.catalog, 2, 2).payload ==
        service_blob(2, 2));
}

TEST_CASE("catalog and key files round-trip") {
  DeterministicRandom rng(108);
  const uint32_t m = 3, n = 2;
  SetupResult s = setup(m, n, service_grid(m, n), rng);

  TempFile cat_file("catalog");
  TempFile key_file("key");
  write_catalog_file(cat_file.path, s.pp, s.catalog);
  write_secret_key_file(key_file.path, s.sk);

  auto [pp2, cat2] = read_catalog_file(cat_file.path);
  SecretKey sk2 = read_secret_key_file(key_file.path);

  CHECK(pp2.m == m);
  CHECK(pp2.n == n);
  CHECK(cat2.m == m);
  CHECK(params_consistent(sk2, pp2));
  for (uint32_t j = 1; j <= n; ++j)
    for (uint32_t i = 1; i <= m; ++i) {
      CHECK(cat2.cell(i, j).A == s.catalog.cell(i, j).A);
      CHECK(cat2.cell(i, j).B == s.catalog.cell(i, j).B);
      CHECK(decrypt_direct(sk2, pp2, cat2, i, j).payload ==
            service_blob(i, j));
    }

  // the key file is written with owner-only permissions
  struct stat st{};
  REQUIRE(::stat(key_file.path.c_str(), &st) == 0);
  CHECK((st.st_mode & 0777) == 0600);
}

TEST_CASE("corrupt catalog files are rejected") {
  DeterministicRandom rng(109);
  SetupResult s = setup(2, 2, service_grid(2, 2), rng);
  TempFile cat_file("corrupt");
  write_catalog_file(cat_file.path, s.pp, s.catalog);
  std::vector<uint8_t> good = read_file(cat_file.path);

  auto reject = [&](std::vector<uint8_t> blob, Errc want) {
    TempFile f("mut");
    write_file(f.path, blob);
    CHECK(error_code_of([&] { read_catalog_file(f.path); }) == want);
  };

  {  // wrong magic
    std::vector<uint8_t> bad = good;
    bad[0] ^= 0xFF;
    reject(bad, Errc::kFormat);
  }
  {  // wrong version
    std::vector<uint8_t> bad = good;
    bad[9] ^= 0x01;  // low byte of the big-endian u16 version
    reject(bad, Errc::kFormat);
  }
  {  // wrong curve id
    std::vector<uint8_t> bad = good;
    bad[10] ^= 0x02;
    reject(bad, Errc::kFormat);
  }
  {  // zero rows
    std::vector<uint8_t> bad = good;
    bad[11] = bad[12] = bad[13] = bad[14] = 0;  // m := 0
    reject(bad, Errc::kFormat);
  }
  {  // truncation at every coarse prefix length
    for (size_t keep : {size_t{4}, size_t{18}, good.size() / 2,
                        good.size() - 1})
      reject(std::vector<uint8_t>(good.begin(),
                                  good.begin() + static_cast<long>(keep)),
             Errc::kFormat);
  }
  {  // trailing garbage
    std::vector<uint8_t> bad = good;
    bad.push_back(0x00);
    reject(bad, Errc::kFormat);
  }
  {  // flip one byte inside the first group element: point leaves the curve
    std::vector<uint8_t> bad = good;
    // 8 magic + 2 version + 1 curve + 4 m + 4 n = 19-byte header, then the
    // first tagged element: tag at 19, coordinate body from 20
    bad[25] ^= 0x01;
    reject(bad, Errc::kCanonicity);
  }

  // missing file
  CHECK(error_code_of([&] { read_catalog_file("/tmp/olbsq_no_such_file"); }) ==
        Errc::kIo);
}

TEST_CASE("distinct cells use distinct masks and mask reuse is visible") {
  DeterministicRandom rng(110);
  SetupResult s = setup(3, 3, service_grid(3, 3), rng);
  std::vector<TargetElement> masks;
  for (uint32_t j = 1; j <= 3; ++j)
    for (uint32_t i = 1; i <= 3; ++i)
      masks.push_back(decrypt_direct(s.sk, s.pp, s.catalog, i, j).mask);
  for (size_t a = 0; a < masks.size(); ++a)
    for (size_t b = a + 1; b < masks.size(); ++b) CHECK(masks[a] != masks[b]);
}
