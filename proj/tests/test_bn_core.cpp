// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Curve and pairing backend checks against frozen vectors produced by an
// independent reference implementation (different Miller-loop structure,
// affine coordinates, plain-integer arithmetic), plus algebraic properties
// of the field tower and both scalar-multiplication schedules.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>

#include "olbsq/bn/pairing.hpp"

using namespace olbsq;
using bn::Fp;
using bn::Fp12;
using bn::Fp2;
using bn::Fp6;
using bn::Fr;

#include "bn254_vectors.inc"

namespace {

bool fp_is(const Fp& f, const bn::consts::L4& want) {
  return f.to_canonical() == want;
}

Fp12 gt_from(const std::array<bn::consts::L4, 12>& c) {
  return Fp12(
      Fp6(Fp2(Fp::from_canonical(c[0]), Fp::from_canonical(c[1])),
          Fp2(Fp::from_canonical(c[2]), Fp::from_canonical(c[3])),
          Fp2(Fp::from_canonical(c[4]), Fp::from_canonical(c[5]))),
      Fp6(Fp2(Fp::from_canonical(c[6]), Fp::from_canonical(c[7])),
          Fp2(Fp::from_canonical(c[8]), Fp::from_canonical(c[9])),
          Fp2(Fp::from_canonical(c[10]), Fp::from_canonical(c[11]))));
}

std::span<const uint64_t> scalar_span(const uint64_t (&s)[2]) {
  return std::span<const uint64_t>(s, 2);
}

bn::Limbs wide_scalar(const uint64_t (&s)[2]) {
  return bn::Limbs{s[0], s[1], 0, 0};
}

}  // namespace

TEST_CASE("base field arithmetic identities") {
  Fp a = Fp::from_u64(0x1234567890abcdefULL);
  Fp b = Fp::from_u64(0xfedcba0987654321ULL);
  // stretch the values across the whole field via repeated squaring
  for (int i = 0; i < 17; ++i) {
    a = a.square() + b;
    b = b.square() - a;
  }
  CHECK(((a + b) - b) == a);
  CHECK((a * b) == (b * a));
  CHECK((a * (b + b)) == (a * b + a * b));
  CHECK((a * a.inverse()) == Fp::one());
  CHECK((a.square()) == (a * a));
  CHECK((-(-a)) == a);
  CHECK((a - a).is_zero());
  CHECK((-Fp::zero()).is_zero());

  std::array<uint8_t, 32> buf{};
  a.to_bytes(buf);
  Fp back;
  REQUIRE(Fp::from_bytes(buf, back));
  CHECK(back == a);
}

TEST_CASE("byte decoding rejects non-canonical representatives") {
  // the modulus itself, big-endian, must not decode
  std::array<uint8_t, 32> buf{};
  for (int i = 0; i < 4; ++i) {
    uint64_t w = bn::consts::FP_MOD[static_cast<size_t>(3 - i)];
    for (int j = 7; j >= 0; --j) {
      buf[static_cast<size_t>(8 * i + j)] = static_cast<uint8_t>(w);
      w >>= 8;
    }
  }
  Fp out;
  CHECK_FALSE(Fp::from_bytes(buf, out));
  // one below the modulus decodes
  buf[31] -= 1;
  CHECK(Fp::from_bytes(buf, out));
}

TEST_CASE("wide byte reduction folds MSB-first") {
  std::array<uint8_t, 3> small{0x01, 0x02, 0x03};
  CHECK(Fr::from_bytes_reduce(small) == Fr::from_u64(0x010203));
  // 2^256 mod r equals the Montgomery constant R1 (r < 2^256)
  std::array<uint8_t, 33> big{};
  big[0] = 1;
  CHECK(Fr::from_bytes_reduce(big) == Fr::from_canonical(bn::consts::FR_R1));
}

TEST_CASE("scalar field matches group order") {
  Fr x = Fr::from_u64(7);
  CHECK((x * x.inverse()) == Fr::one());
  // r-1 squared equals 1 (since (-1)^2 = 1)
  bn::Limbs rm1 = bn::consts::FR_MOD;
  rm1[0] -= 1;
  Fr minus1 = Fr::from_canonical(rm1);
  CHECK(minus1 == -Fr::one());
  CHECK(minus1.square() == Fr::one());
}

TEST_CASE("left-group small multiples match reference vectors") {
  bn::G1 g = bn::G1::generator();
  CHECK(bn::G1::affine_on_curve(g.to_affine()));

  bn::G1Affine d = g.dbl().to_affine();
  CHECK(fp_is(d.x, VEC_G1X2_X));
  CHECK(fp_is(d.y, VEC_G1X2_Y));

  uint64_t five[1] = {5};
  bn::G1Affine p5 = g.mul_vartime(std::span<const uint64_t>(five, 1)).to_affine();
  CHECK(fp_is(p5.x, VEC_G1X5_X));
  CHECK(fp_is(p5.y, VEC_G1X5_Y));

  bn::G1Affine pa = g.mul_vartime(scalar_span(VEC_SCALAR_A)).to_affine();
  CHECK(fp_is(pa.x, VEC_G1XA_X));
  CHECK(fp_is(pa.y, VEC_G1XA_Y));
}

TEST_CASE("right-group small multiples match reference vectors") {
  bn::G2 g = bn::G2::generator();
  CHECK(bn::G2::affine_on_curve(g.to_affine()));
  CHECK(g.in_subgroup());

  bn::G2Affine d = g.dbl().to_affine();
  CHECK(fp_is(d.x.re, VEC_G2X2_X_RE));
  CHECK(fp_is(d.x.im, VEC_G2X2_X_IM));
  CHECK(fp_is(d.y.re, VEC_G2X2_Y_RE));
  CHECK(fp_is(d.y.im, VEC_G2X2_Y_IM));

  uint64_t five[1] = {5};
  bn::G2Affine p5 = g.mul_vartime(std::span<const uint64_t>(five, 1)).to_affine();
  CHECK(fp_is(p5.x.re, VEC_G2X5_X_RE));
  CHECK(fp_is(p5.x.im, VEC_G2X5_X_IM));
  CHECK(fp_is(p5.y.re, VEC_G2X5_Y_RE));
  CHECK(fp_is(p5.y.im, VEC_G2X5_Y_IM));

  bn::G2Affine pb = g.mul_vartime(scalar_span(VEC_SCALAR_B)).to_affine();
  CHECK(fp_is(pb.x.re, VEC_G2XB_X_RE));
  CHECK(fp_is(pb.x.im, VEC_G2XB_X_IM));
  CHECK(fp_is(pb.y.re, VEC_G2XB_Y_RE));
  CHECK(fp_is(pb.y.im, VEC_G2XB_Y_IM));
}

TEST_CASE("fixed-schedule multiplication agrees with variable-time") {
  bn::Limbs k1 = wide_scalar(VEC_SCALAR_A);
  bn::Limbs k2{0xdeadbeefcafef00dULL, 0x0123456789abcdefULL,
               0xfedcba9876543210ULL, 0x0f0e0d0c0b0a0908ULL};
  for (const auto& k : {k1, k2}) {
    CHECK(bn::G1::generator().mul_ct(k) ==
          bn::G1::generator().mul_vartime(std::span<const uint64_t>(k)));
    CHECK(bn::G2::generator().mul_ct(k) ==
          bn::G2::generator().mul_vartime(std::span<const uint64_t>(k)));
  }
  // degenerate exponents
  bn::Limbs zero{};
  CHECK(bn::G1::generator().mul_ct(zero).is_identity());
  bn::Limbs one{1, 0, 0, 0};
  CHECK(bn::G1::generator().mul_ct(one) == bn::G1::generator());
}

TEST_CASE("complete addition handles exceptional inputs") {
  bn::G1 g = bn::G1::generator();
  CHECK(g.add(g) == g.dbl());
  CHECK(g.add(g.negate()).is_identity());
  CHECK(g.add(bn::G1::identity()) == g);
  CHECK(bn::G1::identity().add(g) == g);
  CHECK(bn::G1::identity().add(bn::G1::identity()).is_identity());

  bn::G2 h = bn::G2::generator();
  CHECK(h.add(h) == h.dbl());
  CHECK(h.add(h.negate()).is_identity());
  CHECK(h.add(bn::G2::identity()) == h);

  // associativity touch: (2g + 3g) == 5g
  uint64_t three[1] = {3}, five[1] = {5};
  CHECK(g.dbl().add(g.mul_vartime(std::span<const uint64_t>(three, 1))) ==
        g.mul_vartime(std::span<const uint64_t>(five, 1)));
}

TEST_CASE("pairing of the generators matches the reference vector") {
  Fp12 e = bn::pairing(bn::G1::generator().to_affine(),
                       bn::G2::generator().to_affine());
  CHECK(e == gt_from(VEC_E_GEN));
  CHECK(bn::in_gt(e));
}

TEST_CASE("pairing of small multiples matches the reference vector") {
  uint64_t five[1] = {5}, seven[1] = {7}, thirtyfive[1] = {35};
  bn::G1Affine p5 =
      bn::G1::generator().mul_vartime(std::span<const uint64_t>(five, 1)).to_affine();
  bn::G2Affine q7 =
      bn::G2::generator().mul_vartime(std::span<const uint64_t>(seven, 1)).to_affine();
  Fp12 e = bn::pairing(p5, q7);
  CHECK(e == gt_from(VEC_E_5_7));
  // bilinearity against the generator pairing
  Fp12 base = gt_from(VEC_E_GEN);
  CHECK(e == base.pow_vartime(std::span<const uint64_t>(thirtyfive, 1)));
}

TEST_CASE("pairing of full-width multiples matches the reference vector") {
  bn::G1Affine pa =
      bn::G1::generator().mul_vartime(scalar_span(VEC_SCALAR_A)).to_affine();
  bn::G2Affine qb =
      bn::G2::generator().mul_vartime(scalar_span(VEC_SCALAR_B)).to_affine();
  Fp12 e = bn::pairing(pa, qb);
  CHECK(e == gt_from(VEC_E_A_B));

  // e(aP, bQ) == e(P, Q)^(ab mod r)
  Fr ab = Fr::from_canonical(wide_scalar(VEC_SCALAR_A)) *
          Fr::from_canonical(wide_scalar(VEC_SCALAR_B));
  bn::Limbs abl = ab.to_canonical();
  CHECK(e == gt_from(VEC_E_GEN).pow_vartime(std::span<const uint64_t>(abl)));
}

TEST_CASE("pairing treats the identity as the neutral element") {
  Fp12 e1 = bn::pairing(bn::G1::identity().to_affine(),
                        bn::G2::generator().to_affine());
  CHECK(e1.is_one());
  Fp12 e2 = bn::pairing(bn::G1::generator().to_affine(),
                        bn::G2::identity().to_affine());
  CHECK(e2.is_one());
}

TEST_CASE("target-group membership check") {
  CHECK(bn::in_gt(Fp12::one()));
  CHECK_FALSE(bn::in_gt(Fp12::zero()));
  // a random-looking unit of the full multiplicative group is (with
  // overwhelming probability) not in the order-r subgroup
  Fp12 stray = Fp12::one();
  stray.c0.c0.re = Fp::from_u64(2);
  stray.c1.c2.im = Fp::from_u64(3);
  CHECK_FALSE(bn::in_gt(stray));
}

TEST_CASE("extension tower inverse and Frobenius structure") {
  Fp12 e = gt_from(VEC_E_A_B);
  CHECK((e * e.inverse()).is_one());
  CHECK((e.conjugate().conjugate()) == e);

  // frobenius2 equals raising to p twice
  std::span<const uint64_t> p_limbs(bn::consts::FP_MOD.data(), 4);
  CHECK(e.frobenius2() == e.pow_vartime(p_limbs).pow_vartime(p_limbs));

  // branchless exponentiation agrees with the public one
  bn::Limbs k{0x1111222233334444ULL, 0x5555666677778888ULL,
              0x9999aaaabbbbccccULL, 0x0000111122223333ULL};
  CHECK(e.pow_ct(k) == e.pow_vartime(std::span<const uint64_t>(k)));

  // pairing outputs satisfy the unitary property: conj(e) == e^-1
  CHECK(e.conjugate() == e.inverse());
}
