// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// BN254 (alt_bn128) curve constants.  All values are canonical integers in
// little-endian 64-bit limbs; Montgomery conversion happens at first use.
// Frozen from an independent reference computation; do not edit by hand.

#pragma once

#include <array>
#include <cstdint>

namespace olbsq::bn::consts {

using L4 = std::array<uint64_t, 4>;

// base field: p = 21888242871839275222246405745257275088696311157297823662689037894645226208583
inline constexpr L4 FP_MOD = {0x3c208c16d87cfd47ULL, 0x97816a916871ca8dULL, 0xb85045b68181585dULL, 0x30644e72e131a029ULL};
inline constexpr L4 FP_R1 = {0xd35d438dc58f0d9dULL, 0x0a78eb28f5c70b3dULL, 0x666ea36f7879462cULL, 0x0e0a77c19a07df2fULL};
inline constexpr L4 FP_R2 = {0xf32cfc5b538afa89ULL, 0xb5e71911d44501fbULL, 0x47ab1eff0a417ff6ULL, 0x06d89f71cab8351fULL};
inline constexpr uint64_t FP_INV = 0x87d20782e4866389ULL;

// scalar field: r = 21888242871839275222246405745257275088548364400416034343698204186575808495617
inline constexpr L4 FR_MOD = {0x43e1f593f0000001ULL, 0x2833e84879b97091ULL, 0xb85045b68181585dULL, 0x30644e72e131a029ULL};
inline constexpr L4 FR_R1 = {0xac96341c4ffffffbULL, 0x36fc76959f60cd29ULL, 0x666ea36f7879462eULL, 0x0e0a77c19a07df2fULL};
inline constexpr L4 FR_R2 = {0x1bb8e645ae216da7ULL, 0x53fe3ab1e35c59e3ULL, 0x8c49833d53bb8085ULL, 0x0216d0b17f4e44a5ULL};
inline constexpr uint64_t FR_INV = 0xc2e1f593efffffffULL;

// optimal-ate Miller loop length 6u+2 (65 bits, MSB first iteration order)
inline constexpr uint64_t ATE_LO = 0x9d797039be763ba8ULL;
inline constexpr uint64_t ATE_HI = 0x1ULL;
inline constexpr int ATE_BITS = 65;

// hard part of the final exponentiation: (p^4 - p^2 + 1) / r
inline constexpr std::array<uint64_t, 12> FE_HARD = {0xe81bb482ccdf42b1ULL, 0x5abf5cc4f49c36d4ULL, 0xf1154e7e1da014fdULL, 0xdcc7b44c87cdbacfULL, 0xaaa441e3954bcf8aULL, 0x6b887d56d5095f23ULL, 0x79581e16f3fd90c6ULL, 0x3b1b1355d189227dULL, 0x4e529a5861876f6bULL, 0x6c0eb522d5b12278ULL, 0x331ec15183177fafULL, 0x01baaa710b0759adULL};

// twist curve coefficient b' = 3/(9+i)
inline constexpr L4 G2_B_RE = {0x3267e6dc24a138e5ULL, 0xb5b4c5e559dbefa3ULL, 0x81be18991be06ac3ULL, 0x2b149d40ceb8aaaeULL};
inline constexpr L4 G2_B_IM = {0xe4a2bd0685c315d2ULL, 0xa74fa084e52d1852ULL, 0xcd2cafadeed8fdf4ULL, 0x009713b03af0fed4ULL};

// subgroup generators
inline constexpr L4 G2_GEN_X_RE = {0x46debd5cd992f6edULL, 0x674322d4f75edaddULL, 0x426a00665e5c4479ULL, 0x1800deef121f1e76ULL};
inline constexpr L4 G2_GEN_X_IM = {0x97e485b7aef312c2ULL, 0xf1aa493335a9e712ULL, 0x7260bfb731fb5d25ULL, 0x198e9393920d483aULL};
inline constexpr L4 G2_GEN_Y_RE = {0x4ce6cc0166fa7daaULL, 0xe3d1e7690c43d37bULL, 0x4aab71808dcb408fULL, 0x12c85ea5db8c6debULL};
inline constexpr L4 G2_GEN_Y_IM = {0x55acdadcd122975bULL, 0xbc4b313370b38ef3ULL, 0xec9e99ad690c3395ULL, 0x090689d0585ff075ULL};

// twist endomorphism psi(x,y) = (conj(x)*PSI_CX, conj(y)*PSI_CY) (= Frobenius
// under the untwist embedding); psi^2(x,y) = (x*PSI2_DX, y*PSI2_DY)
inline constexpr L4 PSI_CX_RE = {0x99e39557176f553dULL, 0xb78cc310c2c3330cULL, 0x4c0bec3cf559b143ULL, 0x2fb347984f7911f7ULL};
inline constexpr L4 PSI_CX_IM = {0x1665d51c640fcba2ULL, 0x32ae2a1d0b7c9dceULL, 0x4ba4cc8bd75a0794ULL, 0x16c9e55061ebae20ULL};
inline constexpr L4 PSI_CY_RE = {0xdc54014671a0135aULL, 0xdbaae0eda9c95998ULL, 0xdc5ec698b6e2f9b9ULL, 0x063cf305489af5dcULL};
inline constexpr L4 PSI_CY_IM = {0x82d37f632623b0e3ULL, 0x21807dc98fa25bd2ULL, 0x0704b5a7ec796f2bULL, 0x07c03cbcac41049aULL};
inline constexpr L4 PSI2_DX = {0xe4bd44e5607cfd48ULL, 0xc28f069fbb966e3dULL, 0x5e6dd9e7e0acccb0ULL, 0x30644e72e131a029ULL};
inline constexpr L4 PSI2_DY = {0x3c208c16d87cfd46ULL, 0x97816a916871ca8dULL, 0xb85045b68181585dULL, 0x30644e72e131a029ULL};

// Frobenius^2 tower coefficients: gamma2[k] = (9+i)^(k(p^2-1)/6), all in Fp
inline constexpr L4 GAMMA2_1 = {0xe4bd44e5607cfd49ULL, 0xc28f069fbb966e3dULL, 0x5e6dd9e7e0acccb0ULL, 0x30644e72e131a029ULL};
inline constexpr L4 GAMMA2_2 = {0xe4bd44e5607cfd48ULL, 0xc28f069fbb966e3dULL, 0x5e6dd9e7e0acccb0ULL, 0x30644e72e131a029ULL};
inline constexpr L4 GAMMA2_3 = {0x3c208c16d87cfd46ULL, 0x97816a916871ca8dULL, 0xb85045b68181585dULL, 0x30644e72e131a029ULL};
inline constexpr L4 GAMMA2_4 = {0x5763473177fffffeULL, 0xd4f263f1acdb5c4fULL, 0x59e26bcea0d48bacULL, 0x0000000000000000ULL};
inline constexpr L4 GAMMA2_5 = {0x5763473177ffffffULL, 0xd4f263f1acdb5c4fULL, 0x59e26bcea0d48bacULL, 0x0000000000000000ULL};

}  // namespace olbsq::bn::consts
