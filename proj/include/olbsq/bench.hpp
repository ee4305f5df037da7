// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Operation counting and cost reporting.  The protocol's published cost
// model gives, per phase, closed forms in the grid size (m, n) and the
// rectangle size (l, k) for source-group exponentiations, target-group
// exponentiations, pairings and challenge hashes, plus wire-element counts
// per message.  This module traces the real implementation, fits exact
// affine forms to the measured counters over a sweep, and reports measured
// vs expected — flagging exact matches and printing the measured closed
// form wherever it differs (differences are reported, never hidden).
//
// Counting convention: logical protocol operations.  A dual-slot source
// exponentiation counts once logically (the physical tally is kept too);
// multi-exponentiations count as their constituent single exponentiations.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "olbsq/group.hpp"
#include "olbsq/rng.hpp"

namespace olbsq {

// protocol phase a trace is attributed to
enum class Region { Setup, UserQuery, UserRetrieve, Provider };
const char* region_name(Region region);

// Runs the thunk with the operation counters armed and returns the exact
// tally.  Counters start from zero each call.  Nested traces (from the
// thunk, or from anywhere else on this thread) throw a usage error.
OpCounts trace(Region region, const std::function<void()>& thunk);

// logical group elements inside one serialized protocol message
struct WireElements {
  uint64_t source = 0;   // elements of the source groups (either slot)
  uint64_t target = 0;   // elements of the target group
  uint64_t scalars = 0;  // field scalars
  uint64_t bytes = 0;    // exact serialized size, tags included
};

// one measured protocol run
struct SweepPoint {
  uint32_t m = 0, n = 0, l = 0, k = 0;
  OpCounts setup, user_query, user_retrieve, provider;
  WireElements published;         // parameters + encrypted catalog
  WireElements query_message;     // commitments + query proof
  WireElements reply_message;     // key bundle + key-honesty proof
};

// Runs the full protocol (setup, handshake, query, transfer, recovery) on
// an m x n grid with an (l, k) rectangle anchored at (1, 1), tracing every
// region.  Throws kArgument unless l < m and k < n.
SweepPoint measure_protocol(uint32_t m, uint32_t n, uint32_t l, uint32_t k,
                            RandomSource& rng);

// the standard sweep: fit grids over (m, n) and (l, k) plus asymmetric
// verification points
std::vector<SweepPoint> run_sweep(RandomSource& rng);

// f(a, b) = c0 + ca*a + cb*b + cab*a*b with integer coefficients
struct AffineFit {
  int64_t c0 = 0, ca = 0, cb = 0, cab = 0;
  bool exact = false;  // interpolation succeeded and residual is zero
                       // on every sweep point
};

// Fits counter = f(l, k) (or f(m, n) for setup rows) over the sweep.
// `getter` extracts the counter from a point.
AffineFit fit_rectangle(const std::vector<SweepPoint>& sweep,
                        const std::function<uint64_t(const SweepPoint&)>& getter);
AffineFit fit_grid(const std::vector<SweepPoint>& sweep,
                   const std::function<uint64_t(const SweepPoint&)>& getter);

// Renders the full comparison: per-region computation rows and per-message
// communication rows, measured fit vs expected form, then a key=value block
// for the last sweep point (the caller's highlighted configuration).
std::string compare_tables(const std::vector<SweepPoint>& sweep);

}  // namespace olbsq
