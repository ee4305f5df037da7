// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Region tracing, protocol measurement, affine fitting and the cost-model
// comparison report.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "olbsq/bench.hpp"
#include "olbsq/catalog.hpp"
#include "olbsq/errors.hpp"
#include "olbsq/rng.hpp"

using namespace olbsq;

namespace {

// full sweep is expensive; measure once and share across cases
const std::vector<SweepPoint>& sweep() {
  static const std::vector<SweepPoint> s = [] {
    DeterministicRandom rng(777);
    return run_sweep(rng);
  }();
  return s;
}

std::vector<std::vector<uint8_t>> empty_services(uint32_t m, uint32_t n) {
  return std::vector<std::vector<uint8_t>>(static_cast<size_t>(m) * n);
}

}  // namespace

TEST_CASE("trace measures a region exactly and resets between calls") {
  DeterministicRandom rng(101);
  auto svcs = empty_services(2, 2);

  OpCounts first = trace(Region::Setup, [&] { setup(2, 2, svcs, rng); });
  CHECK(first.exp_source == 4 + 3 * 2 + 3 * 2 + 4 * 2 * 2);
  CHECK(first.exp_target == 2 + 2);
  CHECK(first.pairings == 1 + 2 * 2);
  CHECK(first.hashes == 0);

  OpCounts second = trace(Region::Setup, [&] { setup(2, 2, svcs, rng); });
  CHECK(second.exp_source == first.exp_source);
  CHECK(second.exp_target == first.exp_target);
  CHECK(second.pairings == first.pairings);
  CHECK(second.hashes == first.hashes);

  OpCounts idle = trace(Region::UserQuery, [] {});
  CHECK(idle.exp_source == 0);
  CHECK(idle.exp_target == 0);
  CHECK(idle.pairings == 0);
  CHECK(idle.hashes == 0);
}

TEST_CASE("nested traces are a usage error and leave tracing usable") {
  bool threw = false;
  try {
    trace(Region::Setup, [] { trace(Region::Provider, [] {}); });
  } catch (const Error& e) {
    threw = true;
    CHECK(e.code() == Errc::kUsage);
  }
  CHECK(threw);
  CHECK_FALSE(instrument::trace_active());

  // a throwing thunk must also close its trace
  try {
    trace(Region::Setup, [] { fail(Errc::kIo, "boom"); });
  } catch (const Error&) {
  }
  CHECK_FALSE(instrument::trace_active());

  DeterministicRandom rng(102);
  auto svcs = empty_services(2, 2);
  OpCounts again = trace(Region::Setup, [&] { setup(2, 2, svcs, rng); });
  CHECK(again.pairings == 5);
}

TEST_CASE("measure_protocol tallies every region at a known point") {
  DeterministicRandom rng(103);
  SweepPoint pt = measure_protocol(4, 4, 2, 2, rng);
  const uint64_t kl = 4;

  CHECK(pt.setup.exp_source == 4 + 12 + 12 + 64);
  CHECK(pt.setup.exp_target == 8);
  CHECK(pt.setup.pairings == 17);
  CHECK(pt.setup.hashes == 0);

  CHECK(pt.user_query.exp_source == 16);
  CHECK(pt.user_query.exp_target == 17);
  CHECK(pt.user_query.pairings == 15);
  CHECK(pt.user_query.hashes == 13);

  CHECK(pt.user_retrieve.exp_source == 3 * kl);
  CHECK(pt.user_retrieve.exp_target == 8 * kl + 1);
  CHECK(pt.user_retrieve.pairings == 6 * kl + 2);
  CHECK(pt.user_retrieve.hashes == 2 * kl);

  CHECK(pt.provider.exp_source == 9 + 2 + 2 + 3 * kl);
  CHECK(pt.provider.exp_target == 32 + 2 * kl);
  CHECK(pt.provider.pairings == 26 + 4 * kl);
  CHECK(pt.provider.hashes == 13 + 2 * kl);

  CHECK(pt.query_message.source == 12);
  CHECK(pt.query_message.target == 16);
  CHECK(pt.query_message.scalars == 36);
  CHECK(pt.query_message.bytes == 8555);

  CHECK(pt.reply_message.source == 3 * kl);
  CHECK(pt.reply_message.target == 4 * kl + 2);
  CHECK(pt.reply_message.scalars == 4 * kl);
  CHECK(pt.reply_message.bytes > 0);

  CHECK(pt.published.source == 9 + 3 * 4 + 3 * 4 + 16);
  CHECK(pt.published.target == 1 + 4 + 4 + 16);
  CHECK(pt.published.scalars == 0);
  CHECK(pt.published.bytes > 0);

  CHECK(pt.setup.bytes_sent_provider == pt.published.bytes);
  CHECK(pt.user_query.bytes_sent_user == pt.query_message.bytes);
  CHECK(pt.provider.bytes_sent_provider == 582 + pt.reply_message.bytes);
}

TEST_CASE("measure_protocol rejects rectangles no in-range query can have") {
  DeterministicRandom rng(104);
  for (auto bad : {std::pair<uint32_t, uint32_t>{0, 1},
                   {1, 0},
                   {4, 1},
                   {1, 4},
                   {5, 1}}) {
    bool threw = false;
    try {
      measure_protocol(4, 4, bad.first, bad.second, rng);
    } catch (const Error& e) {
      threw = true;
      CHECK(e.code() == Errc::kArgument);
    }
    CHECK(threw);
  }
}

TEST_CASE("grid fits recover the setup cost forms exactly") {
  auto P = fit_grid(sweep(), [](const SweepPoint& p) { return p.setup.pairings; });
  CHECK(P.exact);
  CHECK(P.c0 == 1);
  CHECK(P.ca == 0);
  CHECK(P.cb == 0);
  CHECK(P.cab == 1);

  auto E = fit_grid(sweep(),
                    [](const SweepPoint& p) { return p.setup.exp_source; });
  CHECK(E.exact);
  CHECK(E.c0 == 4);
  CHECK(E.ca == 3);
  CHECK(E.cb == 3);
  CHECK(E.cab == 4);

  auto Et = fit_grid(sweep(),
                     [](const SweepPoint& p) { return p.setup.exp_target; });
  CHECK(Et.exact);
  CHECK(Et.c0 == 0);
  CHECK(Et.ca == 1);
  CHECK(Et.cb == 1);
  CHECK(Et.cab == 0);

  auto pub = fit_grid(sweep(),
                      [](const SweepPoint& p) { return p.published.target; });
  CHECK(pub.exact);
  CHECK(pub.c0 == 1);
  CHECK(pub.ca == 1);
  CHECK(pub.cb == 1);
  CHECK(pub.cab == 1);
}

TEST_CASE("rectangle fits recover the transfer cost forms exactly") {
  auto H = fit_rectangle(
      sweep(), [](const SweepPoint& p) { return p.user_retrieve.hashes; });
  CHECK(H.exact);
  CHECK(H.c0 == 0);
  CHECK(H.ca == 0);
  CHECK(H.cb == 0);
  CHECK(H.cab == 2);

  // retrieval pairings measure 2 + 6lk; the published model says
  // 2l + 2k + 2lk — the fit must still be exact so the report can show both
  auto P = fit_rectangle(
      sweep(), [](const SweepPoint& p) { return p.user_retrieve.pairings; });
  CHECK(P.exact);
  CHECK(P.c0 == 2);
  CHECK(P.ca == 0);
  CHECK(P.cb == 0);
  CHECK(P.cab == 6);

  auto provH = fit_rectangle(
      sweep(), [](const SweepPoint& p) { return p.provider.hashes; });
  CHECK(provH.exact);
  CHECK(provH.c0 == 13);
  CHECK(provH.cab == 2);

  auto constant = fit_rectangle(
      sweep(), [](const SweepPoint& p) { return p.user_query.exp_source; });
  CHECK(constant.exact);
  CHECK(constant.c0 == 16);
  CHECK(constant.ca == 0);
  CHECK(constant.cb == 0);
  CHECK(constant.cab == 0);

  auto replyScalars = fit_rectangle(
      sweep(), [](const SweepPoint& p) { return p.reply_message.scalars; });
  CHECK(replyScalars.exact);
  CHECK(replyScalars.c0 == 0);
  CHECK(replyScalars.cab == 4);
}

TEST_CASE("query cost and size are constant across the whole sweep") {
  const auto& first = sweep().front();
  for (const auto& pt : sweep()) {
    CHECK(pt.user_query.exp_source == first.user_query.exp_source);
    CHECK(pt.user_query.exp_target == first.user_query.exp_target);
    CHECK(pt.user_query.pairings == first.user_query.pairings);
    CHECK(pt.user_query.hashes == first.user_query.hashes);
    CHECK(pt.query_message.bytes == first.query_message.bytes);
    CHECK(pt.query_message.source == 12);
    CHECK(pt.query_message.target == 16);
    CHECK(pt.query_message.scalars == 36);
  }
}

TEST_CASE("comparison report flags matches, shows differences, emits keyvals") {
  DeterministicRandom rng(105);
  std::vector<SweepPoint> pts = sweep();
  pts.push_back(measure_protocol(8, 8, 2, 3, rng));
  std::string report = compare_tables(pts);

  // the headline example: an 8x8 grid performs 65 setup pairings
  CHECK(report.find("pairings(setup)=65") != std::string::npos);

  // exact agreements are flagged
  CHECK(report.find("MATCH") != std::string::npos);
  // the retrieval pairing count differs from the published form and the
  // report must say so rather than hide it
  CHECK(report.find("DIFFERS") != std::string::npos);
  CHECK(report.find("2 + 6lk") != std::string::npos);
  CHECK(report.find("2l + 2k + 2lk") != std::string::npos);

  // closed forms for the grid-sized rows
  CHECK(report.find("4 + 3m + 3n + 4mn") != std::string::npos);
  CHECK(report.find("1 + mn") != std::string::npos);

  // byte-level rows: constant query, reply affine in lk with positive slope
  CHECK(report.find("affine in lk, slope > 0") != std::string::npos);
  CHECK(report.find("constant") != std::string::npos);

  // key=value block for the last configuration
  CHECK(report.find("m=8 n=8 l=2 k=3") != std::string::npos);
  CHECK(report.find("exp_source(user-query)=16") != std::string::npos);
  CHECK(report.find("pairings(user-query)=15") != std::string::npos);
  CHECK(report.find("hashes(provider)=25") != std::string::npos);
  CHECK(report.find("bytes(query-message)=8555") != std::string::npos);
  CHECK(report.find("source_elements(reply-message)=18") != std::string::npos);

  bool threw = false;
  try {
    compare_tables({});
  } catch (const Error& e) {
    threw = true;
    CHECK(e.code() == Errc::kArgument);
  }
  CHECK(threw);
}
