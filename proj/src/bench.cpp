// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0

#include "olbsq/bench.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "olbsq/catalog.hpp"
#include "olbsq/errors.hpp"
#include "olbsq/serialize.hpp"
#include "olbsq/transfer.hpp"
#include "olbsq/zkp.hpp"

namespace olbsq {
namespace {

OpCounts add(const OpCounts& a, const OpCounts& b) {
  OpCounts s;
  s.exp_source = a.exp_source + b.exp_source;
  s.exp_source_physical = a.exp_source_physical + b.exp_source_physical;
  s.exp_target = a.exp_target + b.exp_target;
  s.pairings = a.pairings + b.pairings;
  s.hashes = a.hashes + b.hashes;
  s.bytes_sent_user = a.bytes_sent_user + b.bytes_sent_user;
  s.bytes_sent_provider = a.bytes_sent_provider + b.bytes_sent_provider;
  return s;
}

template <typename T>
uint64_t wire_size(const T& value) {
  ByteWriter w;
  value.serialize(w);
  return w.size();
}

WireElements count_published(const PublicParams& pp,
                             const EncryptedCatalog& cat) {
  WireElements e;
  // generators g_frak, g1, g2, h1, h2; verification points W1, W1', W2, W2';
  // column/row handles Gamma; per-column and per-row key triples; cell keys A
  e.source = 5 + 4 + pp.Gamma1.size() + pp.Gamma2.size() + 2 * pp.C.size() +
             2 * pp.D.size() + cat.cells.size();
  // masking base H; per-column and per-row pairing values; cell masks B
  e.target = 1 + pp.C.size() + pp.D.size() + cat.cells.size();
  e.scalars = 0;
  ByteWriter w;
  pp.serialize(w);
  cat.serialize(w);
  e.bytes = w.size();
  return e;
}

WireElements count_query(const QueryCommitments& omega, const ProofU& proof) {
  WireElements e;
  // E1, E2, F1, J1, E1', E2' plus F2, J2, I1..I4
  e.source = 6 + 6;
  e.target = proof.Theta.size();
  e.scalars = proof.c.size() + proof.z.size();
  e.bytes = wire_size(omega) + wire_size(proof);
  return e;
}

WireElements count_reply(const KeyBundle& keys, const ProofSP2& proof) {
  WireElements e;
  // cell keys K, per-cell Upsilon1 and per-cell blinded point
  e.source = keys.K.size() + 2 * proof.cells.size();
  // masked pairings L and echoed base, per-cell Upsilon2/Upsilon3/L',
  // shared blinded base
  e.target = keys.L.size() + 1 + 3 * proof.cells.size() + 1;
  e.scalars = 4 * proof.cells.size();
  e.bytes = wire_size(keys) + wire_size(proof);
  return e;
}

// exact bilinear interpolation over the four corners (a0|a1, b0|b1),
// then a zero-residual check against every sweep point
AffineFit fit_over(const std::vector<SweepPoint>& sweep,
                   const std::function<uint64_t(const SweepPoint&)>& getter,
                   const std::function<uint32_t(const SweepPoint&)>& dim_a,
                   const std::function<uint32_t(const SweepPoint&)>& dim_b,
                   uint32_t a0, uint32_t a1, uint32_t b0, uint32_t b1) {
  AffineFit fit;
  auto corner = [&](uint32_t a, uint32_t b) -> std::optional<int64_t> {
    for (const auto& pt : sweep) {
      if (dim_a(pt) == a && dim_b(pt) == b) {
        return static_cast<int64_t>(getter(pt));
      }
    }
    return std::nullopt;
  };
  auto f00 = corner(a0, b0), f01 = corner(a0, b1);
  auto f10 = corner(a1, b0), f11 = corner(a1, b1);
  if (!f00 || !f01 || !f10 || !f11) return fit;  // corners missing: no fit

  const int64_t da = static_cast<int64_t>(a1) - a0;
  const int64_t db = static_cast<int64_t>(b1) - b0;
  bool divisible = true;
  auto div_exact = [&](int64_t num, int64_t den) {
    if (num % den != 0) divisible = false;
    return num / den;
  };
  fit.cab = div_exact((*f11 - *f10) - (*f01 - *f00), da * db);
  fit.cb = div_exact(*f01 - *f00, db) - fit.cab * a0;
  fit.ca = div_exact(*f10 - *f00, da) - fit.cab * b0;
  fit.c0 = *f00 - fit.ca * a0 - fit.cb * b0 - fit.cab * a0 * b0;

  fit.exact = divisible;
  for (const auto& pt : sweep) {
    const int64_t a = dim_a(pt), b = dim_b(pt);
    if (fit.c0 + fit.ca * a + fit.cb * b + fit.cab * a * b !=
        static_cast<int64_t>(getter(pt))) {
      fit.exact = false;
    }
  }
  return fit;
}

std::string format_affine(const AffineFit& fit, const char* va,
                          const char* vb) {
  std::string out;
  auto term = [&](int64_t coeff, const std::string& sym) {
    if (coeff == 0) return;
    if (!out.empty()) out += coeff > 0 ? " + " : " - ";
    else if (coeff < 0) out += "-";
    const int64_t mag = coeff < 0 ? -coeff : coeff;
    if (mag != 1 || sym.empty()) out += std::to_string(mag);
    out += sym;
  };
  term(fit.c0, "");
  term(fit.ca, va);
  term(fit.cb, vb);
  term(fit.cab, std::string(va) + vb);
  if (out.empty()) out = "0";
  return out;
}

bool same_fit(const AffineFit& a, const AffineFit& b) {
  return a.c0 == b.c0 && a.ca == b.ca && a.cb == b.cb && a.cab == b.cab;
}

std::string pad(std::string s, size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

const char* region_name(Region region) {
  switch (region) {
    case Region::Setup: return "setup";
    case Region::UserQuery: return "user-query";
    case Region::UserRetrieve: return "user-retrieve";
    case Region::Provider: return "provider";
  }
  return "unknown";
}

OpCounts trace(Region region, const std::function<void()>& thunk) {
  (void)region;  // attribution is the caller's concern; counting is ours
  instrument::begin_trace();
  try {
    thunk();
  } catch (...) {
    instrument::end_trace();
    throw;
  }
  return instrument::end_trace();
}

SweepPoint measure_protocol(uint32_t m, uint32_t n, uint32_t l, uint32_t k,
                            RandomSource& rng) {
  if (l < 1 || k < 1 || l >= m || k >= n) {
    fail(Errc::kArgument,
         "measure_protocol: need 1 <= l < m and 1 <= k < n");
  }
  SweepPoint pt;
  pt.m = m;
  pt.n = n;
  pt.l = l;
  pt.k = k;

  std::vector<std::vector<uint8_t>> services(static_cast<size_t>(m) * n);
  std::optional<SetupResult> s;
  pt.setup = trace(Region::Setup, [&] { s = setup(m, n, services, rng); });

  std::optional<ProofSP1> sp1;
  OpCounts provider_announce = trace(
      Region::Provider, [&] { sp1 = prove_sp1(s->sk.h_frak, s->pp, rng); });

  std::optional<BuiltQuery> q;
  pt.user_query = trace(Region::UserQuery, [&] {
    if (!verify_sp1(s->pp, *sp1)) {
      fail(Errc::kProtocol, "setup-honesty proof rejected");
    }
    q = build_query(s->pp, 1, 1, l, k, rng);
  });

  std::optional<KeyBundle> keys;
  std::optional<ProofSP2> sp2;
  OpCounts provider_reply = trace(Region::Provider, [&] {
    if (!verify_query(s->pp, q->omega, q->proof)) {
      fail(Errc::kProtocol, "query proof rejected");
    }
    keys = derive_keys(s->sk, s->pp, q->omega);
    sp2 = prove_sp2(s->sk, s->pp, q->omega, *keys, rng);
  });
  pt.provider = add(provider_announce, provider_reply);

  pt.user_retrieve = trace(Region::UserRetrieve, [&] {
    (void)recover_services(q->state, s->pp, *keys, *sp2, s->catalog);
  });

  pt.published = count_published(s->pp, s->catalog);
  pt.query_message = count_query(q->omega, q->proof);
  pt.reply_message = count_reply(*keys, *sp2);

  pt.setup.bytes_sent_provider = pt.published.bytes;
  pt.user_query.bytes_sent_user = pt.query_message.bytes;
  pt.provider.bytes_sent_provider = wire_size(*sp1) + pt.reply_message.bytes;
  return pt;
}

std::vector<SweepPoint> run_sweep(RandomSource& rng) {
  // (m, n) corners {2,4}^2 for the grid fits, (l, k) corners {1,3}^2 for
  // the rectangle fits, plus an asymmetric point that keeps every fit honest
  static const uint32_t kPoints[][4] = {
      {2, 2, 1, 1}, {2, 4, 1, 1}, {4, 2, 1, 1}, {4, 4, 1, 1},
      {4, 4, 1, 3}, {4, 4, 3, 1}, {4, 4, 3, 3}, {5, 6, 2, 3},
  };
  std::vector<SweepPoint> sweep;
  for (const auto& p : kPoints) {
    sweep.push_back(measure_protocol(p[0], p[1], p[2], p[3], rng));
  }
  return sweep;
}

AffineFit fit_rectangle(
    const std::vector<SweepPoint>& sweep,
    const std::function<uint64_t(const SweepPoint&)>& getter) {
  return fit_over(
      sweep, getter, [](const SweepPoint& p) { return p.l; },
      [](const SweepPoint& p) { return p.k; }, 1, 3, 1, 3);
}

AffineFit fit_grid(const std::vector<SweepPoint>& sweep,
                   const std::function<uint64_t(const SweepPoint&)>& getter) {
  return fit_over(
      sweep, getter, [](const SweepPoint& p) { return p.m; },
      [](const SweepPoint& p) { return p.n; }, 2, 4, 2, 4);
}

namespace {

struct Row {
  std::string group;    // table section
  std::string counter;  // counter name
  std::string measured;
  std::string expected;
  std::string verdict;
};

// a counter that the cost model says is constant in every dimension
Row constant_row(const std::vector<SweepPoint>& sweep, const char* group,
                 const char* counter, uint64_t expected,
                 const std::function<uint64_t(const SweepPoint&)>& getter) {
  Row row{group, counter, "", std::to_string(expected), ""};
  uint64_t v = getter(sweep.front());
  bool constant = true;
  for (const auto& pt : sweep) constant = constant && getter(pt) == v;
  if (!constant) {
    row.measured = "varies across sweep";
    row.verdict = "DIFFERS (not constant)";
    return row;
  }
  row.measured = std::to_string(v);
  row.verdict = v == expected
                    ? "MATCH"
                    : "DIFFERS (measured " + row.measured + ")";
  return row;
}

Row fitted_row(const std::vector<SweepPoint>& sweep, bool over_grid,
               const char* group, const char* counter, const AffineFit& expect,
               const std::function<uint64_t(const SweepPoint&)>& getter) {
  const char* va = over_grid ? "m" : "l";
  const char* vb = over_grid ? "n" : "k";
  AffineFit fit =
      over_grid ? fit_grid(sweep, getter) : fit_rectangle(sweep, getter);
  Row row{group, counter, format_affine(fit, va, vb),
          format_affine(expect, va, vb), ""};
  if (!fit.exact) {
    row.measured += " (inexact)";
    row.verdict = "DIFFERS (no exact affine fit)";
  } else if (same_fit(fit, expect)) {
    row.verdict = "MATCH";
  } else {
    row.verdict = "DIFFERS (measured " + row.measured + ")";
  }
  return row;
}

void emit_rows(std::string& out, const char* label, std::vector<Row> rows) {
  rows.insert(rows.begin(), Row{label, "counter", "measured", "expected",
                                "verdict"});
  size_t wg = 0, wc = 0, wm = 0, we = 0;
  for (const auto& r : rows) {
    wg = std::max(wg, r.group.size());
    wc = std::max(wc, r.counter.size());
    wm = std::max(wm, r.measured.size());
    we = std::max(we, r.expected.size());
  }
  for (const auto& r : rows) {
    out += "  " + pad(r.group, wg + 2) + pad(r.counter, wc + 2) +
           pad(r.measured, wm + 2) + pad(r.expected, we + 2) + r.verdict +
           "\n";
  }
}

void emit_keyvals(std::string& out, const SweepPoint& pt) {
  char buf[160];
  auto kv = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    out += buf;
    out += "\n";
  };
  kv("m=%" PRIu32 " n=%" PRIu32 " l=%" PRIu32 " k=%" PRIu32, pt.m, pt.n, pt.l,
     pt.k);
  struct Named {
    const char* name;
    const OpCounts* c;
  } regions[] = {{"setup", &pt.setup},
                 {"user-query", &pt.user_query},
                 {"user-retrieve", &pt.user_retrieve},
                 {"provider", &pt.provider}};
  for (const auto& r : regions) {
    kv("exp_source(%s)=%" PRIu64, r.name, r.c->exp_source);
    kv("exp_target(%s)=%" PRIu64, r.name, r.c->exp_target);
    kv("pairings(%s)=%" PRIu64, r.name, r.c->pairings);
    kv("hashes(%s)=%" PRIu64, r.name, r.c->hashes);
  }
  struct NamedMsg {
    const char* name;
    const WireElements* e;
  } messages[] = {{"published", &pt.published},
                  {"query-message", &pt.query_message},
                  {"reply-message", &pt.reply_message}};
  for (const auto& msg : messages) {
    kv("source_elements(%s)=%" PRIu64, msg.name, msg.e->source);
    kv("target_elements(%s)=%" PRIu64, msg.name, msg.e->target);
    kv("scalars(%s)=%" PRIu64, msg.name, msg.e->scalars);
    kv("bytes(%s)=%" PRIu64, msg.name, msg.e->bytes);
  }
}

}  // namespace

std::string compare_tables(const std::vector<SweepPoint>& sweep) {
  if (sweep.empty()) fail(Errc::kArgument, "compare_tables: empty sweep");

  std::string out = "cost model comparison over sweep:";
  for (const auto& pt : sweep) {
    char buf[48];
    std::snprintf(buf, sizeof buf, " (%u,%u,%u,%u)", pt.m, pt.n, pt.l, pt.k);
    out += buf;
  }
  out += "\n\ncomputation counts (exponentiations, pairings, hashes)\n";

  using Get = std::function<uint64_t(const SweepPoint&)>;
  auto g = [](OpCounts SweepPoint::* region, uint64_t OpCounts::* field) {
    return Get([region, field](const SweepPoint& p) { return p.*region.*field; });
  };

  std::vector<Row> comp;
  // setup: closed forms in the grid size
  comp.push_back(fitted_row(sweep, true, "setup", "exp_source", {4, 3, 3, 4, true},
                            g(&SweepPoint::setup, &OpCounts::exp_source)));
  comp.push_back(fitted_row(sweep, true, "setup", "exp_target", {0, 1, 1, 0, true},
                            g(&SweepPoint::setup, &OpCounts::exp_target)));
  comp.push_back(fitted_row(sweep, true, "setup", "pairings", {1, 0, 0, 1, true},
                            g(&SweepPoint::setup, &OpCounts::pairings)));
  comp.push_back(fitted_row(sweep, true, "setup", "hashes", {0, 0, 0, 0, true},
                            g(&SweepPoint::setup, &OpCounts::hashes)));
  // user query: constant whatever the grid or rectangle
  comp.push_back(constant_row(sweep, "user-query", "exp_source", 16,
                              g(&SweepPoint::user_query, &OpCounts::exp_source)));
  comp.push_back(constant_row(sweep, "user-query", "exp_target", 17,
                              g(&SweepPoint::user_query, &OpCounts::exp_target)));
  comp.push_back(constant_row(sweep, "user-query", "pairings", 15,
                              g(&SweepPoint::user_query, &OpCounts::pairings)));
  comp.push_back(constant_row(sweep, "user-query", "hashes", 13,
                              g(&SweepPoint::user_query, &OpCounts::hashes)));
  // user retrieve: closed forms in the rectangle size
  comp.push_back(fitted_row(sweep, false, "user-retrieve", "exp_source",
                            {0, 0, 0, 3, true},
                            g(&SweepPoint::user_retrieve, &OpCounts::exp_source)));
  comp.push_back(fitted_row(sweep, false, "user-retrieve", "exp_target",
                            {0, 2, 2, 2, true},
                            g(&SweepPoint::user_retrieve, &OpCounts::exp_target)));
  comp.push_back(fitted_row(sweep, false, "user-retrieve", "pairings",
                            {0, 2, 2, 2, true},
                            g(&SweepPoint::user_retrieve, &OpCounts::pairings)));
  comp.push_back(fitted_row(sweep, false, "user-retrieve", "hashes",
                            {0, 0, 0, 2, true},
                            g(&SweepPoint::user_retrieve, &OpCounts::hashes)));
  // provider: closed forms in the rectangle size
  comp.push_back(fitted_row(sweep, false, "provider", "exp_source",
                            {11, 0, 0, 3, true},
                            g(&SweepPoint::provider, &OpCounts::exp_source)));
  comp.push_back(fitted_row(sweep, false, "provider", "exp_target",
                            {33, 0, 0, 2, true},
                            g(&SweepPoint::provider, &OpCounts::exp_target)));
  comp.push_back(fitted_row(sweep, false, "provider", "pairings",
                            {27, 0, 0, 4, true},
                            g(&SweepPoint::provider, &OpCounts::pairings)));
  comp.push_back(fitted_row(sweep, false, "provider", "hashes",
                            {13, 0, 0, 2, true},
                            g(&SweepPoint::provider, &OpCounts::hashes)));
  emit_rows(out, "region", std::move(comp));

  out += "\ncommunication counts (group elements and scalars per message)\n";
  auto e = [](WireElements SweepPoint::* msg, uint64_t WireElements::* field) {
    return Get([msg, field](const SweepPoint& p) { return p.*msg.*field; });
  };
  std::vector<Row> comm;
  comm.push_back(fitted_row(sweep, true, "published", "source_elems",
                            {10, 3, 3, 1, true},
                            e(&SweepPoint::published, &WireElements::source)));
  comm.push_back(fitted_row(sweep, true, "published", "target_elems",
                            {1, 1, 1, 1, true},
                            e(&SweepPoint::published, &WireElements::target)));
  comm.push_back(constant_row(sweep, "query-message", "source_elems", 12,
                              e(&SweepPoint::query_message, &WireElements::source)));
  comm.push_back(constant_row(sweep, "query-message", "target_elems", 16,
                              e(&SweepPoint::query_message, &WireElements::target)));
  comm.push_back(constant_row(sweep, "query-message", "scalars", 36,
                              e(&SweepPoint::query_message, &WireElements::scalars)));
  comm.push_back(fitted_row(sweep, false, "reply-message", "source_elems",
                            {1, 0, 0, 3, true},
                            e(&SweepPoint::reply_message, &WireElements::source)));
  comm.push_back(fitted_row(sweep, false, "reply-message", "target_elems",
                            {2, 1, 1, 2, true},
                            e(&SweepPoint::reply_message, &WireElements::target)));
  comm.push_back(fitted_row(sweep, false, "reply-message", "scalars",
                            {1, 0, 0, 4, true},
                            e(&SweepPoint::reply_message, &WireElements::scalars)));

  // byte-level claims: the query stays constant-size, the reply grows
  // affinely in the cell count, the published catalog in the grid size
  {
    AffineFit f =
        fit_grid(sweep, e(&SweepPoint::published, &WireElements::bytes));
    comm.push_back(Row{"published", "bytes", format_affine(f, "m", "n"),
                       "affine in (m, n, mn)",
                       f.exact ? "MATCH" : "DIFFERS (no exact affine fit)"});
  }
  {
    Get get = e(&SweepPoint::query_message, &WireElements::bytes);
    uint64_t v = get(sweep.front());
    bool constant = true;
    for (const auto& pt : sweep) constant = constant && get(pt) == v;
    comm.push_back(Row{"query-message", "bytes",
                       constant ? std::to_string(v) : "varies across sweep",
                       "constant",
                       constant ? "MATCH" : "DIFFERS (not constant)"});
  }
  {
    AffineFit f =
        fit_rectangle(sweep, e(&SweepPoint::reply_message, &WireElements::bytes));
    const bool ok = f.exact && f.ca == 0 && f.cb == 0 && f.cab > 0;
    comm.push_back(Row{"reply-message", "bytes", format_affine(f, "l", "k"),
                       "affine in lk, slope > 0",
                       ok ? "MATCH" : "DIFFERS (measured " +
                                          format_affine(f, "l", "k") + ")"});
  }
  emit_rows(out, "message", std::move(comm));

  out += "\nmeasured values for the last swept configuration\n";
  emit_keyvals(out, sweep.back());
  return out;
}

}  // namespace olbsq
