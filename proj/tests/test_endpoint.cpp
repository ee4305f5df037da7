// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Wire protocol and endpoints: frame codec, live client/server sessions,
// abort reasons, concurrency, fuzz resilience, and startup failures.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "olbsq/endpoint.hpp"
#include "olbsq/fsio.hpp"
#include "olbsq/zkp.hpp"

using namespace olbsq;

namespace {

std::vector<std::vector<uint8_t>> service_grid(uint32_t m, uint32_t n) {
  std::vector<std::vector<uint8_t>> out;
  for (uint32_t j = 1; j <= n; ++j)
    for (uint32_t i = 1; i <= m; ++i) {
      std::string s =
          "svc r" + std::to_string(j) + " c" + std::to_string(i);
      out.emplace_back(s.begin(), s.end());
    }
  return out;
}

const SetupResult& grid44() {
  static SetupResult s = [] {
    DeterministicRandom rng(4403);
    return setup(4, 4, service_grid(4, 4), rng);
  }();
  return s;
}

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

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& stem)
      : path("/tmp/olbsq_ep_" + std::to_string(::getpid()) + "_" + stem) {}
  ~TempFile() { ::unlink(path.c_str()); }
};

// a running provider over a fresh copy of the shared 4x4 deployment
struct ServerFixture {
  TempFile cat{"cat.bin"}, key{"key.bin"};
  std::unique_ptr<Server> server;

  explicit ServerFixture(uint64_t max_cells = 4096, int log_level = 0) {
    const SetupResult& s = grid44();
    write_catalog_file(cat.path, s.pp, s.catalog);
    write_secret_key_file(key.path, s.sk);
    ProviderConfig cfg;
    cfg.catalog_path = cat.path;
    cfg.key_path = key.path;
    cfg.max_cells = max_cells;
    cfg.log_level = log_level;
    server = std::make_unique<Server>(cfg);
    server->start();
  }
  ~ServerFixture() { server->stop(); }
  uint16_t port() const { return server->port(); }
};

// --- raw-socket helpers for hostile/odd clients ---------------------------

int tconnect(uint16_t port) {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  REQUIRE(fd >= 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  ::inet_pton(AF_INET, "127.0.0.1", &addr.sin_addr);
  REQUIRE(::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) ==
          0);
  return fd;
}

void tsend(int fd, std::span<const uint8_t> bytes) {
  size_t off = 0;
  while (off < bytes.size()) {
    ssize_t w = ::send(fd, bytes.data() + off, bytes.size() - off,
                       MSG_NOSIGNAL);
    if (w <= 0) return;  // hostile clients don't care about delivery
    off += static_cast<size_t>(w);
  }
}

void tsend(int fd, const WireMessage& msg) {
  std::vector<uint8_t> f = encode_frame(msg);
  tsend(fd, f);
}

bool tread_exact(int fd, uint8_t* p, size_t n) {
  size_t got = 0;
  while (got < n) {
    ssize_t r = ::recv(fd, p + got, n - got, 0);
    if (r <= 0) return false;
    got += static_cast<size_t>(r);
  }
  return true;
}

std::optional<WireMessage> tread(int fd) {
  uint8_t lenb[4];
  if (!tread_exact(fd, lenb, 4)) return std::nullopt;
  uint32_t len = (uint32_t(lenb[0]) << 24) | (uint32_t(lenb[1]) << 16) |
                 (uint32_t(lenb[2]) << 8) | uint32_t(lenb[3]);
  REQUIRE(len <= kMaxFrameBytes);
  std::vector<uint8_t> buf(4 + size_t(len));
  std::memcpy(buf.data(), lenb, 4);
  if (!tread_exact(fd, buf.data() + 4, len)) return std::nullopt;
  return decode_frame(buf);
}

AbortReason expect_abort(int fd) {
  auto msg = tread(fd);
  REQUIRE(msg.has_value());
  REQUIRE(msg->msg_type == static_cast<uint8_t>(MsgType::Abort));
  auto [reason, detail] = decode_abort_body(msg->body);
  return reason;
}

std::array<uint8_t, 16> random_sid(RandomSource& rng) {
  std::array<uint8_t, 16> sid{};
  rng.fill(sid);
  return sid;
}

// walk an honest session up to the point of sending the query
struct HalfSession {
  int fd;
  std::array<uint8_t, 16> sid;
  BuiltQuery q;
};

HalfSession open_and_query(uint16_t port, RandomSource& rng, uint32_t i = 1,
                           uint32_t j = 1, uint32_t l = 2, uint32_t k = 2) {
  int fd = tconnect(port);
  WireMessage hello;
  hello.session_id = random_sid(rng);
  hello.msg_type = static_cast<uint8_t>(MsgType::Hello);
  tsend(fd, hello);
  auto proof_msg = tread(fd);
  REQUIRE(proof_msg.has_value());
  REQUIRE(proof_msg->msg_type == static_cast<uint8_t>(MsgType::ProviderProof));
  return {fd, hello.session_id, build_query(grid44().pp, i, j, l, k, rng)};
}

WireMessage query_message(const HalfSession& hs, const ProofU& proof) {
  WireMessage q;
  q.session_id = hs.sid;
  q.msg_type = static_cast<uint8_t>(MsgType::Query);
  ByteWriter w;
  hs.q.omega.serialize(w);
  proof.serialize(w);
  q.body = w.take();
  return q;
}

}  // namespace

TEST_CASE("frames round-trip on every message type") {
  DeterministicRandom rng(41);
  for (uint8_t type : {0x01, 0x02, 0x03, 0x04, 0x05, 0x7F}) {
    WireMessage msg;
    msg.version = kWireVersion;
    msg.session_id = random_sid(rng);
    msg.msg_type = type;
    auto r32 = rng.bytes32();
    msg.body.assign(r32.begin(), r32.begin() + (type % 17));
    std::vector<uint8_t> f = encode_frame(msg);
    CHECK(f.size() == 4 + kFrameHeaderBytes + msg.body.size());
    WireMessage back = decode_frame(f);
    CHECK(back.version == msg.version);
    CHECK(back.session_id == msg.session_id);
    CHECK(back.msg_type == msg.msg_type);
    CHECK(back.body == msg.body);
  }
  for (AbortReason r :
       {AbortReason::MalformedFrame, AbortReason::ProtocolOrder,
        AbortReason::QueryProofInvalid, AbortReason::QueryTooLarge,
        AbortReason::InternalError, AbortReason::VersionMismatch}) {
    auto body = encode_abort_body(r, "details here");
    auto [rr, dd] = decode_abort_body(body);
    CHECK(rr == r);
    CHECK(dd == "details here");
    CHECK(std::string(abort_reason_name(r)) != "UNKNOWN");
  }
}

TEST_CASE("frame codec rejects malformed frames") {
  DeterministicRandom rng(42);
  WireMessage msg;
  msg.session_id = random_sid(rng);
  msg.msg_type = static_cast<uint8_t>(MsgType::Hello);
  std::vector<uint8_t> f = encode_frame(msg);
  {  // truncated
    std::vector<uint8_t> bad(f.begin(), f.end() - 1);
    CHECK(error_code_of([&] { decode_frame(bad); }) == Errc::kFormat);
  }
  {  // trailing garbage
    std::vector<uint8_t> bad = f;
    bad.push_back(0);
    CHECK(error_code_of([&] { decode_frame(bad); }) == Errc::kFormat);
  }
  {  // length word over the ceiling
    std::vector<uint8_t> bad = f;
    bad[0] = 0xFF;
    CHECK(error_code_of([&] { decode_frame(bad); }) == Errc::kFormat);
  }
  {  // length word shorter than the fixed header
    std::vector<uint8_t> bad = f;
    bad[0] = bad[1] = bad[2] = 0;
    bad[3] = kFrameHeaderBytes - 1;
    bad.resize(4 + kFrameHeaderBytes - 1);
    CHECK(error_code_of([&] { decode_frame(bad); }) == Errc::kFormat);
  }
  {  // body over the ceiling is refused at encode time
    WireMessage big;
    big.msg_type = static_cast<uint8_t>(MsgType::Query);
    big.body.resize(kMaxFrameBytes);
    CHECK(error_code_of([&] { encode_frame(big); }) == Errc::kArgument);
  }
}

TEST_CASE("a query over the wire recovers the right services") {
  ServerFixture fx;
  const SetupResult& s = grid44();
  SystemRandom rng;
  RecoveredServices got =
      run_query("127.0.0.1", fx.port(), s.pp, s.catalog, 2, 1, 2, 2, rng);
  auto want = ideal_functionality(service_grid(4, 4), 4, 4, 2, 1, 2, 2);
  REQUIRE(want.has_value());
  CHECK(got == *want);

  // the daemon keeps serving: a second session on the same server
  RecoveredServices again =
      run_query("127.0.0.1", fx.port(), s.pp, s.catalog, 1, 2, 1, 2, rng);
  auto want2 = ideal_functionality(service_grid(4, 4), 4, 4, 1, 2, 1, 2);
  REQUIRE(want2.has_value());
  CHECK(again == *want2);
}

TEST_CASE("the query frame length does not depend on the rectangle") {
  DeterministicRandom rng(43);
  const SetupResult& s4 = grid44();
  DeterministicRandom rng8(8808);
  SetupResult s8 = setup(8, 8, service_grid(8, 8), rng8);

  auto query_frame_len = [&](const PublicParams& pp, uint32_t i, uint32_t j,
                             uint32_t l, uint32_t k) {
    BuiltQuery q = build_query(pp, i, j, l, k, rng);
    WireMessage msg;
    msg.msg_type = static_cast<uint8_t>(MsgType::Query);
    ByteWriter w;
    q.omega.serialize(w);
    q.proof.serialize(w);
    msg.body = w.take();
    return encode_frame(msg).size();
  };
  size_t base = query_frame_len(s4.pp, 1, 1, 1, 1);
  CHECK(base == query_frame_len(s4.pp, 1, 1, 3, 3));
  CHECK(base == query_frame_len(s4.pp, 3, 3, 1, 1));
  CHECK(base == query_frame_len(s8.pp, 2, 3, 3, 2));
  CHECK(base == query_frame_len(s8.pp, 1, 1, 7, 7));
}

TEST_CASE("concurrent sessions get correct independent answers") {
  ServerFixture fx;
  const SetupResult& s = grid44();
  auto plain = service_grid(4, 4);

  RecoveredServices got_a, got_b;
  std::thread ta([&] {
    SystemRandom rng;
    got_a = run_query("127.0.0.1", fx.port(), s.pp, s.catalog, 1, 1, 3, 3,
                      rng);
  });
  std::thread tb([&] {
    SystemRandom rng;
    got_b = run_query("127.0.0.1", fx.port(), s.pp, s.catalog, 2, 2, 2, 2,
                      rng);
  });
  ta.join();
  tb.join();
  auto want_a = ideal_functionality(plain, 4, 4, 1, 1, 3, 3);
  auto want_b = ideal_functionality(plain, 4, 4, 2, 2, 2, 2);
  REQUIRE(want_a.has_value());
  REQUIRE(want_b.has_value());
  CHECK(got_a == *want_a);
  CHECK(got_b == *want_b);
}

TEST_CASE("rectangles over the cell budget are refused") {
  ServerFixture fx(/*max_cells=*/3);
  const SetupResult& s = grid44();
  SystemRandom rng;
  try {
    run_query("127.0.0.1", fx.port(), s.pp, s.catalog, 1, 1, 2, 2, rng);
    FAIL("oversized query was served");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kProtocol);
    CHECK(std::string(e.what()).find("QUERY_TOO_LARGE") != std::string::npos);
  }
  // a small enough rectangle still goes through on the same server
  RecoveredServices got =
      run_query("127.0.0.1", fx.port(), s.pp, s.catalog, 1, 1, 3, 1, rng);
  auto want = ideal_functionality(service_grid(4, 4), 4, 4, 1, 1, 3, 1);
  CHECK(got == *want);
}

TEST_CASE("tampered query proofs are refused as invalid") {
  ServerFixture fx;
  SystemRandom rng;
  HalfSession hs = open_and_query(fx.port(), rng);
  ProofU bad = hs.q.proof;
  bad.z[0] = bad.z[0] + Scalar::one();
  tsend(hs.fd, query_message(hs, bad));
  CHECK(expect_abort(hs.fd) == AbortReason::QueryProofInvalid);
  ::close(hs.fd);
}

TEST_CASE("protocol order, version and session id are enforced") {
  ServerFixture fx;
  SystemRandom rng;
  {  // first message must be HELLO
    int fd = tconnect(fx.port());
    WireMessage msg;
    msg.session_id = random_sid(rng);
    msg.msg_type = static_cast<uint8_t>(MsgType::Query);
    tsend(fd, msg);
    CHECK(expect_abort(fd) == AbortReason::ProtocolOrder);
    ::close(fd);
  }
  {  // unknown message type
    int fd = tconnect(fx.port());
    WireMessage msg;
    msg.session_id = random_sid(rng);
    msg.msg_type = 0x66;
    tsend(fd, msg);
    CHECK(expect_abort(fd) == AbortReason::ProtocolOrder);
    ::close(fd);
  }
  {  // wrong protocol version
    int fd = tconnect(fx.port());
    WireMessage msg;
    msg.version = 9;
    msg.session_id = random_sid(rng);
    msg.msg_type = static_cast<uint8_t>(MsgType::Hello);
    tsend(fd, msg);
    CHECK(expect_abort(fd) == AbortReason::VersionMismatch);
    ::close(fd);
  }
  {  // HELLO must have an empty body
    int fd = tconnect(fx.port());
    WireMessage msg;
    msg.session_id = random_sid(rng);
    msg.msg_type = static_cast<uint8_t>(MsgType::Hello);
    msg.body = {1, 2, 3};
    tsend(fd, msg);
    CHECK(expect_abort(fd) == AbortReason::MalformedFrame);
    ::close(fd);
  }
  {  // session id must stay fixed
    HalfSession hs = open_and_query(fx.port(), rng);
    WireMessage q = query_message(hs, hs.q.proof);
    q.session_id[0] ^= 0xFF;
    tsend(hs.fd, q);
    CHECK(expect_abort(hs.fd) == AbortReason::ProtocolOrder);
    ::close(hs.fd);
  }
  {  // replies echo the client-chosen session id
    int fd = tconnect(fx.port());
    WireMessage hello;
    hello.session_id = random_sid(rng);
    hello.msg_type = static_cast<uint8_t>(MsgType::Hello);
    tsend(fd, hello);
    auto reply = tread(fd);
    REQUIRE(reply.has_value());
    CHECK(reply->session_id == hello.session_id);
    ::close(fd);
  }
}

TEST_CASE("malformed query bodies are refused as malformed") {
  ServerFixture fx;
  SystemRandom rng;
  {  // garbage body
    HalfSession hs = open_and_query(fx.port(), rng);
    WireMessage q;
    q.session_id = hs.sid;
    q.msg_type = static_cast<uint8_t>(MsgType::Query);
    q.body = {0xDE, 0xAD, 0xBE, 0xEF};
    tsend(hs.fd, q);
    CHECK(expect_abort(hs.fd) == AbortReason::MalformedFrame);
    ::close(hs.fd);
  }
  {  // valid structures with a trailing byte
    HalfSession hs = open_and_query(fx.port(), rng);
    WireMessage q = query_message(hs, hs.q.proof);
    q.body.push_back(0x00);
    tsend(hs.fd, q);
    CHECK(expect_abort(hs.fd) == AbortReason::MalformedFrame);
    ::close(hs.fd);
  }
}

TEST_CASE("the daemon survives a thousand malformed frames") {
  ServerFixture fx;
  DeterministicRandom rng(44);
  const SetupResult& s = grid44();

  for (int round = 0; round < 1000; ++round) {
    int fd = tconnect(fx.port());
    auto r = rng.bytes32();
    switch (r[0] % 6) {
      case 0: {  // random bytes under a valid length prefix
        ByteWriter w;
        uint32_t n = kFrameHeaderBytes + (r[1] % 32);
        w.u32(n);
        for (uint32_t t = 0; t < n; ++t) w.u8(r[(2 + t) % 32]);
        tsend(fd, w.take());
        break;
      }
      case 1: {  // absurd length prefix, then silence
        ByteWriter w;
        w.u32(kMaxFrameBytes + 1 + r[1]);
        w.u8(r[2]);
        tsend(fd, w.take());
        break;
      }
      case 2: {  // truncated frame: length promises more than is sent
        ByteWriter w;
        w.u32(kFrameHeaderBytes + 64);
        w.u8(kWireVersion);
        tsend(fd, w.take());
        break;
      }
      case 3: {  // partial length word
        std::array<uint8_t, 2> two{r[1], r[2]};
        tsend(fd, two);
        break;
      }
      case 4: {  // valid HELLO, then a garbage frame
        WireMessage hello;
        hello.session_id = random_sid(rng);
        hello.msg_type = static_cast<uint8_t>(MsgType::Hello);
        tsend(fd, hello);
        ByteWriter w;
        w.u32(kFrameHeaderBytes + 8);
        for (uint32_t t = 0; t < kFrameHeaderBytes + 8; ++t)
          w.u8(r[(1 + t) % 32]);
        tsend(fd, w.take());
        break;
      }
      default:  // connect and instantly leave
        break;
    }
    ::close(fd);
  }

  // state intact: an honest query still round-trips cleanly
  SystemRandom srng;
  RecoveredServices got =
      run_query("127.0.0.1", fx.port(), s.pp, s.catalog, 1, 1, 2, 2, srng);
  auto want = ideal_functionality(service_grid(4, 4), 4, 4, 1, 1, 2, 2);
  REQUIRE(want.has_value());
  CHECK(got == *want);
}

TEST_CASE("client-side range checks precede any network traffic") {
  const SetupResult& s = grid44();
  SystemRandom rng;
  // port 1 is closed; a connect attempt would fail with kIo, so a kRange
  // error proves the rectangle was rejected before any socket work
  CHECK(error_code_of([&] {
          run_query("127.0.0.1", 1, s.pp, s.catalog, 3, 3, 2, 2, rng);
        }) == Errc::kRange);
}

TEST_CASE("startup failures are reported before serving") {
  const SetupResult& s = grid44();
  {  // missing files
    ProviderConfig cfg;
    cfg.catalog_path = "/tmp/olbsq_ep_none.cat";
    cfg.key_path = "/tmp/olbsq_ep_none.key";
    CHECK(error_code_of([&] { Server srv(cfg); }) == Errc::kIo);
  }
  {  // corrupt catalog file
    TempFile cat{"bad_cat.bin"}, key{"bad_key.bin"};
    write_catalog_file(cat.path, s.pp, s.catalog);
    write_secret_key_file(key.path, s.sk);
    std::vector<uint8_t> bytes = read_file(cat.path);
    bytes[0] ^= 0xFF;  // break the magic
    write_file(cat.path, bytes, false);
    ProviderConfig cfg;
    cfg.catalog_path = cat.path;
    cfg.key_path = key.path;
    CHECK(error_code_of([&] { Server srv(cfg); }) == Errc::kFormat);
  }
  {  // port already taken
    ServerFixture fx;
    TempFile cat{"dup_cat.bin"}, key{"dup_key.bin"};
    write_catalog_file(cat.path, s.pp, s.catalog);
    write_secret_key_file(key.path, s.sk);
    ProviderConfig cfg;
    cfg.catalog_path = cat.path;
    cfg.key_path = key.path;
    cfg.listen_port = fx.port();
    CHECK(error_code_of([&] { Server srv(cfg); }) == Errc::kIo);
  }
  {  // nonsense cell budget
    ProviderConfig cfg;
    cfg.max_cells = 0;
    CHECK(error_code_of([&] { Server srv(cfg); }) == Errc::kArgument);
  }
}
