// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0

#include "olbsq/endpoint.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <optional>
#include <tuple>
#include <utility>

#include "olbsq/zkp.hpp"

namespace olbsq {

namespace {

void logf(int config_level, int at_level, const char* fmt, ...) {
  if (config_level < at_level) return;
  va_list ap;
  va_start(ap, fmt);
  std::fprintf(stderr, "olbsq-server: ");
  std::vfprintf(stderr, fmt, ap);
  std::fprintf(stderr, "\n");
  va_end(ap);
}

// ---- low-level socket I/O -------------------------------------------------

void write_all(int fd, const uint8_t* p, size_t n) {
  while (n > 0) {
    ssize_t w = ::send(fd, p, n, MSG_NOSIGNAL);
    if (w < 0) {
      if (errno == EINTR) continue;
      fail(Errc::kIo, std::string("socket write: ") + std::strerror(errno));
    }
    p += static_cast<size_t>(w);
    n -= static_cast<size_t>(w);
  }
}

// Reads exactly n bytes.  Returns false on EOF before the first byte when
// eof_ok is set; a mid-buffer EOF is always an error.
bool read_exact(int fd, uint8_t* p, size_t n, bool eof_ok) {
  size_t got = 0;
  while (got < n) {
    ssize_t r = ::recv(fd, p + got, n - got, 0);
    if (r < 0) {
      if (errno == EINTR) continue;
      fail(Errc::kIo, std::string("socket read: ") + std::strerror(errno));
    }
    if (r == 0) {
      if (got == 0 && eof_ok) return false;
      fail(Errc::kIo, "connection closed mid-frame");
    }
    got += static_cast<size_t>(r);
  }
  return true;
}

// Half-closes and drains the peer's remaining input until end-of-stream or
// a short deadline.  Closing with unread bytes in the receive buffer turns
// the close into a reset, which can destroy a queued abort frame before the
// peer reads it; rejecting a frame by its length word leaves exactly that
// situation behind.
void linger_close(int fd) {
  ::shutdown(fd, SHUT_WR);
  uint8_t buf[4096];
  for (int spins = 0; spins < 20; ++spins) {
    pollfd pfd{fd, POLLIN, 0};
    int ready = ::poll(&pfd, 1, 100);
    if (ready < 0 && errno == EINTR) continue;
    if (ready <= 0) break;  // nothing pending: a plain close stays clean
    ssize_t r = ::recv(fd, buf, sizeof buf, 0);
    if (r <= 0) break;
  }
}

// Reads one frame.  nullopt on clean end-of-stream between frames.
std::optional<WireMessage> read_frame(int fd) {
  uint8_t lenb[4];
  if (!read_exact(fd, lenb, 4, /*eof_ok=*/true)) return std::nullopt;
  uint32_t len = (uint32_t(lenb[0]) << 24) | (uint32_t(lenb[1]) << 16) |
                 (uint32_t(lenb[2]) << 8) | uint32_t(lenb[3]);
  if (len > kMaxFrameBytes) fail(Errc::kFormat, "frame over the size ceiling");
  if (len < kFrameHeaderBytes) fail(Errc::kFormat, "frame shorter than header");
  std::vector<uint8_t> buf(4 + size_t(len));
  std::memcpy(buf.data(), lenb, 4);
  read_exact(fd, buf.data() + 4, len, /*eof_ok=*/false);
  return decode_frame(buf);
}

void write_frame(int fd, const WireMessage& msg) {
  std::vector<uint8_t> frame = encode_frame(msg);
  write_all(fd, frame.data(), frame.size());
}

int connect_tcp(const std::string& host, uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  std::string portstr = std::to_string(port);
  int rc = ::getaddrinfo(host.c_str(), portstr.c_str(), &hints, &res);
  if (rc != 0)
    fail(Errc::kIo, "resolve " + host + ": " + gai_strerror(rc));
  int fd = -1;
  std::string last = "no addresses";
  for (addrinfo* a = res; a != nullptr; a = a->ai_next) {
    fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd < 0) {
      last = std::strerror(errno);
      continue;
    }
    if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) break;
    last = std::strerror(errno);
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) fail(Errc::kIo, "connect " + host + ":" + portstr + ": " + last);
  return fd;
}

struct FdCloser {
  int fd;
  ~FdCloser() {
    if (fd >= 0) ::close(fd);
  }
};

// ---- server-side session handling ----------------------------------------

void send_abort(int fd, const std::array<uint8_t, 16>& sid, AbortReason r,
                const std::string& detail) {
  WireMessage msg;
  msg.session_id = sid;
  msg.msg_type = static_cast<uint8_t>(MsgType::Abort);
  msg.body = encode_abort_body(r, detail);
  write_frame(fd, msg);
}

AbortReason reason_for(const Error& e) {
  switch (e.code()) {
    case Errc::kFormat:
    case Errc::kCanonicity:
      return AbortReason::MalformedFrame;
    case Errc::kRange:
      return AbortReason::QueryTooLarge;
    case Errc::kProtocol:
      return AbortReason::QueryProofInvalid;
    case Errc::kUsage:
      return AbortReason::ProtocolOrder;
    default:
      return AbortReason::InternalError;
  }
}

}  // namespace

// ---- framing --------------------------------------------------------------

std::vector<uint8_t> encode_frame(const WireMessage& msg) {
  if (msg.body.size() > kMaxFrameBytes - kFrameHeaderBytes)
    fail(Errc::kArgument, "frame body over the size ceiling");
  uint32_t len = kFrameHeaderBytes + static_cast<uint32_t>(msg.body.size());
  ByteWriter w;
  w.u32(len);
  w.u8(msg.version);
  w.bytes(msg.session_id);
  w.u8(msg.msg_type);
  w.bytes(msg.body);
  return w.take();
}

WireMessage decode_frame(std::span<const uint8_t> frame) {
  ByteReader r(frame);
  uint32_t len = r.u32();
  if (len > kMaxFrameBytes) fail(Errc::kFormat, "frame over the size ceiling");
  if (len < kFrameHeaderBytes) fail(Errc::kFormat, "frame shorter than header");
  if (r.remaining() != len) fail(Errc::kFormat, "frame length mismatch");
  WireMessage msg;
  msg.version = r.u8();
  auto sid = r.bytes(16);
  std::copy(sid.begin(), sid.end(), msg.session_id.begin());
  msg.msg_type = r.u8();
  auto body = r.bytes(len - kFrameHeaderBytes);
  msg.body.assign(body.begin(), body.end());
  return msg;
}

std::vector<uint8_t> encode_abort_body(AbortReason reason,
                                       const std::string& detail) {
  ByteWriter w;
  w.u8(static_cast<uint8_t>(reason));
  w.u32(static_cast<uint32_t>(detail.size()));
  w.bytes(std::span<const uint8_t>(
      reinterpret_cast<const uint8_t*>(detail.data()), detail.size()));
  return w.take();
}

std::pair<AbortReason, std::string> decode_abort_body(
    std::span<const uint8_t> body) {
  ByteReader r(body);
  auto reason = static_cast<AbortReason>(r.u8());
  uint32_t n = r.u32();
  if (n > kMaxFrameBytes) fail(Errc::kFormat, "abort detail length");
  auto d = r.bytes(n);
  r.expect_end();
  return {reason, std::string(d.begin(), d.end())};
}

const char* abort_reason_name(AbortReason reason) {
  switch (reason) {
    case AbortReason::MalformedFrame:
      return "MALFORMED_FRAME";
    case AbortReason::ProtocolOrder:
      return "PROTOCOL_ORDER";
    case AbortReason::QueryProofInvalid:
      return "QUERY_PROOF_INVALID";
    case AbortReason::QueryTooLarge:
      return "QUERY_TOO_LARGE";
    case AbortReason::InternalError:
      return "INTERNAL_ERROR";
    case AbortReason::VersionMismatch:
      return "VERSION_MISMATCH";
  }
  return "UNKNOWN";
}

// ---- server ----------------------------------------------------------------

Server::Server(const ProviderConfig& cfg) : cfg_(cfg) {
  if (cfg_.max_cells < 1) fail(Errc::kArgument, "max_cells must be >= 1");
  sk_ = read_secret_key_file(cfg_.key_path);
  auto [pp, cat] = read_catalog_file(cfg_.catalog_path);
  pp_ = std::move(pp);
  // the catalog cells travel to users out of band; the daemon needs only
  // the parameters (and the key) to run transfer sessions

  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0)
    fail(Errc::kIo, std::string("socket: ") + std::strerror(errno));
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(cfg_.listen_port);
  if (::inet_pton(AF_INET, cfg_.listen_host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    listen_fd_ = -1;
    fail(Errc::kArgument, "listen_host must be an IPv4 address");
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) !=
      0) {
    std::string err = std::strerror(errno);
    ::close(listen_fd_);
    listen_fd_ = -1;
    fail(Errc::kIo, "bind " + cfg_.listen_host + ":" +
                        std::to_string(cfg_.listen_port) + ": " + err);
  }
  if (::listen(listen_fd_, 64) != 0) {
    std::string err = std::strerror(errno);
    ::close(listen_fd_);
    listen_fd_ = -1;
    fail(Errc::kIo, "listen: " + err);
  }
  socklen_t alen = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &alen);
  port_ = ntohs(addr.sin_port);
  logf(cfg_.log_level, 1, "listening on %s:%u", cfg_.listen_host.c_str(),
       unsigned(port_));
}

Server::~Server() { stop(); }

void Server::track(int fd, bool add) {
  std::lock_guard<std::mutex> lock(mu_);
  if (add) {
    live_fds_.push_back(fd);
  } else {
    std::erase(live_fds_, fd);
  }
}

void Server::retire(uint64_t id) {
  std::lock_guard<std::mutex> lock(mu_);
  retired_.push_back(id);
}

void Server::reap_retired() {
  std::vector<uint64_t> done;
  {
    std::lock_guard<std::mutex> lock(mu_);
    done.swap(retired_);
  }
  for (uint64_t id : done) {
    std::thread t;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = workers_.find(id);
      if (it == workers_.end()) continue;
      t = std::move(it->second);
      workers_.erase(it);
    }
    if (t.joinable()) t.join();
  }
}

void Server::run() {
  for (;;) {
    int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      break;  // listener closed (stop) or fatal accept error
    }
    if (stopping_.load()) {
      ::close(fd);
      break;
    }
    reap_retired();
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    track(fd, true);
    std::lock_guard<std::mutex> lock(mu_);
    const uint64_t id = next_worker_++;
    workers_.emplace(id, std::thread([this, fd, id] {
                       handle_connection(fd);
                       linger_close(fd);
                       track(fd, false);
                       ::close(fd);
                       retire(id);
                     }));
  }
}

void Server::start() {
  accept_thread_ = std::thread([this] { run(); });
}

void Server::stop() {
  if (stopping_.exchange(true)) {
    if (accept_thread_.joinable()) accept_thread_.join();
    return;
  }
  if (listen_fd_ >= 0) {
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    listen_fd_ = -1;
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (int fd : live_fds_) ::shutdown(fd, SHUT_RDWR);
  }
  if (accept_thread_.joinable()) accept_thread_.join();
  for (;;) {
    std::thread t;
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (workers_.empty()) break;
      auto it = workers_.begin();
      t = std::move(it->second);
      workers_.erase(it);
    }
    if (t.joinable()) t.join();
  }
}

void Server::handle_connection(int fd) {
  std::array<uint8_t, 16> sid{};
  try {
    auto first = read_frame(fd);
    if (!first) return;  // connected and left; nothing to do
    sid = first->session_id;
    if (first->version != kWireVersion) {
      send_abort(fd, sid, AbortReason::VersionMismatch,
                 "unsupported protocol version");
      return;
    }
    if (first->msg_type != static_cast<uint8_t>(MsgType::Hello)) {
      send_abort(fd, sid, AbortReason::ProtocolOrder,
                 "session must open with HELLO");
      return;
    }
    if (!first->body.empty()) {
      send_abort(fd, sid, AbortReason::MalformedFrame,
                 "HELLO carries no body");
      return;
    }
    logf(cfg_.log_level, 1, "session opened");

    SystemRandom rng;
    ProviderSession session(sk_, pp_, cfg_.max_cells);
    ProofSP1 hello_proof = session.make_setup_proof(rng);
    WireMessage reply;
    reply.session_id = sid;
    reply.msg_type = static_cast<uint8_t>(MsgType::ProviderProof);
    ByteWriter pw;
    hello_proof.serialize(pw);
    reply.body = pw.take();
    write_frame(fd, reply);

    auto qframe = read_frame(fd);
    if (!qframe) return;  // client left after the handshake
    if (qframe->version != kWireVersion) {
      send_abort(fd, sid, AbortReason::VersionMismatch,
                 "unsupported protocol version");
      return;
    }
    if (qframe->session_id != sid) {
      send_abort(fd, sid, AbortReason::ProtocolOrder,
                 "session id changed mid-session");
      return;
    }
    if (qframe->msg_type != static_cast<uint8_t>(MsgType::Query)) {
      send_abort(fd, sid, AbortReason::ProtocolOrder, "expected QUERY");
      return;
    }

    QueryCommitments omega;
    ProofU proof;
    try {
      ByteReader br(qframe->body);
      omega = QueryCommitments::deserialize(br);
      proof = ProofU::deserialize(br);
      br.expect_end();
    } catch (const Error& e) {
      send_abort(fd, sid, AbortReason::MalformedFrame, e.what());
      return;
    }

    KeyBundle keys;
    ProofSP2 sp2;
    try {
      std::tie(keys, sp2) = session.on_query(omega, proof, rng);
    } catch (const Error& e) {
      logf(cfg_.log_level, 1, "query refused: %s", e.what());
      send_abort(fd, sid, reason_for(e), e.what());
      return;
    }

    WireMessage out;
    out.session_id = sid;
    out.msg_type = static_cast<uint8_t>(MsgType::KeyBundle);
    ByteWriter ow;
    keys.serialize(ow);
    sp2.serialize(ow);
    out.body = ow.take();
    write_frame(fd, out);
    logf(cfg_.log_level, 1, "session served %u cells",
         unsigned(omega.l * omega.k));
  } catch (const Error& e) {
    // frame-level trouble: answer when the socket still works, then close
    try {
      send_abort(fd, sid, reason_for(e), e.what());
    } catch (...) {
    }
  } catch (...) {
    try {
      send_abort(fd, sid, AbortReason::InternalError, "internal error");
    } catch (...) {
    }
  }
}

void serve(const ProviderConfig& cfg) {
  Server server(cfg);
  server.run();
}

// ---- client -----------------------------------------------------------------

namespace {

[[noreturn]] void throw_abort(const WireMessage& msg) {
  auto [reason, detail] = decode_abort_body(msg.body);
  fail(Errc::kProtocol, std::string("provider aborted: ") +
                            abort_reason_name(reason) +
                            (detail.empty() ? "" : " (" + detail + ")"));
}

WireMessage expect_reply(int fd, const std::array<uint8_t, 16>& sid,
                         MsgType want) {
  auto msg = read_frame(fd);
  if (!msg) fail(Errc::kIo, "provider closed the connection");
  if (msg->version != kWireVersion)
    fail(Errc::kProtocol, "provider speaks a different protocol version");
  if (msg->session_id != sid)
    fail(Errc::kProtocol, "provider echoed a wrong session id");
  if (msg->msg_type == static_cast<uint8_t>(MsgType::Abort)) throw_abort(*msg);
  if (msg->msg_type != static_cast<uint8_t>(want))
    fail(Errc::kProtocol, "unexpected message type from provider");
  return std::move(*msg);
}

}  // namespace

RecoveredServices run_query(const std::string& host, uint16_t port,
                            const PublicParams& pp,
                            const EncryptedCatalog& cat, uint32_t i,
                            uint32_t j, uint32_t l, uint32_t k,
                            RandomSource& rng) {
  // validates the rectangle before any traffic
  UserSession session(pp, cat, i, j, l, k);

  FdCloser sock{connect_tcp(host, port)};

  WireMessage hello;
  rng.fill(hello.session_id);
  hello.msg_type = static_cast<uint8_t>(MsgType::Hello);
  write_frame(sock.fd, hello);

  WireMessage proof_msg =
      expect_reply(sock.fd, hello.session_id, MsgType::ProviderProof);
  {
    ByteReader br(proof_msg.body);
    ProofSP1 sp1 = ProofSP1::deserialize(br);
    br.expect_end();
    session.on_provider_proof(sp1);
  }

  auto [omega, proof] = session.make_query(rng);
  WireMessage query;
  query.session_id = hello.session_id;
  query.msg_type = static_cast<uint8_t>(MsgType::Query);
  ByteWriter qw;
  omega.serialize(qw);
  proof.serialize(qw);
  query.body = qw.take();
  write_frame(sock.fd, query);

  WireMessage reply =
      expect_reply(sock.fd, hello.session_id, MsgType::KeyBundle);
  ByteReader br(reply.body);
  KeyBundle keys = KeyBundle::deserialize(br);
  ProofSP2 sp2 = ProofSP2::deserialize(br);
  br.expect_end();
  return session.on_reply(keys, sp2);
}

}  // namespace olbsq
