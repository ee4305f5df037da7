// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Wire protocol and endpoints: a provider daemon serving transfer sessions
// over length-prefixed frames on TCP, and a client that runs one full query
// handshake.
//
// Frame layout (all integers big-endian):
//     [u32 length][u8 version][16-byte session id][u8 msg type][body]
// where `length` counts everything after the length word.  One session per
// connection; the session id is chosen by the client in HELLO and echoed by
// the server in every reply.
//
// Message flow:  client HELLO -> server PROVIDER_PROOF -> client QUERY
// (commitments + query proof) -> server KEY_BUNDLE (keys + key-honesty
// proof) or ABORT (reason code + detail).  Any failure aborts the session;
// per-session failures never take the daemon down.
//
// Transport security is a deployment concern: the protocol's proofs keep
// both sides honest about the catalog but do not authenticate endpoints.

#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "olbsq/transfer.hpp"

namespace olbsq {

inline constexpr uint8_t kWireVersion = 1;
// ceiling on one frame (length word excluded); parsing stops here
inline constexpr uint32_t kMaxFrameBytes = 16u * 1024 * 1024;
// version + session id + msg type
inline constexpr uint32_t kFrameHeaderBytes = 1 + 16 + 1;

enum class MsgType : uint8_t {
  Hello = 0x01,          // client opens a session; empty body
  ProviderProof = 0x02,  // body: setup-honesty proof
  Query = 0x03,          // body: commitments, then the query proof
  KeyBundle = 0x04,      // body: key bundle, then the key-honesty proof
  Abort = 0x05,          // body: reason byte, detail length, detail text
};

enum class AbortReason : uint8_t {
  MalformedFrame = 1,   // unparseable frame or body, or unknown message type
  ProtocolOrder = 2,    // parseable but unexpected at this point
  QueryProofInvalid = 3,
  QueryTooLarge = 4,    // rectangle over the per-session cell budget
  InternalError = 5,
  VersionMismatch = 6,
};

struct WireMessage {
  uint8_t version = kWireVersion;
  std::array<uint8_t, 16> session_id{};
  uint8_t msg_type = 0;  // raw byte: unknown types must survive decoding
  std::vector<uint8_t> body;
};

// Full frame bytes including the length word.  Throws kArgument when the
// body exceeds the frame ceiling.
std::vector<uint8_t> encode_frame(const WireMessage& msg);
// Decodes one complete frame.  Throws kFormat on truncation, length
// mismatch, or an over-ceiling length word.
WireMessage decode_frame(std::span<const uint8_t> frame);

// Abort bodies carry a machine-readable reason and a short human detail.
std::vector<uint8_t> encode_abort_body(AbortReason reason,
                                       const std::string& detail);
std::pair<AbortReason, std::string> decode_abort_body(
    std::span<const uint8_t> body);
const char* abort_reason_name(AbortReason reason);

struct ProviderConfig {
  std::string listen_host = "127.0.0.1";
  uint16_t listen_port = 0;  // 0 picks an ephemeral port (see Server::port)
  std::string catalog_path;
  std::string key_path;
  uint64_t max_cells = 4096;  // ceiling on l*k per query
  int log_level = 0;          // 0 silent, 1 session events, 2 frame trace
};

// Provider daemon: loads the catalog and key at construction, then serves
// one transfer session per TCP connection, concurrently.
class Server {
 public:
  // Loads files and binds the listener; throws kIo (missing files, bind
  // failure), kFormat/kCanonicity (corrupt files), kArgument (bad config).
  explicit Server(const ProviderConfig& cfg);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // The bound port (useful when the config asked for port 0).
  uint16_t port() const { return port_; }

  // Accept loop; blocks until stop() is called from another thread.
  void run();
  // run() on a background thread; returns once accepting.
  void start();
  // Stops accepting, force-closes live connections, joins all threads.
  void stop();

 private:
  void handle_connection(int fd);
  void track(int fd, bool add);
  void retire(uint64_t id);
  void reap_retired();

  ProviderConfig cfg_;
  SecretKey sk_;
  PublicParams pp_;
  int listen_fd_ = -1;
  uint16_t port_ = 0;
  std::thread accept_thread_;
  std::atomic<bool> stopping_{false};
  std::mutex mu_;
  // finished workers park their id in retired_ and are joined on the next
  // accept, so a long-lived daemon holds threads only for live sessions
  std::unordered_map<uint64_t, std::thread> workers_;
  std::vector<uint64_t> retired_;
  uint64_t next_worker_ = 0;
  std::vector<int> live_fds_;
};

// Blocking convenience wrapper: construct a Server and run until the
// process is killed.
void serve(const ProviderConfig& cfg);

// One full query handshake against a running provider.  The rectangle is
// validated locally before any network traffic (kRange).  Throws kIo on
// connection trouble, kProtocol on provider aborts or failed proofs.
RecoveredServices run_query(const std::string& host, uint16_t port,
                            const PublicParams& pp,
                            const EncryptedCatalog& cat, uint32_t i,
                            uint32_t j, uint32_t l, uint32_t k,
                            RandomSource& rng);

}  // namespace olbsq
