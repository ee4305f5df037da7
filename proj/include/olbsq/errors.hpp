// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace olbsq {

enum class Errc {
  kArgument,    // caller passed values outside the documented domain
  kUsage,       // API misuse (wrong call order, nested traces, ...)
  kFormat,      // malformed serialized data (truncation, bad tag, bad length)
  kCanonicity,  // well-formed but non-canonical encoding (coord >= p, off-curve,
                // wrong subgroup)
  kIntegrity,   // authenticated payload failed to open
  kIo,          // file or socket failure
  kProtocol,    // peer violated the session protocol
  kRange,       // query rectangle outside the grid
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace olbsq
