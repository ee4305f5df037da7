// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace olbsq {

// whole-file read/write; both throw kIo on failure
std::vector<uint8_t> read_file(const std::string& path);
// restrict=true creates the file with owner-only permissions (0600)
void write_file(const std::string& path, std::span<const uint8_t> data,
                bool restrict_permissions = false);

}  // namespace olbsq
