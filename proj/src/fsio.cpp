// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0

#include "olbsq/fsio.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>

#include "olbsq/errors.hpp"

namespace olbsq {

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::kIo, "cannot open for reading: " + path);
  std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  if (in.bad()) fail(Errc::kIo, "read failed: " + path);
  return data;
}

void write_file(const std::string& path, std::span<const uint8_t> data,
                bool restrict_permissions) {
  mode_t mode = restrict_permissions ? 0600 : 0644;
  int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, mode);
  if (fd < 0)
    fail(Errc::kIo, "cannot open for writing: " + path + ": " +
                        std::strerror(errno));
  if (restrict_permissions) ::fchmod(fd, 0600);  // in case the file existed
  size_t off = 0;
  while (off < data.size()) {
    ssize_t w = ::write(fd, data.data() + off, data.size() - off);
    if (w < 0) {
      int err = errno;
      ::close(fd);
      fail(Errc::kIo, "write failed: " + path + ": " + std::strerror(err));
    }
    off += static_cast<size_t>(w);
  }
  if (::close(fd) != 0) fail(Errc::kIo, "close failed: " + path);
}

}  // namespace olbsq
