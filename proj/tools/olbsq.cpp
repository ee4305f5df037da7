// Copyright 2026 The OLBSQ Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: provider setup and daemon, user query client,
// and the cost-model benchmark.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "olbsq/bench.hpp"
#include "olbsq/catalog.hpp"
#include "olbsq/endpoint.hpp"
#include "olbsq/errors.hpp"
#include "olbsq/fsio.hpp"
#include "olbsq/rng.hpp"

namespace fs = std::filesystem;
using namespace olbsq;

namespace {

constexpr uint16_t kDefaultPort = 7710;
constexpr const char* kCatalogName = "catalog.olbsq";
constexpr const char* kKeyName = "provider.key";

// row-major cell file name; (col, row) are 1-based grid coordinates
std::string cell_file_name(uint32_t col, uint32_t row) {
  return "r" + std::to_string(row) + "_c" + std::to_string(col) + ".bin";
}

// "host" or "host:port"
std::pair<std::string, uint16_t> split_host_port(const std::string& addr) {
  auto pos = addr.rfind(':');
  if (pos == std::string::npos) return {addr, kDefaultPort};
  const std::string host = addr.substr(0, pos);
  const std::string port_str = addr.substr(pos + 1);
  char* end = nullptr;
  const long port = std::strtol(port_str.c_str(), &end, 10);
  if (host.empty() || port_str.empty() || *end != '\0' || port < 0 ||
      port > 65535) {
    fail(Errc::kArgument, "bad address '" + addr + "', want host[:port]");
  }
  return {host, static_cast<uint16_t>(port)};
}

int log_level_from_env() {
  const char* env = std::getenv("OLBSQ_LOG_LEVEL");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0') return 1;
  if (v < 0) v = 0;
  if (v > 3) v = 3;
  return static_cast<int>(v);
}

int cmd_setup(uint32_t m, uint32_t n, const std::string& services_dir,
              const std::string& out_dir) {
  std::vector<std::vector<uint8_t>> services(static_cast<size_t>(m) * n);
  size_t found = 0;
  for (uint32_t row = 1; row <= n; ++row) {
    for (uint32_t col = 1; col <= m; ++col) {
      const fs::path p = fs::path(services_dir) / cell_file_name(col, row);
      if (fs::exists(p)) {
        services[static_cast<size_t>(row - 1) * m + (col - 1)] =
            read_file(p.string());
        ++found;
      }  // absent cells keep their zero-length payload
    }
  }
  SystemRandom rng;
  SetupResult s = setup(m, n, services, rng);

  fs::create_directories(out_dir);
  const fs::path cat_path = fs::path(out_dir) / kCatalogName;
  const fs::path key_path = fs::path(out_dir) / kKeyName;
  write_catalog_file(cat_path.string(), s.pp, s.catalog);
  write_secret_key_file(key_path.string(), s.sk);

  std::printf("grid %ux%u: %zu of %u cells from %s, rest empty\n", m, n,
              found, m * n, services_dir.c_str());
  std::printf("public catalog: %s\n", cat_path.c_str());
  std::printf("secret key:     %s\n", key_path.c_str());
  return 0;
}

int cmd_serve(const std::string& listen, const std::string& catalog_path,
              const std::string& key_path, uint32_t max_cells) {
  ProviderConfig cfg;
  std::tie(cfg.listen_host, cfg.listen_port) = split_host_port(listen);
  cfg.catalog_path = catalog_path;
  cfg.key_path = key_path;
  cfg.max_cells = max_cells;
  cfg.log_level = log_level_from_env();
  Server server(cfg);
  std::fprintf(stderr, "listening on %s:%u\n", cfg.listen_host.c_str(),
               server.port());
  server.run();
  return 0;
}

int cmd_query(const std::string& addr, uint32_t i, uint32_t j, uint32_t l,
              uint32_t k, const std::string& catalog_path,
              const std::string& out_dir) {
  auto [host, port] = split_host_port(addr);
  auto [pp, cat] = read_catalog_file(catalog_path);

  SystemRandom rng;
  RecoveredServices rec = run_query(host, port, pp, cat, i, j, l, k, rng);

  fs::create_directories(out_dir);
  for (uint32_t mu = 1; mu <= l; ++mu) {
    for (uint32_t nu = 1; nu <= k; ++nu) {
      const uint32_t col = i + mu, row = j + nu;
      const fs::path p = fs::path(out_dir) / cell_file_name(col, row);
      const auto& payload = rec.payload(mu, nu);
      write_file(p.string(), payload);
      std::printf("cell (col %u, row %u): %zu bytes -> %s\n", col, row,
                  payload.size(), p.c_str());
    }
  }
  return 0;
}

int cmd_bench(uint32_t m, uint32_t n, uint32_t l, uint32_t k) {
  SystemRandom rng;
  std::fprintf(stderr,
               "measuring: fit sweep (8 configurations) + (%u,%u,%u,%u)...\n",
               m, n, l, k);
  std::vector<SweepPoint> sweep = run_sweep(rng);
  sweep.push_back(measure_protocol(m, n, l, k, rng));
  std::fputs(compare_tables(sweep).c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "oblivious location-based service query: provider and user tools"};
  app.require_subcommand(1);

  uint32_t m = 0, n = 0, l = 0, k = 0, i = 0, j = 0;
  std::string services_dir, out_dir, listen, catalog_path, key_path, addr;
  uint32_t max_cells = 4096;

  auto* sc_setup = app.add_subcommand(
      "setup", "encrypt a service grid and write catalog + secret key");
  sc_setup->add_option("m", m, "grid columns")->required();
  sc_setup->add_option("n", n, "grid rows")->required();
  sc_setup
      ->add_option("services_dir", services_dir,
                   "directory of r<row>_c<col>.bin payload files; missing "
                   "cells become zero-length")
      ->required();
  sc_setup->add_option("out_dir", out_dir, "output directory")->required();

  auto* sc_serve =
      app.add_subcommand("serve", "run the provider daemon until killed");
  sc_serve->add_option("--listen", listen, "host[:port] to bind")
      ->default_val("127.0.0.1:7710");
  sc_serve->add_option("--catalog", catalog_path, "public catalog file")
      ->required();
  sc_serve->add_option("--key", key_path, "secret key file")->required();
  sc_serve->add_option("--max-cells", max_cells,
                       "largest rectangle (l*k) served per query");
  sc_serve->footer("log level comes from OLBSQ_LOG_LEVEL (0..3, default 1)");

  auto* sc_query = app.add_subcommand(
      "query", "retrieve an l x k rectangle anchored after cell (i, j)");
  sc_query->add_option("host", addr, "provider host[:port]")->required();
  sc_query->add_option("i", i, "anchor column (rectangle covers i+1..i+l)")
      ->required();
  sc_query->add_option("j", j, "anchor row (rectangle covers j+1..j+k)")
      ->required();
  sc_query->add_option("l", l, "rectangle width")->required();
  sc_query->add_option("k", k, "rectangle height")->required();
  sc_query->add_option("catalog", catalog_path, "public catalog file")
      ->required();
  sc_query->add_option("--out", out_dir, "directory for recovered cells")
      ->default_val(".");

  auto* sc_bench = app.add_subcommand(
      "bench", "measure operation counts and compare to the cost model");
  sc_bench->add_option("m", m, "grid columns")->required();
  sc_bench->add_option("n", n, "grid rows")->required();
  sc_bench->add_option("l", l, "rectangle width")->required();
  sc_bench->add_option("k", k, "rectangle height")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sc_setup->parsed()) return cmd_setup(m, n, services_dir, out_dir);
    if (sc_serve->parsed())
      return cmd_serve(listen, catalog_path, key_path, max_cells);
    if (sc_query->parsed())
      return cmd_query(addr, i, j, l, k, catalog_path, out_dir);
    if (sc_bench->parsed()) return cmd_bench(m, n, l, k);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.code() == Errc::kProtocol ? 2 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
