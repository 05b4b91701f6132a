// util/io.cc

// Copyright 2026  xltts authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "util/io.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <thread>

#include "util/rng.h"

namespace xltts {

void RequireLittleEndian() {
  const uint32_t probe = 1;
  unsigned char b;
  std::memcpy(&b, &probe, 1);
  if (b != 1) throw std::runtime_error("little-endian host required");
}

void WriteU32(std::ostream& os, uint32_t x) {
  os.write(reinterpret_cast<const char*>(&x), sizeof(x));
}
void WriteU64(std::ostream& os, uint64_t x) {
  os.write(reinterpret_cast<const char*>(&x), sizeof(x));
}
void WriteF64(std::ostream& os, double x) {
  os.write(reinterpret_cast<const char*>(&x), sizeof(x));
}
void WriteString(std::ostream& os, const std::string& s) {
  WriteU32(os, static_cast<uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

uint32_t ReadU32(std::istream& is) {
  uint32_t x = 0;
  is.read(reinterpret_cast<char*>(&x), sizeof(x));
  XLTTS_CHECK(is.good(), "unexpected end of stream");
  return x;
}
uint64_t ReadU64(std::istream& is) {
  uint64_t x = 0;
  is.read(reinterpret_cast<char*>(&x), sizeof(x));
  XLTTS_CHECK(is.good(), "unexpected end of stream");
  return x;
}
double ReadF64(std::istream& is) {
  double x = 0;
  is.read(reinterpret_cast<char*>(&x), sizeof(x));
  XLTTS_CHECK(is.good(), "unexpected end of stream");
  return x;
}
std::string ReadString(std::istream& is) {
  uint32_t n = ReadU32(is);
  std::string s(n, '\0');
  is.read(s.data(), n);
  XLTTS_CHECK(is.good(), "unexpected end of stream");
  return s;
}

std::string ReadWholeFile(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  XLTTS_CHECK(is.good(), "cannot open " << path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void WriteWholeFile(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  XLTTS_CHECK(os.good(), "cannot write " << path);
  os.write(content.data(), static_cast<std::streamsize>(content.size()));
  XLTTS_CHECK(os.good(), "write failed for " << path);
}

uint64_t HashFile(const std::string& path) {
  std::string content = ReadWholeFile(path);
  return Fnv1a64(content);
}

bool FileExists(const std::string& path) {
  return std::filesystem::exists(path);
}

void ParallelFor(int n, int workers, const std::function<void(int)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  int w = std::min(workers, n);
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (int t = 0; t < w; ++t) {
    pool.emplace_back([&, t]() {
      for (int i = t; i < n; i += w) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

int WorkerCountFromEnv() {
  const char* env = std::getenv("XLTTS_WORKERS");
  if (env == nullptr) return 1;
  int w = std::atoi(env);
  return w < 1 ? 1 : w;
}

}  // namespace xltts
