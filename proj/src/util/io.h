// util/io.h

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

#ifndef XLTTS_UTIL_IO_H_
#define XLTTS_UTIL_IO_H_

#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace xltts {

#define XLTTS_CHECK(cond, msg)                                        \
  do {                                                                \
    if (!(cond)) {                                                    \
      std::ostringstream xltts_check_os_;                             \
      xltts_check_os_ << __func__ << ": " << msg;                     \
      throw std::runtime_error(xltts_check_os_.str());                \
    }                                                                 \
  } while (0)

// All binary artifacts are little-endian; refuse to run elsewhere rather
// than silently emit byte-swapped files.
void RequireLittleEndian();

void WriteU32(std::ostream& os, uint32_t x);
void WriteU64(std::ostream& os, uint64_t x);
void WriteF64(std::ostream& os, double x);
void WriteString(std::ostream& os, const std::string& s);
uint32_t ReadU32(std::istream& is);
uint64_t ReadU64(std::istream& is);
double ReadF64(std::istream& is);
std::string ReadString(std::istream& is);

std::string ReadWholeFile(const std::string& path);
void WriteWholeFile(const std::string& path, const std::string& content);
uint64_t HashFile(const std::string& path);
bool FileExists(const std::string& path);

// Static-partition parallel loop over [0, n); every task writes only its own
// slot so the result is identical for any worker count. workers <= 1 runs
// inline.
void ParallelFor(int n, int workers, const std::function<void(int)>& fn);

// Worker count from the XLTTS_WORKERS environment variable (default 1).
int WorkerCountFromEnv();

}  // namespace xltts

#endif  // XLTTS_UTIL_IO_H_
