// util/csv.h

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

#ifndef XLTTS_UTIL_CSV_H_
#define XLTTS_UTIL_CSV_H_

#include <fstream>
#include <string>
#include <vector>

namespace xltts {

// Append-oriented CSV writer. Numeric cells are printed with %.12g so files
// round-trip exactly enough for artifact hashing.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  void WriteRow(const std::vector<std::string>& cells);
  void Flush();

  static std::string Num(double x);

 private:
  std::ofstream os_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int ColumnIndex(const std::string& name) const;
};

CsvTable ReadCsv(const std::string& path);

}  // namespace xltts

#endif  // XLTTS_UTIL_CSV_H_
