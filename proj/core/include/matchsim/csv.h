// Copyright 2026 The matchsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MATCHSIM_CSV_H_
#define MATCHSIM_CSV_H_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "matchsim/market.h"

namespace matchsim {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shortest decimal text that reads back to the same double; '.' separator
// regardless of locale.
std::string FormatNumber(double value);
std::string FormatNumber(std::int64_t value);

// Components joined with ';' (a single number for one dimension).
std::string FormatAttributes(const AttributeVector& attributes);

// RFC 4180 quoting: fields with a comma, quote, CR or LF are wrapped in
// quotes and inner quotes are doubled.
std::string QuoteCsvField(std::string_view field);

// UTF-8, LF-terminated CSV file with a mandatory header row.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path,
            std::vector<std::string> header);

  void WriteRow(const std::vector<std::string>& fields);
  std::size_t rows() const { return rows_; }
  const std::filesystem::path& path() const { return path_; }
  // Flushes and reports write failures as IoError.
  void Close();

 private:
  void WriteLine(const std::vector<std::string>& fields);

  std::filesystem::path path_;
  std::size_t columns_;
  std::size_t rows_ = 0;
  std::ofstream out_;
};

}  // namespace matchsim

#endif  // MATCHSIM_CSV_H_
