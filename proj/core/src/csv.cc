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

#include "matchsim/csv.h"

#include <array>
#include <charconv>

namespace matchsim {

std::string FormatNumber(double value) {
  if (value == 0.0) return "0";  // folds -0
  std::array<char, 64> buffer{};
  auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(),
                                 value);
  if (ec != std::errc()) throw IoError("cannot format number");
  return std::string(buffer.data(), end);
}

std::string FormatNumber(std::int64_t value) { return std::to_string(value); }

std::string FormatAttributes(const AttributeVector& attributes) {
  std::string text;
  for (std::size_t i = 0; i < attributes.dimension(); ++i) {
    if (i > 0) text += ';';
    text += FormatNumber(attributes[i]);
  }
  return text;
}

std::string QuoteCsvField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     std::vector<std::string> header)
    : path_(path), columns_(header.size()) {
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  WriteLine(header);
}

void CsvWriter::WriteRow(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) {
    throw ContractViolation("CSV row width does not match the header of " +
                            path_.string());
  }
  WriteLine(fields);
  ++rows_;
}

void CsvWriter::WriteLine(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out_.put(',');
    out_ << QuoteCsvField(fields[i]);
  }
  out_.put('\n');
  if (!out_) throw IoError("write failed for " + path_.string());
}

void CsvWriter::Close() {
  out_.flush();
  if (!out_) throw IoError("write failed for " + path_.string());
  out_.close();
}

}  // namespace matchsim
