// Copyright 2026 The lidarsel Authors
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

#include "lidarsel/io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "lidarsel/errors.h"

namespace lidarsel::cli {

namespace fs = std::filesystem;

std::vector<fs::path> list_frame_files(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw InputError("frame directory not found: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == kFrameExtension) {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) {
    throw InputError("no *" + std::string(kFrameExtension) + " frame in " +
                     dir.string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<DepthFrame> load_frames(const std::vector<fs::path>& files) {
  std::vector<DepthFrame> frames;
  frames.reserve(files.size());
  for (const fs::path& f : files) frames.push_back(load_frame(f.string()));
  for (const DepthFrame& f : frames) {
    if (f.n_lines() != frames.front().n_lines()) {
      throw ValidationError("frames", "frames disagree on the line count");
    }
  }
  return frames;
}

std::string format_ranking_csv(const ShapleyRanking& ranking) {
  std::string out = "line,phi_mm,rank\n";
  for (std::size_t pos = 0; pos < ranking.order.size(); ++pos) {
    const LineId line = ranking.order[pos];
    out += std::to_string(line) + ',' + format_number(ranking.value(line)) +
           ',' + std::to_string(pos + 1) + '\n';
  }
  return out;
}

void write_ranking_csv(const fs::path& path, const ShapleyRanking& ranking) {
  write_text_file(path, format_ranking_csv(ranking));
}

ShapleyRanking read_ranking_csv(const fs::path& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line) || line != "line,phi_mm,rank") {
    throw ParseError(line, "ranking file must start with 'line,phi_mm,rank'");
  }
  struct Row {
    LineId line;
    double phi;
    int rank;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string a, b, c;
    if (!std::getline(fields, a, ',') || !std::getline(fields, b, ',') ||
        !std::getline(fields, c)) {
      throw ParseError(line, "expected three comma-separated fields");
    }
    Row row{};
    auto parse_int = [&line](const std::string& s, int& v) {
      const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size()) {
        throw ParseError(s, "malformed integer in ranking row '" + line + "'");
      }
    };
    parse_int(a, row.line);
    parse_int(c, row.rank);
    try {
      std::size_t used = 0;
      row.phi = std::stod(b, &used);
      if (used != b.size()) throw std::invalid_argument(b);
    } catch (const std::exception&) {
      throw ParseError(b, "malformed phi value");
    }
    rows.push_back(row);
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw ParseError(path.string(), "empty ranking");
  ShapleyRanking ranking;
  ranking.values.assign(n, 0.0);
  ranking.order.assign(n, 0);
  std::vector<bool> seen_line(n + 1, false), seen_rank(n + 1, false);
  for (const Row& r : rows) {
    if (r.line < 1 || r.line > n || seen_line[r.line]) {
      throw ValidationError("line", "ranking lines must be a permutation of "
                                    "1.." + std::to_string(n));
    }
    if (r.rank < 1 || r.rank > n || seen_rank[r.rank]) {
      throw ValidationError("rank", "ranks must be a permutation of 1.." +
                                        std::to_string(n));
    }
    seen_line[r.line] = seen_rank[r.rank] = true;
    ranking.values[r.line - 1] = r.phi;
    ranking.order[r.rank - 1] = r.line;
  }
  return ranking;
}

std::string sha256_file(const fs::path& path) {
  const std::string data = read_text_file(path);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw InputError("SHA-256 failed for " + path.string());
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("write failed for " + path.string());
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace lidarsel::cli
