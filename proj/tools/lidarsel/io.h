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

// File-level helpers shared by the CLI commands: frame directories, ranking
// tables and content digests.

#ifndef LIDARSEL_TOOLS_IO_H_
#define LIDARSEL_TOOLS_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "lidarsel/depth_frame.h"
#include "lidarsel/game.h"

namespace lidarsel::cli {

inline constexpr const char* kFrameExtension = ".depth";

// Frame files directly inside `dir`, sorted by file name. Throws InputError
// when the directory is missing or holds no frame.
std::vector<std::filesystem::path> list_frame_files(
    const std::filesystem::path& dir);

std::vector<DepthFrame> load_frames(
    const std::vector<std::filesystem::path>& files);

// "line,phi_mm,rank" rows in rank order. phi is written in shortest
// round-trip form, so reading the file back restores the exact values.
std::string format_ranking_csv(const ShapleyRanking& ranking);
void write_ranking_csv(const std::filesystem::path& path,
                       const ShapleyRanking& ranking);
ShapleyRanking read_ranking_csv(const std::filesystem::path& path);

// Lowercase hex SHA-256 of the file contents.
std::string sha256_file(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path,
                     const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace lidarsel::cli

#endif  // LIDARSEL_TOOLS_IO_H_
