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

#include "lidarsel/cli.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "lidarsel/completion.h"
#include "lidarsel/depth_frame.h"
#include "lidarsel/errors.h"
#include "lidarsel/geometry.h"
#include "lidarsel/io.h"
#include "lidarsel/kernel_shap.h"
#include "lidarsel/numeric.h"
#include "lidarsel/scene.h"
#include "lidarsel/selection.h"

#ifndef LIDARSEL_VERSION
#define LIDARSEL_VERSION "0.0.0"
#endif

namespace lidarsel::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr std::uint64_t kGenerateStream = 0x67656eULL;
constexpr int kDefaultSamples = 350;

// Resolved settings of one run, in the order they are echoed back.
class RunRecord {
 public:
  explicit RunRecord(std::string command) : command_(std::move(command)) {}

  void set(const std::string& key, const std::string& value) {
    config_[key] = value;
  }
  void set(const std::string& key, std::int64_t value) {
    config_[key] = value;
  }
  void set_u64(const std::string& key, std::uint64_t value) {
    config_[key] = value;
  }
  void set(const std::string& key, double value) {
    config_[key] = format_number(value);
  }
  void set(const std::string& key, const std::vector<double>& values) {
    ordered_json list = ordered_json::array();
    for (double v : values) list.push_back(format_number(v));
    config_[key] = list;
  }
  void set_seed(std::uint64_t seed) {
    seed_ = seed;
    config_["seed"] = seed;
  }
  void add_input(const fs::path& path) { inputs_.push_back(path); }
  void add_output(const fs::path& path) { outputs_.push_back(path); }

  // Arguments that reproduce the run when passed after the command name.
  std::vector<std::string> argv() const {
    std::vector<std::string> out;
    for (const auto& [key, value] : config_.items()) {
      out.push_back("--" + key);
      if (value.is_array()) {
        for (const auto& v : value) out.push_back(scalar(v));
      } else {
        out.push_back(scalar(value));
      }
    }
    return out;
  }

  void write(const fs::path& path) const {
    ordered_json doc;
    doc["command"] = command_;
    doc["version"] = LIDARSEL_VERSION;
    doc["seed"] = seed_;
    doc["config"] = config_;
    doc["argv"] = argv();
    ordered_json inputs = ordered_json::array();
    for (const fs::path& p : inputs_) {
      inputs.push_back({{"path", p.string()}, {"sha256", sha256_file(p)}});
    }
    doc["inputs"] = inputs;
    ordered_json outputs = ordered_json::array();
    for (const fs::path& p : outputs_) {
      outputs.push_back({{"path", p.string()}, {"sha256", sha256_file(p)}});
    }
    doc["outputs"] = outputs;
    doc["timestamp"] = timestamp();
    write_text_file(path, doc.dump(2) + "\n");
  }

 private:
  static std::string scalar(const ordered_json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  }
  static std::string timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", tm.tm_year + 1900,
                       tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min,
                       tm.tm_sec);
  }

  std::string command_;
  ordered_json config_ = ordered_json::object();
  std::uint64_t seed_ = 0;
  std::vector<fs::path> inputs_;
  std::vector<fs::path> outputs_;
};

fs::path sidecar_manifest(const fs::path& output) {
  return fs::path(output.string() + ".manifest.json");
}

// Rounds to `decimals` places and drops trailing zeros: 0.10 -> "0.1".
std::string trimmed_fixed(double value, int decimals) {
  std::string s = fmt::format("{:.{}f}", value, decimals);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

// Three significant figures, the layout of the printed distance table.
std::string three_figures(double value) {
  if (std::fabs(value) >= 1000.0) return fmt::format("{:.0f}", value);
  return fmt::format("{:.3g}", value);
}

std::string rmse_text(double v) { return fmt::format("{:.3f}", v); }

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string spec;
  std::string out;
  int count = 1;
  std::optional<std::uint64_t> seed;
  std::optional<int> random_obstacles;
  int columns = 64;
  int rows_per_line = 2;
  double max_range_m = 300.0;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  SceneSpec spec;
  if (!a.spec.empty()) spec = load_scene_spec(a.spec);
  if (a.random_obstacles) spec.random_obstacles = *a.random_obstacles;
  spec.validate();
  if (a.count < 0) throw ValidationError("count", "must be >= 0");
  SensorConfig sensor;
  sensor.columns = a.columns;
  sensor.rows_per_line = a.rows_per_line;
  sensor.max_range_m = a.max_range_m;
  sensor.height_m = spec.ground_height_m;
  sensor.validate();
  const std::uint64_t seed = a.seed.value_or(spec.seed);

  RunRecord record("generate");
  if (!a.spec.empty()) {
    record.set("spec", a.spec);
    record.add_input(a.spec);
  }
  record.set("out", a.out);
  record.set("count", std::int64_t{a.count});
  record.set("random-obstacles", std::int64_t{spec.random_obstacles});
  record.set("columns", std::int64_t{a.columns});
  record.set("rows-per-line", std::int64_t{a.rows_per_line});
  record.set("max-range-m", a.max_range_m);
  record.set_seed(seed);

  const fs::path dir(a.out);
  fs::create_directories(dir);
  for (int i = 0; i < a.count; ++i) {
    const DepthFrame frame =
        generate_scene(spec, sensor, derive_seed(seed, kGenerateStream, i));
    const fs::path path =
        dir / fmt::format("frame_{:04}{}", i, kFrameExtension);
    save_frame(path.string(), frame);
    record.add_output(path);
  }
  record.write(dir / "manifest.json");
  fmt::print(out, "wrote {} frame(s) to {}\n", a.count, dir.string());
  return kExitOk;
}

// -------------------------------------------------------------------- rank

struct RankArgs {
  std::string frames;
  std::string mode = "local";
  std::optional<int> samples;
  int max_samples = 20000;
  std::string scheme = "size_stratified";
  double pin_weight = kDefaultPinWeight;
  std::uint64_t seed = 0;
  std::string out;
};

void print_ranking(std::ostream& out, const std::string& title,
                   const ShapleyRanking& ranking, int shown) {
  fmt::print(out, "{}\n{:>6} {:>6} {:>16}\n", title, "rank", "line", "phi_mm");
  for (int pos = 0; pos < std::min(shown, ranking.n_lines()); ++pos) {
    const LineId line = ranking.order[pos];
    fmt::print(out, "{:>6} {:>6} {:>16.3f}\n", pos + 1, line,
               ranking.value(line));
  }
}

int cmd_rank(const RankArgs& a, std::ostream& out) {
  const RankingMode mode = parse_ranking_mode(a.mode);
  const auto files = list_frame_files(a.frames);
  const auto frames = load_frames(files);

  SamplerConfig config;
  config.scheme = parse_sampling_scheme(a.scheme);
  config.seed = a.seed;
  config.pin_weight = a.pin_weight;
  if (!(a.pin_weight > 0)) throw ValidationError("pin-weight", "must be > 0");
  if (a.max_samples < 1) throw ValidationError("max-samples", "must be >= 1");
  if (mode == RankingMode::kLocal) {
    config.n_samples = a.samples.value_or(kDefaultSamples);
  } else {
    const long long pooled =
        static_cast<long long>(kDefaultSamples) * frames.size();
    config.n_samples = a.samples.value_or(
        static_cast<int>(std::min<long long>(pooled, a.max_samples)));
  }
  if (config.n_samples < 1) throw ValidationError("samples", "must be >= 1");

  RunRecord record("rank");
  record.set("frames", a.frames);
  record.set("mode", to_string(mode));
  record.set("samples", std::int64_t{config.n_samples});
  record.set("max-samples", std::int64_t{a.max_samples});
  record.set("scheme", to_string(config.scheme));
  record.set("pin-weight", a.pin_weight);
  record.set_seed(a.seed);
  record.set("out", a.out);
  for (const auto& f : files) record.add_input(f);

  const fs::path dir(a.out);
  fs::create_directories(dir);
  if (mode == RankingMode::kGlobal) {
    const ShapleyRanking ranking = rank_lines_global(frames, config);
    const fs::path path = dir / "ranking_global.csv";
    write_ranking_csv(path, ranking);
    record.add_output(path);
    print_ranking(out, fmt::format("global ranking over {} frame(s)",
                                   frames.size()),
                  ranking, 16);
  } else {
    fmt::print(out, "{:<24} {}\n", "frame", "top-8 lines");
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const ShapleyRanking ranking = rank_lines_local(frames[i], config);
      const fs::path path =
          dir / ("ranking_" + files[i].stem().string() + ".csv");
      write_ranking_csv(path, ranking);
      record.add_output(path);
      const Selection top = select_top_k(ranking, std::min(8, ranking.n_lines()));
      fmt::print(out, "{:<24} {}\n", files[i].filename().string(),
                 format_line_config(top.lines));
    }
  }
  record.write(dir / "manifest.json");
  return kExitOk;
}

// ------------------------------------------------------------------ select

struct SelectArgs {
  std::string ranking;
  std::string method = "shapley-top";
  int budget = 8;
  int gap = 1;
  int spread = 8;
  int candidates = 350;
  std::string weighting = "softmax";
  std::optional<double> temperature;
  std::string frames;
  std::optional<int> n_lines;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_select(const SelectArgs& a, std::ostream& out) {
  SelectionConfig config;
  config.method = parse_selection_method(a.method);
  config.budget = a.budget;
  config.min_gap = a.gap;
  config.spread_budget = a.spread;
  config.flexible.n_candidates = a.candidates;
  config.flexible.weighting = parse_candidate_weighting(a.weighting);
  config.flexible.temperature = a.temperature;
  config.seed = a.seed;
  config.validate();

  RunRecord record("select");
  const bool needs_ranking = config.method != SelectionMethod::kSpaced &&
                             config.method != SelectionMethod::kRandom;
  ShapleyRanking ranking;
  if (!a.ranking.empty()) {
    ranking = read_ranking_csv(a.ranking);
    record.set("ranking", a.ranking);
    record.add_input(a.ranking);
  } else if (needs_ranking) {
    throw ValidationError("ranking", "method " + to_string(config.method) +
                                         " needs --ranking");
  }

  std::vector<DepthFrame> frames;
  if (!a.frames.empty()) {
    const auto files = list_frame_files(a.frames);
    frames = load_frames(files);
    record.set("frames", a.frames);
    for (const auto& f : files) record.add_input(f);
  }

  int n_lines = kMaxLines;
  if (!a.ranking.empty()) {
    n_lines = ranking.n_lines();
  } else if (!frames.empty()) {
    n_lines = frames.front().n_lines();
  }
  if (a.n_lines) {
    if (*a.n_lines != n_lines && (!a.ranking.empty() || !frames.empty())) {
      throw ValidationError("n-lines", "disagrees with the inputs");
    }
    n_lines = *a.n_lines;
  }
  if (!frames.empty() && frames.front().n_lines() != n_lines) {
    throw ValidationError("frames", "line count differs from the ranking");
  }
  if (!needs_ranking && a.ranking.empty()) {
    // Baselines only need the line count.
    ranking = rank_from_values(std::vector<double>(n_lines, 0.0));
  }

  std::optional<Game> game;
  if (!frames.empty()) game = make_pooled_game(frames);

  record.set("method", to_string(config.method));
  record.set("budget", std::int64_t{config.budget});
  record.set("gap", std::int64_t{config.min_gap});
  record.set("spread", std::int64_t{config.spread_budget});
  record.set("candidates", std::int64_t{config.flexible.n_candidates});
  record.set("weighting", to_string(config.flexible.weighting));
  if (a.temperature) record.set("temperature", *a.temperature);
  record.set("n-lines", std::int64_t{n_lines});
  record.set_seed(a.seed);
  if (!a.out.empty()) record.set("out", a.out);

  Selection selection;
  std::optional<FlexibleResult> flexible;
  if (config.method == SelectionMethod::kSasFlexible && game) {
    flexible = sas_flexible_search(ranking, config.budget,
                                   config.spread_budget, *game, config.seed,
                                   config.flexible);
    selection = flexible->selection;
  } else {
    selection = select_lines(config, ranking, game ? &*game : nullptr);
  }
  const SpreadStats stats = spread_stats(selection, n_lines);
  std::optional<double> rmse_mm;
  if (game) rmse_mm = (*game)(Coalition::FromLines(n_lines, selection.lines));

  int min_distance = 0;
  for (std::size_t i = 1; i < selection.lines.size(); ++i) {
    const int d = selection.lines[i] - selection.lines[i - 1];
    min_distance = i == 1 ? d : std::min(min_distance, d);
  }

  fmt::print(out, "{}\n", format_line_config(selection.lines));
  fmt::print(out, "method {} | budget {} | region {} (lines {}..{}) | spread {}",
             to_string(config.method), selection.budget, stats.region_size,
             stats.min_line, stats.max_line, stats.spread);
  if (selection.lines.size() > 1) {
    fmt::print(out, " | min pairwise distance {}", min_distance);
  }
  if (rmse_mm) fmt::print(out, " | rmse {} mm", rmse_text(*rmse_mm));
  if (flexible) {
    fmt::print(out, " | survivors {}/{}", flexible->survivors,
               config.flexible.n_candidates);
    if (flexible->fallback) fmt::print(out, " (fallback: ranking prefix)");
  }
  fmt::print(out, "\n");

  if (!a.out.empty()) {
    const fs::path path(a.out);
    write_text_file(path,
                    selection_record_json(selection, stats, rmse_mm) + "\n");
    record.add_output(path);
    record.write(sidecar_manifest(path));
  }
  return kExitOk;
}

// -------------------------------------------------------------------- eval

struct EvalArgs {
  std::string lines;
  std::string frames;
  std::string out;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const auto files = list_frame_files(a.frames);
  const auto frames = load_frames(files);
  const Selection selection =
      parse_line_config(a.lines, frames.front().n_lines());

  std::string csv = "frame,rmse_mm\n";
  fmt::print(out, "{:<24} {:>14}\n", "frame", "rmse_mm");
  CompensatedSum total;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const double e = rmse(complete_depth(frames[i], selection.lines),
                          frames[i].ground_truth);
    total.add(e);
    const std::string name = files[i].filename().string();
    csv += name + ',' + format_number(e) + '\n';
    fmt::print(out, "{:<24} {:>14}\n", name, rmse_text(e));
  }
  const double mean = total.value() / static_cast<double>(frames.size());
  csv += "mean," + format_number(mean) + '\n';
  fmt::print(out, "{:<24} {:>14}\n", "mean", rmse_text(mean));

  if (!a.out.empty()) {
    RunRecord record("eval");
    record.set("lines", format_line_config(selection.lines));
    record.set("frames", a.frames);
    record.set("out", a.out);
    for (const auto& f : files) record.add_input(f);
    const fs::path path(a.out);
    write_text_file(path, csv);
    record.add_output(path);
    record.write(sidecar_manifest(path));
  }
  return kExitOk;
}

// ------------------------------------------------------------------- sweep

struct SweepArgs {
  std::string frames;
  int n_selected = 8;
  int trials = 15;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const auto files = list_frame_files(a.frames);
  const auto frames = load_frames(files);
  const auto rows = sweep_spread(frames, a.n_selected, a.trials, a.seed);

  std::string csv = "spread,region_size,mean_rmse_mm,std_rmse_mm\n";
  fmt::print(out, "{:>7} {:>7} {:>14} {:>14}\n", "spread", "region",
             "mean_rmse_mm", "std_rmse_mm");
  for (const SpreadSweepRow& r : rows) {
    csv += fmt::format("{},{},{},{}\n", r.spread, r.region_size,
                       format_number(r.mean_rmse), format_number(r.std_rmse));
    fmt::print(out, "{:>7} {:>7} {:>14} {:>14}\n", r.spread, r.region_size,
               rmse_text(r.mean_rmse), rmse_text(r.std_rmse));
  }
  if (!a.out.empty()) {
    RunRecord record("sweep");
    record.set("frames", a.frames);
    record.set("n-selected", std::int64_t{a.n_selected});
    record.set("trials", std::int64_t{a.trials});
    record.set_seed(a.seed);
    record.set("out", a.out);
    for (const auto& f : files) record.add_input(f);
    const fs::path path(a.out);
    write_text_file(path, csv);
    record.add_output(path);
    record.write(sidecar_manifest(path));
  }
  return kExitOk;
}

// ---------------------------------------------------------------- geometry

struct GeometryArgs {
  std::vector<double> heights{1.0, 1.5, 2.0, 2.5, 3.0};
  int first_line = 25;
  std::string out;
};

int cmd_geometry(const GeometryArgs& a, std::ostream& out) {
  if (a.heights.empty()) throw ValidationError("heights", "need at least one");
  for (double h : a.heights) {
    if (!(h > 0) || !std::isfinite(h)) {
      throw DomainError("height " + format_number(h) + " must be positive");
    }
  }
  const SensorConfig sensor;
  if (a.first_line < 1 || a.first_line > sensor.n_channels) {
    throw ValidationError("first-line", "outside [1, 64]");
  }

  std::string csv = "line,angle_deg,angle_rad,tan";
  fmt::print(out, "{:>5} {:>6} {:>6} {:>6}", "line", "deg", "rad", "tan");
  for (double h : a.heights) {
    csv += ",h=" + format_number(h);
    fmt::print(out, " {:>8}", "h=" + format_number(h));
  }
  csv += '\n';
  fmt::print(out, "\n");

  for (LineId line = sensor.n_channels; line >= a.first_line; --line) {
    const double deg = depression_angle_deg(line, sensor);
    const double rad = deg_to_rad(deg);
    std::string row = fmt::format("{},{},{},{}", line, format_number(deg),
                                  trimmed_fixed(rad, 2),
                                  trimmed_fixed(std::tan(rad), 2));
    fmt::print(out, "{:>5} {:>6} {:>6} {:>6}", line, format_number(deg),
               trimmed_fixed(rad, 2), trimmed_fixed(std::tan(rad), 2));
    for (double h : a.heights) {
      const auto d = line_ground_distance(line, h, sensor);
      const std::string cell = d ? three_figures(*d) : "none";
      row += ',' + cell;
      fmt::print(out, " {:>8}", cell);
    }
    csv += row + '\n';
    fmt::print(out, "\n");
  }

  if (!a.out.empty()) {
    RunRecord record("geometry");
    record.set("heights", a.heights);
    record.set("first-line", std::int64_t{a.first_line});
    record.set("out", a.out);
    const fs::path path(a.out);
    write_text_file(path, csv);
    record.add_output(path);
    record.write(sidecar_manifest(path));
  }
  return kExitOk;
}

// ------------------------------------------------------------------ replay

struct ReplayArgs {
  std::string manifest;
  std::string out;
};

struct RecordedOutput {
  fs::path path;
  std::string sha256;
};

struct ReplayPlan {
  std::vector<std::string> args;
  std::vector<RecordedOutput> outputs;
};

// Where a recorded output lands when the run's --out moves from `from` to
// `to`: the path itself for file outputs, the same name below `to` for
// directory outputs.
fs::path redirected(const fs::path& output, const std::string& from,
                    const std::string& to) {
  if (to.empty() || from.empty()) return output;
  if (output == fs::path(from)) return to;
  return fs::path(to) / output.lexically_relative(from);
}

ReplayPlan replay_plan(const ReplayArgs& a) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(read_text_file(a.manifest));
  } catch (const ordered_json::exception& e) {
    throw ParseError(a.manifest, std::string("malformed manifest: ") + e.what());
  }
  try {
    for (const auto& input : doc.at("inputs")) {
      const fs::path path = input.at("path").get<std::string>();
      if (sha256_file(path) != input.at("sha256").get<std::string>()) {
        throw InputError("input changed since the recorded run: " +
                         path.string());
      }
    }
    ReplayPlan plan;
    plan.args.push_back(doc.at("command").get<std::string>());
    std::string recorded_out;
    bool replace_next = false;
    for (const auto& token : doc.at("argv")) {
      std::string t = token.get<std::string>();
      if (replace_next) {
        recorded_out = t;
        if (!a.out.empty()) t = a.out;
      }
      replace_next = (t == "--out");
      plan.args.push_back(t);
    }
    for (const auto& output : doc.at("outputs")) {
      plan.outputs.push_back(
          {redirected(output.at("path").get<std::string>(), recorded_out,
                      a.out),
           output.at("sha256").get<std::string>()});
    }
    return plan;
  } catch (const ordered_json::exception& e) {
    throw ParseError(a.manifest, std::string("incomplete manifest: ") + e.what());
  }
}

int cmd_replay(const ReplayArgs& a, std::ostream& out, std::ostream& err) {
  const ReplayPlan plan = replay_plan(a);
  const int code = run_cli(plan.args, out, err);
  if (code != kExitOk) return code;
  int differing = 0;
  for (const RecordedOutput& o : plan.outputs) {
    if (!fs::exists(o.path) || sha256_file(o.path) != o.sha256) {
      err << "error: replayed output differs from the record: "
          << o.path.string() << '\n';
      ++differing;
    }
  }
  if (differing > 0) return kExitNumeric;
  fmt::print(out, "replay: {} output(s) identical to the record\n",
             plan.outputs.size());
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
      return kExitParse;
    case ErrorKind::kValidation:
      return kExitValidation;
    case ErrorKind::kInfeasible:
      return kExitInfeasible;
    case ErrorKind::kNumeric:
      return kExitNumeric;
    case ErrorKind::kInput:
      return kExitInput;
  }
  return kExitNumeric;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Shapley-value lidar line ranking and selection", "lidarsel"};
  app.set_config("--config", "", "INI/TOML file with option defaults");
  app.set_version_flag("--version", LIDARSEL_VERSION);
  app.require_subcommand(1);

  std::function<int()> action;

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate synthetic frames");
  generate->add_option("--spec", gen.spec, "Scene specification (JSON)");
  generate->add_option("--out", gen.out, "Output directory")->required();
  generate->add_option("--count", gen.count, "Number of frames")
      ->capture_default_str();
  generate->add_option("--seed", gen.seed,
                       "Seed (default: the specification's seed)");
  generate->add_option("--random-obstacles", gen.random_obstacles,
                       "Random obstacles per frame (overrides the spec)");
  generate->add_option("--columns", gen.columns, "Image columns")
      ->capture_default_str();
  generate->add_option("--rows-per-line", gen.rows_per_line,
                       "Image rows per line spacing")
      ->capture_default_str();
  generate->add_option("--max-range-m", gen.max_range_m, "Sensor range")
      ->capture_default_str();
  generate->callback([&] { action = [&] { return cmd_generate(gen, out); }; });

  RankArgs rk;
  auto* rank = app.add_subcommand("rank", "Estimate per-line Shapley values");
  rank->add_option("--frames", rk.frames, "Frame directory")->required();
  rank->add_option("--mode", rk.mode, "global | local")->capture_default_str();
  rank->add_option("--samples", rk.samples,
                   "Sampled coalitions (default 350, or 350 per frame in "
                   "global mode up to --max-samples)");
  rank->add_option("--max-samples", rk.max_samples, "Global-mode ceiling")
      ->capture_default_str();
  rank->add_option("--scheme", rk.scheme,
                   "size_stratified | bernoulli_half | exhaustive")
      ->capture_default_str();
  rank->add_option("--pin-weight", rk.pin_weight,
                   "Weight of the empty and full rows (inf: exact)")
      ->capture_default_str();
  rank->add_option("--seed", rk.seed, "Sampling seed")->capture_default_str();
  rank->add_option("--out", rk.out, "Output directory")->required();
  rank->callback([&] { action = [&] { return cmd_rank(rk, out); }; });

  SelectArgs sel;
  auto* select = app.add_subcommand("select", "Select a budget of lines");
  select->add_option("--ranking", sel.ranking, "Ranking CSV from `rank`");
  select->add_option("--method", sel.method,
                     "shapley-top | spaced | random | sas-constant | "
                     "sas-flexible")
      ->capture_default_str();
  select->add_option("--budget", sel.budget, "Lines to select")
      ->capture_default_str();
  select->add_option("--gap", sel.gap, "Minimum gap k (sas-constant)")
      ->capture_default_str();
  select->add_option("--spread", sel.spread, "Spread budget s (sas-flexible)")
      ->capture_default_str();
  select->add_option("--candidates", sel.candidates,
                     "Candidate draws (sas-flexible)")
      ->capture_default_str();
  select->add_option("--weighting", sel.weighting, "softmax | linear")
      ->capture_default_str();
  select->add_option("--temperature", sel.temperature,
                     "Softmax temperature in rank positions (default: budget)");
  select->add_option("--frames", sel.frames,
                     "Frame directory (scores candidates, reports RMSE)");
  select->add_option("--n-lines", sel.n_lines,
                     "Line count when no ranking or frames are given");
  select->add_option("--seed", sel.seed, "Seed")->capture_default_str();
  select->add_option("--out", sel.out, "Selection record (JSON)");
  select->callback([&] { action = [&] { return cmd_select(sel, out); }; });

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "RMSE of a line configuration");
  eval->add_option("--lines", ev.lines, "Configuration, e.g. 16-32-48-64")
      ->required();
  eval->add_option("--frames", ev.frames, "Frame directory")->required();
  eval->add_option("--out", ev.out, "Per-frame RMSE table (CSV)");
  eval->callback([&] { action = [&] { return cmd_eval(ev, out); }; });

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "RMSE as a function of spread");
  sweep->add_option("--frames", sw.frames, "Frame directory")->required();
  sweep->add_option("--n-selected", sw.n_selected, "Lines kept")
      ->capture_default_str();
  sweep->add_option("--trials", sw.trials, "Random draws per spread")
      ->capture_default_str();
  sweep->add_option("--seed", sw.seed, "Seed")->capture_default_str();
  sweep->add_option("--out", sw.out, "Sweep table (CSV)");
  sweep->callback([&] { action = [&] { return cmd_sweep(sw, out); }; });

  GeometryArgs geo;
  auto* geometry =
      app.add_subcommand("geometry", "Ground distance reached by each line");
  geometry->add_option("--heights", geo.heights, "Sensor heights (m)")
      ->capture_default_str();
  geometry->add_option("--first-line", geo.first_line, "Lowest line listed")
      ->capture_default_str();
  geometry->add_option("--out", geo.out, "Distance table (CSV)");
  geometry->callback([&] { action = [&] { return cmd_geometry(geo, out); }; });

  ReplayArgs rp;
  auto* replay = app.add_subcommand("replay", "Re-run a recorded invocation");
  replay->add_option("--manifest", rp.manifest, "Run manifest")->required();
  replay->add_option("--out", rp.out, "Redirect the output path");
  replay->callback([&] {
    action = [&] { return cmd_replay(rp, out, err); };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    const int code = app.exit(e, out, msg);
    err << msg.str();
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    return action ? action() : kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace lidarsel::cli
