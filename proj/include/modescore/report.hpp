/// @file
/// @brief File and corpus analysis: report rows, histograms, CSV/JSON output.

#ifndef MODESCORE_REPORT_HPP
#define MODESCORE_REPORT_HPP

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "modescore/events.hpp"
#include "modescore/extractor.hpp"
#include "modescore/preprocess.hpp"
#include "modescore/scorer.hpp"
#include "modescore/smf_reader.hpp"
#include "modescore/theory.hpp"

namespace modescore {

enum class OutputFormat { Csv, Json };

struct AnalysisConfig {
  TransitionPolicy policy{};
  double classify_threshold = 0.3;  // placeholder default; tune per corpus
  Direction direction = Direction::LowIsMachine;
  int histogram_bins = 20;
  OutputFormat format = OutputFormat::Csv;
  unsigned workers = 0;  // 0 = pick from hardware concurrency
};

/// One output line of a batch run. Exactly one of (score fields, error) is
/// meaningful, switched by `ok`.
struct ReportRow {
  std::string path;
  bool ok = false;
  ProvenanceScore score;
  int bar_count = 0;
  std::string main_mode;
  Label label = Label::Machine;
  std::string error;
};

/// Full pipeline artifacts for one file; the audit trail behind a ReportRow.
struct MelodyAnalysis {
  TimeGrid grid;
  std::vector<std::string> warnings;
  std::vector<TrackInfo> track_infos;
  int melody_track = -1;
  std::vector<Bar> bars;
  BarAnalysis analysis;
};

/// Decode + classify + clean + segment + extract + score. Throws ParseError,
/// AnalysisError, IoError.
inline MelodyAnalysis analyzeSmfData(const SmfData& smf, const TransitionPolicy& policy = {}) {
  MelodyAnalysis result;
  result.grid = smf.grid;
  result.warnings = smf.warnings;
  result.track_infos = classifyTracks(smf.tracks);
  result.melody_track = melodyTrackIndex(result.track_infos);
  auto cleaned = cleanNotes(smf.tracks[static_cast<std::size_t>(result.melody_track)]);
  result.bars = segmentBars(cleaned, smf.grid);
  result.analysis = analyzeBars(result.bars, policy);
  return result;
}

inline MelodyAnalysis analyzeMidiFile(const std::filesystem::path& path,
                                      const TransitionPolicy& policy = {}) {
  return analyzeSmfData(parseSmfFile(path), policy);
}

/// Row-producing analysis. Never throws: every failure becomes the row's
/// error note so one bad file cannot abort a batch.
inline ReportRow analyzeFile(const std::filesystem::path& path, const AnalysisConfig& config) {
  ReportRow row;
  row.path = path.generic_string();
  try {
    MelodyAnalysis m = analyzeMidiFile(path, config.policy);
    row.ok = true;
    row.score = m.analysis.score;
    row.bar_count = static_cast<int>(m.bars.size());
    row.main_mode = m.bars.empty() ? "" : modeName(m.analysis.ranking.head());
    row.label = classifyScore(m.analysis.score, config.classify_threshold, config.direction);
  } catch (const ParseError& e) {
    row.error = e.kindName();
  } catch (const AnalysisError& e) {
    row.error = e.kindName();
  } catch (const IoError&) {
    row.error = "IoError";
  } catch (const std::exception& e) {
    row.error = std::string("Error: ") + e.what();
  }
  return row;
}

struct Histogram {
  int bins = 20;
  std::vector<int> counts;
  int total = 0;

  explicit Histogram(int bin_count = 20)
      : bins(std::max(1, bin_count)), counts(static_cast<std::size_t>(std::max(1, bin_count))) {}

  /// Bin index computed on the exact ratio so 1.0 lands in the last bin.
  void add(const ProvenanceScore& score) {
    long long idx = 0;
    if (score.transition_count > 0) {
      idx = std::min<long long>(
          static_cast<long long>(score.abnormal_count) * bins / score.transition_count,
          bins - 1);
    }
    ++counts[static_cast<std::size_t>(idx)];
    ++total;
  }

  std::string toCsv() const {
    std::string out = "bin_lo,bin_hi,count\n";
    for (int i = 0; i < bins; ++i) {
      out += ProvenanceScore::formatRatio(i, bins) + ',' +
             ProvenanceScore::formatRatio(i + 1, bins) + ',' +
             std::to_string(counts[static_cast<std::size_t>(i)]) + '\n';
    }
    return out;
  }
};

struct BatchSummary {
  int scanned = 0;
  int parsed = 0;
  int errored = 0;
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct BatchResult {
  std::vector<ReportRow> rows;
  Histogram histogram{20};
  BatchSummary summary;
};

class EmptyCorpusError : public std::runtime_error {
 public:
  explicit EmptyCorpusError(const std::string& message) : std::runtime_error(message) {}
};

namespace detail {

inline bool hasMidiExtension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".mid" || ext == ".midi";
}

}  // namespace detail

/// Recursive scan for .mid/.midi files, sorted for reproducible reports.
inline std::vector<std::filesystem::path> scanCorpus(const std::filesystem::path& directory) {
  std::error_code ec;
  if (!std::filesystem::is_directory(directory, ec)) {
    throw IoError("not a directory: " + directory.string());
  }
  std::vector<std::filesystem::path> paths;
  for (auto it = std::filesystem::recursive_directory_iterator(directory, ec);
       it != std::filesystem::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) {
      throw IoError("scan failure in " + directory.string() + ": " + ec.message());
    }
    if (it->is_regular_file() && detail::hasMidiExtension(it->path())) {
      paths.push_back(it->path());
    }
  }
  std::sort(paths.begin(), paths.end(), [](const auto& a, const auto& b) {
    return a.generic_string() < b.generic_string();
  });
  return paths;
}

/// Scores every MIDI file under `directory` with a bounded worker pool.
/// Output order is fixed by sorted path, independent of scheduling.
inline BatchResult batchAnalyze(const std::filesystem::path& directory,
                                const AnalysisConfig& config) {
  auto paths = scanCorpus(directory);
  if (paths.empty()) {
    throw EmptyCorpusError("no .mid/.midi files under " + directory.string());
  }

  BatchResult result;
  result.rows.resize(paths.size());

  unsigned workers = config.workers;
  if (workers == 0) {
    workers = std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
  }
  workers = std::min<unsigned>(workers, static_cast<unsigned>(paths.size()));

  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < paths.size();) {
      result.rows[i] = analyzeFile(paths[i], config);
    }
  };
  if (workers <= 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(drain);
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  result.histogram = Histogram(config.histogram_bins);
  std::vector<double> scores;
  scores.reserve(result.rows.size());
  for (const auto& row : result.rows) {
    if (row.ok) {
      result.histogram.add(row.score);
      scores.push_back(row.score.value());
    }
  }
  result.summary.scanned = static_cast<int>(paths.size());
  result.summary.parsed = static_cast<int>(scores.size());
  result.summary.errored = result.summary.scanned - result.summary.parsed;
  if (!scores.empty()) {
    std::sort(scores.begin(), scores.end());
    double sum = 0.0;
    for (double s : scores) sum += s;
    result.summary.mean = sum / static_cast<double>(scores.size());
    std::size_t mid = scores.size() / 2;
    result.summary.median = scores.size() % 2 == 1
                                ? scores[mid]
                                : (scores[mid - 1] + scores[mid]) / 2.0;
    result.summary.min = scores.front();
    result.summary.max = scores.back();
  }
  return result;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

inline std::string csvField(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) {
    return value;
  }
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

inline constexpr const char* kCsvHeader = "path,score,abnormal,transitions,n_bars,main_mode,label,error";

inline std::string toCsvRow(const ReportRow& row) {
  if (!row.ok) {
    return csvField(row.path) + ",,,,,,," + csvField(row.error);
  }
  return csvField(row.path) + ',' + row.score.text() + ',' +
         std::to_string(row.score.abnormal_count) + ',' +
         std::to_string(row.score.transition_count) + ',' + std::to_string(row.bar_count) + ',' +
         row.main_mode + ',' + labelName(row.label) + ',';
}

inline std::string reportCsv(const std::vector<ReportRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& row : rows) {
    out += toCsvRow(row);
    out += '\n';
  }
  return out;
}

inline std::string formatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

inline std::string barModeName(const BarMode& mode) {
  return mode ? modeName(*mode) : "Unknown";
}

inline nlohmann::ordered_json transitionFlagsJson(const ProvenanceScore& score) {
  nlohmann::ordered_json flags = nlohmann::ordered_json::array();
  for (const auto& flag : score.flags) {
    flags.push_back({{"from_bar", flag.from_bar},
                     {"to_bar", flag.to_bar},
                     {"prev", barModeName(flag.prev)},
                     {"cur", barModeName(flag.cur)},
                     {"abnormal", flag.abnormal},
                     {"state", transitionStateName(flag.state)}});
  }
  return flags;
}

inline nlohmann::ordered_json rowJson(const ReportRow& row) {
  nlohmann::ordered_json j;
  j["path"] = row.path;
  if (!row.ok) {
    j["error"] = row.error;
    return j;
  }
  j["score"] = row.score.text();
  j["abnormal"] = row.score.abnormal_count;
  j["transitions"] = row.score.transition_count;
  j["n_bars"] = row.bar_count;
  j["main_mode"] = row.main_mode;
  j["label"] = labelName(row.label);
  j["transition_flags"] = transitionFlagsJson(row.score);
  return j;
}

/// Single-file report with the full audit trail.
inline nlohmann::ordered_json analysisJson(const std::string& path, const MelodyAnalysis& m,
                                           const AnalysisConfig& config) {
  nlohmann::ordered_json j;
  j["path"] = path;
  j["score"] = m.analysis.score.text();
  j["abnormal"] = m.analysis.score.abnormal_count;
  j["transitions"] = m.analysis.score.transition_count;
  j["n_bars"] = static_cast<int>(m.bars.size());
  j["degenerate"] = m.analysis.score.degenerate;
  j["main_mode"] = m.bars.empty() ? "" : modeName(m.analysis.ranking.head());
  j["label"] =
      labelName(classifyScore(m.analysis.score, config.classify_threshold, config.direction));

  nlohmann::ordered_json tracks = nlohmann::ordered_json::array();
  for (const auto& info : m.track_infos) {
    tracks.push_back({{"index", info.index},
                      {"role", trackRoleName(info.role)},
                      {"notes", info.note_count},
                      {"monophony", info.monophony_ratio}});
  }
  j["tracks"] = tracks;

  nlohmann::ordered_json trace = nlohmann::ordered_json::array();
  for (const auto& mode : m.analysis.trace) {
    trace.push_back(barModeName(mode));
  }
  j["trace"] = trace;
  j["transition_flags"] = transitionFlagsJson(m.analysis.score);

  nlohmann::ordered_json tendency = nlohmann::ordered_json::array();
  for (const auto& entry : m.analysis.ranking.entries) {
    tendency.push_back({{"mode", modeName(entry.mode)}, {"count", entry.survival_count}});
  }
  j["tendency"] = tendency;

  if (!m.warnings.empty()) {
    j["warnings"] = m.warnings;
  }
  return j;
}

inline nlohmann::ordered_json summaryJson(const BatchSummary& summary) {
  return {{"scanned", summary.scanned}, {"parsed", summary.parsed},
          {"errored", summary.errored}, {"mean", formatDouble(summary.mean)},
          {"median", formatDouble(summary.median)}, {"min", formatDouble(summary.min)},
          {"max", formatDouble(summary.max)}};
}

inline nlohmann::ordered_json batchJson(const BatchResult& result) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : result.rows) {
    rows.push_back(rowJson(row));
  }
  j["rows"] = rows;
  j["summary"] = summaryJson(result.summary);
  nlohmann::ordered_json hist;
  hist["bins"] = result.histogram.bins;
  hist["counts"] = result.histogram.counts;
  hist["total"] = result.histogram.total;
  j["histogram"] = hist;
  return j;
}

inline void writeTextFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open file for writing: " + path.string());
  }
  out << content;
  if (!out) {
    throw IoError("write failure: " + path.string());
  }
}

}  // namespace modescore

#endif  // MODESCORE_REPORT_HPP
