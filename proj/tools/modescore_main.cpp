/**
 * @file modescore_main.cpp
 * @brief Command-line front end: analyze one file, batch-score a corpus, or
 *        generate fixture corpora.
 *
 * Exit codes: 0 success, 1 usage error, 2 I/O error, 3 empty corpus.
 */

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "modescore/modescore.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitEmptyCorpus = 3;

struct CliOptions {
  std::string policy = "anchor-return";
  int close_threshold = 1;
  double threshold = 0.3;
  std::string direction = "low-is-machine";
  std::string format = "csv";
  int bins = 20;
  std::string out_path;
  std::string hist_path;
};

modescore::AnalysisConfig toConfig(const CliOptions& opts) {
  modescore::AnalysisConfig config;
  config.policy.kind = opts.policy == "pairwise" ? modescore::PolicyKind::Pairwise
                                                 : modescore::PolicyKind::AnchorReturn;
  config.policy.close_threshold = opts.close_threshold;
  config.classify_threshold = opts.threshold;
  config.direction = opts.direction == "high-is-machine" ? modescore::Direction::HighIsMachine
                                                         : modescore::Direction::LowIsMachine;
  config.histogram_bins = opts.bins;
  config.format = opts.format == "json" ? modescore::OutputFormat::Json
                                        : modescore::OutputFormat::Csv;
  return config;
}

void addCommonOptions(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option("--policy", opts.policy, "Transition policy")
      ->check(CLI::IsMember({"anchor-return", "pairwise"}))
      ->capture_default_str();
  cmd->add_option("--close-threshold", opts.close_threshold,
                  "Fifths-distance bound for closely related keys")
      ->check(CLI::Range(0, 6))
      ->capture_default_str();
  cmd->add_option("--threshold", opts.threshold,
                  "Classification threshold (placeholder default, not calibrated on any corpus)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--direction", opts.direction, "Which side of the threshold reads as machine")
      ->check(CLI::IsMember({"low-is-machine", "high-is-machine"}))
      ->capture_default_str();
  cmd->add_option("--format", opts.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts.out_path, "Write the report here instead of stdout");
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    modescore::writeTextFile(out_path, content);
  }
}

int runAnalyze(const std::string& file, const CliOptions& opts) {
  auto config = toConfig(opts);
  modescore::MelodyAnalysis analysis;
  try {
    analysis = modescore::analyzeMidiFile(file, config.policy);
  } catch (const modescore::ParseError& e) {
    std::cerr << "error: " << e.kindName() << ": " << e.what() << "\n";
    return kExitIo;
  } catch (const modescore::AnalysisError& e) {
    std::cerr << "error: " << e.kindName() << ": " << e.what() << "\n";
    return kExitIo;
  } catch (const modescore::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }

  if (config.format == modescore::OutputFormat::Json) {
    emit(modescore::analysisJson(file, analysis, config).dump(2) + "\n", opts.out_path);
  } else {
    modescore::ReportRow row;
    row.path = file;
    row.ok = true;
    row.score = analysis.analysis.score;
    row.bar_count = static_cast<int>(analysis.bars.size());
    row.main_mode =
        analysis.bars.empty() ? "" : modescore::modeName(analysis.analysis.ranking.head());
    row.label = modescore::classifyScore(analysis.analysis.score, config.classify_threshold,
                                         config.direction);
    emit(std::string(modescore::kCsvHeader) + "\n" + modescore::toCsvRow(row) + "\n",
         opts.out_path);
  }
  for (const auto& warning : analysis.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  return kExitOk;
}

int runBatch(const std::string& directory, const CliOptions& opts) {
  auto config = toConfig(opts);
  modescore::BatchResult result;
  try {
    result = modescore::batchAnalyze(directory, config);
  } catch (const modescore::EmptyCorpusError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEmptyCorpus;
  } catch (const modescore::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }

  std::string report = config.format == modescore::OutputFormat::Json
                           ? modescore::batchJson(result).dump(2) + "\n"
                           : modescore::reportCsv(result.rows);
  try {
    emit(report, opts.out_path);
    if (!opts.hist_path.empty()) {
      modescore::writeTextFile(opts.hist_path, result.histogram.toCsv());
    }
  } catch (const modescore::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }

  auto& summary = result.summary;
  std::ostream& info = opts.out_path.empty() ? std::cerr : std::cout;
  info << "scanned " << summary.scanned << ", parsed " << summary.parsed << ", errored "
       << summary.errored << "\n"
       << "score mean " << modescore::formatDouble(summary.mean) << ", median "
       << modescore::formatDouble(summary.median) << ", min "
       << modescore::formatDouble(summary.min) << ", max "
       << modescore::formatDouble(summary.max) << "\n";
  return kExitOk;
}

int runGen(const std::string& kind_name, int count, std::uint32_t seed,
           const std::string& out_dir) {
  auto kind = modescore::parseFixtureKind(kind_name);
  if (!kind) {
    std::cerr << "error: unknown fixture kind '" << kind_name
              << "' (expected diatonic, close-modulating, distant-modulating, chromatic)\n";
    return kExitUsage;
  }
  try {
    auto paths = modescore::generateFixtureCorpus(*kind, count, seed, out_dir);
    std::cout << "wrote " << paths.size() << " files to " << out_dir << "\n";
  } catch (const modescore::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modescore: rule-based judge of melody provenance via mode stability"};
  app.require_subcommand(1);

  CliOptions opts;

  std::string analyze_file;
  CLI::App* analyze = app.add_subcommand("analyze", "Score a single MIDI file");
  analyze->add_option("file", analyze_file, "MIDI file to analyze")->required();
  addCommonOptions(analyze, opts);

  std::string batch_dir;
  CLI::App* batch = app.add_subcommand("batch", "Score every MIDI file under a directory");
  batch->add_option("dir", batch_dir, "Corpus directory (scanned recursively)")->required();
  addCommonOptions(batch, opts);
  batch->add_option("--bins", opts.bins, "Histogram bin count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  batch->add_option("--hist", opts.hist_path, "Write the score histogram (CSV) here");

  std::string gen_kind;
  int gen_count = 0;
  std::uint32_t gen_seed = 1;
  std::string gen_dir = "fixtures";
  CLI::App* gen = app.add_subcommand("gen", "Generate a deterministic fixture corpus");
  gen->add_option("kind", gen_kind,
                  "diatonic | close-modulating | distant-modulating | chromatic")
      ->required();
  gen->add_option("count", gen_count, "Number of files")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Corpus seed")->capture_default_str();
  gen->add_option("--out", gen_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (analyze->parsed()) {
    return runAnalyze(analyze_file, opts);
  }
  if (batch->parsed()) {
    return runBatch(batch_dir, opts);
  }
  return runGen(gen_kind, gen_count, gen_seed, gen_dir);
}
