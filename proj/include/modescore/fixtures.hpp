/// @file
/// @brief Deterministic seeded melody corpus generator: eight-bar monophonic
///        fixtures spanning stable, modulating, and chromatic material.

#ifndef MODESCORE_FIXTURES_HPP
#define MODESCORE_FIXTURES_HPP

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "modescore/events.hpp"
#include "modescore/smf_writer.hpp"
#include "modescore/theory.hpp"

namespace modescore {

enum class FixtureKind {
  Diatonic,           // one major key throughout
  CloseModulating,    // one mid-piece move to a neighbouring key (one fifth)
  DistantModulating,  // a distant key every bar, never revisiting the start
  Chromatic,          // >= 10 distinct pitch classes per bar
};

inline const char* fixtureKindName(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::Diatonic: return "diatonic";
    case FixtureKind::CloseModulating: return "close-modulating";
    case FixtureKind::DistantModulating: return "distant-modulating";
    case FixtureKind::Chromatic: return "chromatic";
  }
  return "unknown";
}

inline std::optional<FixtureKind> parseFixtureKind(std::string_view name) {
  if (name == "diatonic") return FixtureKind::Diatonic;
  if (name == "close-modulating") return FixtureKind::CloseModulating;
  if (name == "distant-modulating") return FixtureKind::DistantModulating;
  if (name == "chromatic") return FixtureKind::Chromatic;
  return std::nullopt;
}

constexpr int kFixtureBars = 8;
constexpr int kFixtureTicksPerQuarter = 480;
constexpr Tick kFixtureBarTicks = 4 * kFixtureTicksPerQuarter;
constexpr int kFixtureTempoLowBpm = 68;
constexpr int kFixtureTempoHighBpm = 118;

namespace detail {

// Hand-rolled range reduction and shuffle: std::uniform_int_distribution and
// std::shuffle are implementation-defined, and fixture bytes must not depend
// on the standard library build.
inline int randInt(std::mt19937& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint32_t>(hi - lo + 1));
}

template <typename T>
inline void shuffleInPlace(std::mt19937& rng, std::vector<T>& values) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(randInt(rng, 0, static_cast<int>(i) - 1));
    std::swap(values[i - 1], values[j]);
  }
}

/// Eight eighth-notes covering every degree of the key's major scale once
/// (plus one repeat), so the bar pins its key exactly.
inline void appendScaleBar(std::mt19937& rng, int key, Tick bar_start,
                           std::vector<NoteEvent>& notes) {
  std::vector<int> degrees = {0, 1, 2, 3, 4, 5, 6};
  shuffleInPlace(rng, degrees);
  degrees.push_back(randInt(rng, 0, 6));
  Tick step = kFixtureBarTicks / 8;
  for (std::size_t slot = 0; slot < degrees.size(); ++slot) {
    int octave_lift = randInt(rng, 0, 1) * kSemitonesPerOctave;
    int pitch = 48 + key + kMajorScaleOffsets[static_cast<std::size_t>(degrees[slot])] +
                octave_lift;
    notes.push_back(NoteEvent{bar_start + static_cast<Tick>(slot) * step, step,
                              static_cast<std::uint8_t>(pitch),
                              static_cast<std::uint8_t>(randInt(rng, 64, 100)), 0, 0});
  }
}

/// Ten to twelve distinct pitch classes as sixteenth-notes.
inline void appendChromaticBar(std::mt19937& rng, Tick bar_start,
                               std::vector<NoteEvent>& notes) {
  std::vector<int> classes = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  shuffleInPlace(rng, classes);
  int note_count = randInt(rng, 10, 12);
  Tick step = kFixtureBarTicks / 16;
  for (int slot = 0; slot < note_count; ++slot) {
    int pitch = 60 + classes[static_cast<std::size_t>(slot)] +
                randInt(rng, 0, 1) * kSemitonesPerOctave;
    notes.push_back(NoteEvent{bar_start + static_cast<Tick>(slot) * step, step,
                              static_cast<std::uint8_t>(pitch),
                              static_cast<std::uint8_t>(randInt(rng, 64, 100)), 0, 0});
  }
}

inline std::vector<int> fixtureKeyPlan(std::mt19937& rng, FixtureKind kind) {
  std::vector<int> keys(kFixtureBars, 0);
  int start = randInt(rng, 0, 11);
  switch (kind) {
    case FixtureKind::Diatonic:
    case FixtureKind::Chromatic:
      for (auto& k : keys) k = start;
      break;
    case FixtureKind::CloseModulating: {
      int neighbour = (start + (randInt(rng, 0, 1) ? 7 : 5)) % 12;
      for (int bar = 0; bar < kFixtureBars; ++bar) {
        keys[static_cast<std::size_t>(bar)] = bar < kFixtureBars / 2 ? start : neighbour;
      }
      break;
    }
    case FixtureKind::DistantModulating: {
      // +11 semitones per bar is five fifths away and needs twelve bars to
      // close the cycle, so eight bars never revisit the opening key.
      int key = start;
      for (auto& k : keys) {
        k = key;
        key = (key + 11) % 12;
      }
      break;
    }
  }
  return keys;
}

}  // namespace detail

/// Builds the byte image of fixture `index` for the given corpus seed.
inline std::vector<std::uint8_t> fixtureBytes(FixtureKind kind, std::uint32_t seed,
                                              std::uint32_t index) {
  std::mt19937 rng(seed ^ (0x9E3779B9u * (index + 1)) ^ (static_cast<std::uint32_t>(kind) << 4));
  std::vector<int> keys = detail::fixtureKeyPlan(rng, kind);

  std::vector<NoteEvent> notes;
  for (int bar = 0; bar < kFixtureBars; ++bar) {
    Tick bar_start = static_cast<Tick>(bar) * kFixtureBarTicks;
    if (kind == FixtureKind::Chromatic) {
      detail::appendChromaticBar(rng, bar_start, notes);
    } else {
      detail::appendScaleBar(rng, keys[static_cast<std::size_t>(bar)], bar_start, notes);
    }
  }

  SmfWriteOptions options;
  options.ticks_per_quarter = kFixtureTicksPerQuarter;
  int bpm = detail::randInt(rng, kFixtureTempoLowBpm, kFixtureTempoHighBpm);
  options.microseconds_per_quarter = 60000000 / bpm;
  return writeSmf(notes, options);
}

/// Writes `count` fixtures into `directory` (created if needed) and returns
/// their paths in generation order. Same (kind, count, seed) means identical
/// bytes; existing files are overwritten.
inline std::vector<std::filesystem::path> generateFixtureCorpus(
    FixtureKind kind, int count, std::uint32_t seed, const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) {
    throw IoError("cannot create directory: " + directory.string());
  }

  std::vector<std::filesystem::path> paths;
  paths.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    char name[64];
    std::snprintf(name, sizeof(name), "%s_%06d.mid", fixtureKindName(kind), i);
    std::filesystem::path path = directory / name;
    auto bytes = fixtureBytes(kind, seed, static_cast<std::uint32_t>(i));
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open file for writing: " + path.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
      throw IoError("write failure: " + path.string());
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace modescore

#endif  // MODESCORE_FIXTURES_HPP
