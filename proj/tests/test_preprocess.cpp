#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "modescore/preprocess.hpp"

using namespace modescore;

namespace {

NoteEvent note(Tick onset, Tick duration, int pitch, std::uint8_t channel = 0) {
  return NoteEvent{onset, duration, static_cast<std::uint8_t>(pitch), 64, channel, 0};
}

std::vector<NoteEvent> monophonicRun(int count, std::uint8_t channel = 0) {
  std::vector<NoteEvent> notes;
  for (int i = 0; i < count; ++i) {
    notes.push_back(note(i * 480, 480, 60 + (i % 12), channel));
  }
  return notes;
}

}  // namespace

TEST_CASE("single monophonic track becomes the melody", "[preprocess]") {
  auto infos = classifyTracks({monophonicRun(16)});
  REQUIRE(infos.size() == 1);
  CHECK(infos[0].role == TrackRole::Melody);
  CHECK(infos[0].note_count == 16);
  CHECK(infos[0].monophony_ratio == 1.0);
}

TEST_CASE("percussion channel marks a drum track", "[preprocess]") {
  auto infos = classifyTracks({monophonicRun(8, 9), monophonicRun(8, 0)});
  CHECK(infos[0].role == TrackRole::Drum);
  CHECK(infos[1].role == TrackRole::Melody);
}

TEST_CASE("note count dominates melody selection", "[preprocess]") {
  auto mono = monophonicRun(40);
  std::vector<NoteEvent> chordal;
  for (int i = 0; i < 20; ++i) {
    chordal.push_back(note(i * 480, 480, 60));
    chordal.push_back(note(i * 480, 480, 64));
    chordal.push_back(note(i * 480, 480, 67));
  }
  auto infos = classifyTracks({mono, chordal});
  CHECK(infos[1].role == TrackRole::Melody);
  CHECK(infos[1].note_count == 60);
  CHECK(infos[1].monophony_ratio < kMonophonyThreshold);
  // The remaining track is fully monophonic, so it files under accompaniment.
  CHECK(infos[0].role == TrackRole::Accompaniment);
}

TEST_CASE("ties break toward the more monophonic track", "[preprocess]") {
  std::vector<NoteEvent> chordal;
  for (int i = 0; i < 8; ++i) {
    chordal.push_back(note(i * 480, 480, 60));
    chordal.push_back(note(i * 480, 480, 64));
  }
  auto mono = monophonicRun(16);
  REQUIRE(chordal.size() == mono.size());
  auto infos = classifyTracks({chordal, mono});
  CHECK(infos[0].role == TrackRole::Polyphony);
  CHECK(infos[1].role == TrackRole::Melody);
}

TEST_CASE("empty and drum-only inputs have no melody", "[preprocess]") {
  CHECK_THROWS_AS(classifyTracks({}), AnalysisError);
  CHECK_THROWS_AS(classifyTracks({std::vector<NoteEvent>{}}), AnalysisError);
  CHECK_THROWS_AS(classifyTracks({monophonicRun(8, 9)}), AnalysisError);
  try {
    classifyTracks({monophonicRun(8, 9)});
  } catch (const AnalysisError& e) {
    CHECK(e.kind() == AnalysisErrorKind::NoMelodyTrack);
  }
}

TEST_CASE("empty track is labeled Empty when a melody exists", "[preprocess]") {
  auto infos = classifyTracks({std::vector<NoteEvent>{}, monophonicRun(4)});
  CHECK(infos[0].role == TrackRole::Empty);
  CHECK(infos[1].role == TrackRole::Melody);
}

TEST_CASE("cleaning trivia", "[preprocess]") {
  CHECK(cleanNotes({}).empty());

  auto deduped = cleanNotes({note(0, 480, 60), note(0, 480, 60)});
  REQUIRE(deduped.size() == 1);
  CHECK(deduped[0] == note(0, 480, 60));

  auto no_zero = cleanNotes({note(0, 0, 60), note(480, 480, 62)});
  REQUIRE(no_zero.size() == 1);
  CHECK(no_zero[0].pitch == 62);
}

TEST_CASE("overlapping same-pitch notes merge into a spanning note", "[preprocess]") {
  auto merged = cleanNotes({note(0, 480, 60), note(240, 480, 60)});
  REQUIRE(merged.size() == 1);
  CHECK(merged[0] == note(0, 720, 60));

  // Chained overlap keeps extending.
  auto chain = cleanNotes({note(0, 480, 60), note(240, 480, 60), note(600, 480, 60)});
  REQUIRE(chain.size() == 1);
  CHECK(chain[0] == note(0, 1080, 60));

  // Touching notes stay separate, and different pitches never merge.
  auto touching = cleanNotes({note(0, 480, 60), note(480, 480, 60)});
  CHECK(touching.size() == 2);
  auto other_pitch = cleanNotes({note(0, 480, 60), note(240, 480, 62)});
  CHECK(other_pitch.size() == 2);
}

TEST_CASE("cleaning sorts by onset then pitch", "[preprocess]") {
  auto cleaned = cleanNotes({note(480, 100, 70), note(0, 100, 65), note(0, 100, 60)});
  REQUIRE(cleaned.size() == 3);
  CHECK(cleaned[0].pitch == 60);
  CHECK(cleaned[1].pitch == 65);
  CHECK(cleaned[2].onset == 480);
}

TEST_CASE("bar segmentation in common time", "[preprocess]") {
  TimeGrid grid;
  grid.ticks_per_quarter = 480;
  grid.time_signatures = {TimeSignatureEvent{0, 4, 4}};
  auto bars = segmentBars({note(0, 480, 60), note(480, 480, 62), note(1920, 480, 64)}, grid);
  REQUIRE(bars.size() == 2);
  CHECK(bars[0].pitches == std::vector<int>{60, 62});
  CHECK(bars[1].pitches == std::vector<int>{64});
  CHECK(bars[0].index == 0);
  CHECK(bars[1].index == 1);
}

TEST_CASE("bar segmentation trivia", "[preprocess]") {
  TimeGrid grid;
  CHECK(segmentBars({}, grid).empty());

  grid.ticks_per_quarter = 480;
  grid.time_signatures = {TimeSignatureEvent{0, 3, 4}};
  auto bars = segmentBars({note(1440, 480, 60)}, grid);
  REQUIRE(bars.size() == 2);  // interior empty bar kept
  CHECK(bars[0].pitches.empty());
  CHECK(bars[1].pitches == std::vector<int>{60});
}

TEST_CASE("time signature change restarts bars at its own tick", "[preprocess]") {
  TimeGrid grid;
  grid.ticks_per_quarter = 480;
  grid.time_signatures = {TimeSignatureEvent{0, 4, 4}, TimeSignatureEvent{1920, 3, 4}};
  // bar 0: [0,1920); bar 1: [1920,3360); bar 2: [3360,4800)
  auto bars = segmentBars({note(0, 100, 60), note(3360, 100, 62)}, grid);
  REQUIRE(bars.size() == 3);
  CHECK(bars[0].pitches == std::vector<int>{60});
  CHECK(bars[1].pitches.empty());
  CHECK(bars[2].pitches == std::vector<int>{62});
}

TEST_CASE("segmentation partitions notes in onset order", "[preprocess][property]") {
  std::mt19937 rng(7);
  for (int round = 0; round < 30; ++round) {
    std::vector<NoteEvent> notes;
    Tick onset = 0;
    int count = 1 + static_cast<int>(rng() % 60);
    for (int i = 0; i < count; ++i) {
      onset += static_cast<Tick>(rng() % 700);
      notes.push_back(note(onset, 1 + rng() % 480, static_cast<int>(rng() % 128)));
    }
    auto cleaned = cleanNotes(notes);
    TimeGrid grid;
    grid.ticks_per_quarter = 480;
    grid.time_signatures = {TimeSignatureEvent{0, 4, 4}, TimeSignatureEvent{5760, 7, 8}};
    auto bars = segmentBars(cleaned, grid);

    std::vector<int> concatenated;
    for (const auto& bar : bars) {
      concatenated.insert(concatenated.end(), bar.pitches.begin(), bar.pitches.end());
    }
    std::vector<int> expected;
    for (const auto& n : cleaned) {
      expected.push_back(n.pitch);
    }
    REQUIRE(concatenated == expected);
    if (!bars.empty()) {
      CHECK_FALSE(bars.back().pitches.empty());  // trailing empties omitted
    }
  }
}

TEST_CASE("absurd onsets trip the bar-count guard", "[preprocess]") {
  TimeGrid grid;
  grid.ticks_per_quarter = 480;
  grid.time_signatures = {TimeSignatureEvent{0, 4, 4}};
  CHECK_THROWS_AS(segmentBars({note(Tick{1} << 40, 100, 60)}, grid), AnalysisError);
}
