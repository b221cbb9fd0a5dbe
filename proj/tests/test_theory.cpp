#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include "modescore/theory.hpp"

using namespace modescore;

namespace {

// Independent oracle: shortest walk on the 12-cycle stepping +-7 semitones.
int fifthsDistanceBruteForce(int a, int b) {
  std::array<int, 12> dist{};
  dist.fill(-1);
  dist[static_cast<std::size_t>(a)] = 0;
  std::vector<int> frontier = {a};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int pc : frontier) {
      for (int step : {7, 5}) {
        int to = (pc + step) % 12;
        if (dist[static_cast<std::size_t>(to)] < 0) {
          dist[static_cast<std::size_t>(to)] = dist[static_cast<std::size_t>(pc)] + 1;
          next.push_back(to);
        }
      }
    }
    frontier = std::move(next);
  }
  return dist[static_cast<std::size_t>(b)];
}

std::set<int> pitchClassesOf(const std::vector<int>& values) {
  std::set<int> out;
  for (int v : values) {
    out.insert(((v % 12) + 12) % 12);
  }
  return out;
}

}  // namespace

TEST_CASE("major scale construction", "[theory]") {
  CHECK(majorScale(PitchClass(0), 0) == ScaleSequence{0, 2, 4, 5, 7, 9, 11});
  CHECK(majorScale(PitchClass(7), 0) == ScaleSequence{7, 9, 11, 12, 14, 16, 18});
  CHECK(majorScale(PitchClass(0), 1) == ScaleSequence{12, 14, 16, 17, 19, 21, 23});
}

TEST_CASE("minor scale construction", "[theory]") {
  CHECK(minorScale(PitchClass(0), 0) == ScaleSequence{0, 2, 3, 5, 7, 8, 10});
  CHECK(minorScale(PitchClass(9), 0) == ScaleSequence{9, 11, 12, 14, 16, 17, 19});
  CHECK(minorScale(PitchClass(0), 2) == ScaleSequence{24, 26, 27, 29, 31, 32, 34});
}

TEST_CASE("major mask construction", "[theory]") {
  CHECK(majorMask(PitchClass(0), 1) == MaskSequence{13, 15, 18, 20, 22});
  CHECK(majorMask(PitchClass(0), 0) == MaskSequence{1, 3, 6, 8, 10});
  CHECK(majorMask(PitchClass(7), 0) == MaskSequence{8, 10, 13, 15, 17});
}

TEST_CASE("minor mask construction", "[theory]") {
  CHECK(minorMask(PitchClass(0), 0) == MaskSequence{1, 3, 6, 7, 10});
  CHECK(minorMask(PitchClass(0), 1) == MaskSequence{13, 15, 18, 19, 22});

  // The two masks differ exactly in the fifth-degree element.
  auto major = majorMask(PitchClass(0), 0);
  auto minor = minorMask(PitchClass(0), 0);
  std::set<int> diff;
  for (int v : major) {
    if (std::find(minor.begin(), minor.end(), v) == minor.end()) diff.insert(v);
  }
  for (int v : minor) {
    if (std::find(major.begin(), major.end(), v) == major.end()) diff.insert(v);
  }
  CHECK(diff == std::set<int>{7, 8});
}

TEST_CASE("mask pitch classes", "[theory]") {
  auto toSet = [](PitchClassSet set) {
    std::set<int> out;
    for (int pc = 0; pc < 12; ++pc) {
      if (set.contains(PitchClass(pc))) out.insert(pc);
    }
    return out;
  };
  CHECK(toSet(maskPitchClasses(Mode::major(0))) == std::set<int>{1, 3, 6, 8, 10});
  CHECK(toSet(maskPitchClasses(Mode::minor(0))) == std::set<int>{1, 3, 6, 7, 10});
  CHECK(toSet(maskPitchClasses(Mode::major(11))) == std::set<int>{0, 2, 5, 7, 9});
}

TEST_CASE("scale and mask partition the octave", "[theory]") {
  for (int s = 0; s < 12; ++s) {
    for (int octave = 0; octave <= 9; ++octave) {
      auto scale = majorScale(PitchClass(s), octave);
      auto mask = majorMask(PitchClass(s), octave);
      std::set<int> scale_pcs = pitchClassesOf({scale.begin(), scale.end()});
      std::set<int> mask_pcs = pitchClassesOf({mask.begin(), mask.end()});
      std::set<int> all;
      all.insert(scale_pcs.begin(), scale_pcs.end());
      all.insert(mask_pcs.begin(), mask_pcs.end());
      REQUIRE(all.size() == 12);
      for (int pc : mask_pcs) {
        REQUIRE(scale_pcs.count(pc) == 0);
      }
    }
  }
}

TEST_CASE("minor mask survivors form the harmonic minor of the relative tonic", "[theory]") {
  constexpr std::array<int, 7> harmonic_minor_offsets = {0, 2, 3, 5, 7, 8, 11};
  for (int s = 0; s < 12; ++s) {
    PitchClassSet survivors = maskPitchClasses(Mode::minor(s)).complement();
    int tonic = (s + 9) % 12;
    std::set<int> expected;
    for (int offset : harmonic_minor_offsets) {
      expected.insert((tonic + offset) % 12);
    }
    std::set<int> actual;
    for (int pc = 0; pc < 12; ++pc) {
      if (survivors.contains(PitchClass(pc))) actual.insert(pc);
    }
    REQUIRE(actual == expected);
  }
}

TEST_CASE("mask transposition equivariance", "[theory]") {
  for (int s = 0; s < 12; ++s) {
    for (int k = 0; k < 12; ++k) {
      for (ModeQuality q : {ModeQuality::Major, ModeQuality::Minor}) {
        Mode base{PitchClass(s), q};
        Mode shifted{PitchClass(s + k), q};
        CHECK(maskPitchClasses(shifted) == maskPitchClasses(base).transposed(k));
      }
    }
  }
}

TEST_CASE("fifths distance golden values", "[theory]") {
  CHECK(fifthsDistance(PitchClass(0), PitchClass(7)) == 1);
  CHECK(fifthsDistance(PitchClass(0), PitchClass(0)) == 0);
  CHECK(fifthsDistance(PitchClass(7), PitchClass(4)) == 3);
}

TEST_CASE("fifths distance matches brute-force walk and is a metric", "[theory]") {
  for (int a = 0; a < 12; ++a) {
    for (int b = 0; b < 12; ++b) {
      int d = fifthsDistance(PitchClass(a), PitchClass(b));
      REQUIRE(d == fifthsDistanceBruteForce(a, b));
      REQUIRE(d == fifthsDistance(PitchClass(b), PitchClass(a)));
      REQUIRE(d >= 0);
      REQUIRE(d <= 6);
      REQUIRE((d == 0) == (a == b));
      for (int c = 0; c < 12; ++c) {
        REQUIRE(d <= fifthsDistance(PitchClass(a), PitchClass(c)) +
                         fifthsDistance(PitchClass(c), PitchClass(b)));
      }
    }
  }
}

TEST_CASE("closely related modes", "[theory]") {
  CHECK(closelyRelated(Mode::major(0), Mode::major(7)));
  CHECK(closelyRelated(Mode::major(0), Mode::minor(0)));  // relative pair, same keynote
  CHECK_FALSE(closelyRelated(Mode::major(7), Mode::major(4)));

  for (int a = 0; a < kModeCount; ++a) {
    Mode ma = Mode::fromIndex(a);
    CHECK(closelyRelated(ma, ma));
    for (int b = 0; b < kModeCount; ++b) {
      Mode mb = Mode::fromIndex(b);
      CHECK(closelyRelated(ma, mb) == closelyRelated(mb, ma));
    }
  }
}

TEST_CASE("mode naming and parsing", "[theory]") {
  CHECK(modeName(Mode::major(0)) == "C");
  CHECK(modeName(Mode::major(6)) == "F#");
  CHECK(modeName(Mode::minor(0)) == "Am");   // relative minor of C
  CHECK(modeName(Mode::minor(1)) == "A#m");  // relative minor of C#
  CHECK(modeName(Mode::minor(7)) == "Em");   // relative minor of G

  for (int i = 0; i < kModeCount; ++i) {
    Mode mode = Mode::fromIndex(i);
    auto parsed = parseMode(modeName(mode));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == mode);
    CHECK(mode.index() == i);
  }
  CHECK_FALSE(parseMode("H").has_value());
  CHECK_FALSE(parseMode("").has_value());
  CHECK_FALSE(parseMode("Cmaj").has_value());
}

TEST_CASE("pitch decomposes into class and octave group", "[theory]") {
  for (int pitch = 0; pitch <= 127; ++pitch) {
    CHECK(pitch == pitchClassOf(pitch).value() + 12 * octaveOf(pitch));
  }
  CHECK(pitchClassOf(13).value() == 1);
  CHECK(octaveOf(13) == 1);
}
