/// @file
/// @brief Per-bar mode candidates via mask exclusion, piece-wide tendency
///        ranking, and bar-mode assignment.

#ifndef MODESCORE_EXTRACTOR_HPP
#define MODESCORE_EXTRACTOR_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "modescore/events.hpp"
#include "modescore/theory.hpp"

namespace modescore {

/// Membership flags over the 24-mode universe for one bar.
class CandidateSet {
 public:
  constexpr CandidateSet() = default;

  static constexpr CandidateSet all() {
    CandidateSet s;
    s.bits_ = (1u << kModeCount) - 1;
    return s;
  }

  constexpr void add(Mode mode) { bits_ |= 1u << mode.index(); }
  constexpr void remove(Mode mode) { bits_ &= ~(1u << mode.index()); }
  constexpr bool contains(Mode mode) const { return (bits_ >> mode.index()) & 1u; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr std::uint32_t bits() const { return bits_; }

  friend constexpr bool operator==(CandidateSet, CandidateSet) = default;

 private:
  std::uint32_t bits_ = 0;
};

namespace detail {

inline constexpr std::array<std::uint16_t, kModeCount> kModeMaskBits = [] {
  std::array<std::uint16_t, kModeCount> table{};
  for (int i = 0; i < kModeCount; ++i) {
    table[static_cast<std::size_t>(i)] = maskPitchClasses(Mode::fromIndex(i)).bits();
  }
  return table;
}();

}  // namespace detail

inline PitchClassSet barPitchClasses(const Bar& bar) {
  PitchClassSet set;
  for (int pitch : bar.pitches) {
    set.add(pitchClassOf(pitch));
  }
  return set;
}

/// Modes surviving mask exclusion for one bar: a mode stays iff none of the
/// bar's pitch classes falls in its mask. A silent bar excludes nothing.
inline CandidateSet candidateModes(const Bar& bar) {
  std::uint16_t bar_bits = barPitchClasses(bar).bits();
  CandidateSet survivors;
  for (int i = 0; i < kModeCount; ++i) {
    if ((bar_bits & detail::kModeMaskBits[static_cast<std::size_t>(i)]) == 0) {
      survivors.add(Mode::fromIndex(i));
    }
  }
  return survivors;
}

struct RankedMode {
  Mode mode;
  int survival_count = 0;

  friend bool operator==(const RankedMode&, const RankedMode&) = default;
};

/// All 24 modes ordered by how many bars they survive, descending; ties break
/// Major before Minor, then ascending keynote.
struct TendencyRanking {
  std::vector<RankedMode> entries;

  const Mode& head() const { return entries.front().mode; }
};

inline TendencyRanking tendencyRanking(const std::vector<CandidateSet>& sets) {
  if (sets.empty()) {
    throw AnalysisError(AnalysisErrorKind::EmptyPiece, "tendency ranking over zero bars");
  }
  TendencyRanking ranking;
  ranking.entries.reserve(kModeCount);
  for (int i = 0; i < kModeCount; ++i) {
    Mode mode = Mode::fromIndex(i);
    int count = 0;
    for (const auto& set : sets) {
      count += set.contains(mode) ? 1 : 0;
    }
    ranking.entries.push_back(RankedMode{mode, count});
  }
  std::sort(ranking.entries.begin(), ranking.entries.end(),
            [](const RankedMode& a, const RankedMode& b) {
              if (a.survival_count != b.survival_count) {
                return a.survival_count > b.survival_count;
              }
              if (a.mode.quality != b.mode.quality) {
                return a.mode.quality == ModeQuality::Major;
              }
              return a.mode.keynote < b.mode.keynote;
            });
  return ranking;
}

/// Per-bar assignment; empty-set bars carry no mode.
using BarMode = std::optional<Mode>;
using ModeTrace = std::vector<BarMode>;

/// Picks, for every bar, the highest-ranked mode its candidate set contains.
inline ModeTrace assignBarModes(const std::vector<CandidateSet>& sets,
                                const TendencyRanking& ranking) {
  ModeTrace trace;
  trace.reserve(sets.size());
  for (const auto& set : sets) {
    BarMode assigned;
    for (const auto& entry : ranking.entries) {
      if (set.contains(entry.mode)) {
        assigned = entry.mode;
        break;
      }
    }
    trace.push_back(assigned);
  }
  return trace;
}

/// Debug dump, one line per bar: index | sorted pitch classes | surviving
/// mode names in canonical index order. Stable; golden-tested.
inline std::string dumpCandidates(const std::vector<Bar>& bars,
                                  const std::vector<CandidateSet>& sets) {
  std::ostringstream out;
  for (std::size_t i = 0; i < bars.size() && i < sets.size(); ++i) {
    out << bars[i].index << " |";
    PitchClassSet pcs = barPitchClasses(bars[i]);
    for (int pc = 0; pc < 12; ++pc) {
      if (pcs.contains(PitchClass(pc))) {
        out << ' ' << pc;
      }
    }
    out << " |";
    for (int m = 0; m < kModeCount; ++m) {
      if (sets[i].contains(Mode::fromIndex(m))) {
        out << ' ' << modeName(Mode::fromIndex(m));
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace modescore

#endif  // MODESCORE_EXTRACTOR_HPP
