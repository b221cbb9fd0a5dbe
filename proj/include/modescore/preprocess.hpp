/// @file
/// @brief Track role classification, note cleaning, and bar segmentation.

#ifndef MODESCORE_PREPROCESS_HPP
#define MODESCORE_PREPROCESS_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "modescore/events.hpp"

namespace modescore {

constexpr std::uint8_t kPercussionChannel = 9;
constexpr double kMonophonyThreshold = 0.95;

/// Bar-count guard for segmentation; absurd onset ticks in hostile files would
/// otherwise demand gigabytes of empty bars.
constexpr long long kMaxBars = 1LL << 20;

namespace detail {

/// Fraction of note onsets at which no other note of the track is sounding.
inline double monophonyRatio(std::vector<NoteEvent> notes) {
  if (notes.empty()) {
    return 1.0;
  }
  std::sort(notes.begin(), notes.end(), [](const NoteEvent& a, const NoteEvent& b) {
    return a.onset < b.onset;
  });

  std::size_t overlapping = 0;
  Tick max_end_before = 0;
  bool any_before = false;
  std::size_t group_begin = 0;
  while (group_begin < notes.size()) {
    std::size_t group_end = group_begin;
    while (group_end < notes.size() && notes[group_end].onset == notes[group_begin].onset) {
      ++group_end;
    }
    Tick onset = notes[group_begin].onset;
    int sounding_in_group = 0;
    for (std::size_t i = group_begin; i < group_end; ++i) {
      if (notes[i].duration > 0) {
        ++sounding_in_group;
      }
    }
    for (std::size_t i = group_begin; i < group_end; ++i) {
      bool covered_by_earlier = any_before && max_end_before > onset;
      int others_sounding = sounding_in_group - (notes[i].duration > 0 ? 1 : 0);
      if (covered_by_earlier || others_sounding > 0) {
        ++overlapping;
      }
    }
    for (std::size_t i = group_begin; i < group_end; ++i) {
      max_end_before = any_before ? std::max(max_end_before, notes[i].onset + notes[i].duration)
                                  : notes[i].onset + notes[i].duration;
      any_before = true;
    }
    group_begin = group_end;
  }
  return 1.0 - static_cast<double>(overlapping) / static_cast<double>(notes.size());
}

}  // namespace detail

/// Labels every track: Drum (all notes on the percussion channel), Empty (no
/// notes), one Melody (most notes; ties go to the more monophonic, then the
/// lower index), and Polyphony/Accompaniment for the rest by monophony ratio.
///
/// Throws AnalysisError{NoMelodyTrack} when no non-drum pitched track exists.
inline std::vector<TrackInfo> classifyTracks(const std::vector<std::vector<NoteEvent>>& tracks) {
  std::vector<TrackInfo> infos(tracks.size());
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    auto& info = infos[i];
    info.index = static_cast<int>(i);
    info.note_count = static_cast<int>(tracks[i].size());
    info.monophony_ratio = detail::monophonyRatio(tracks[i]);
    if (tracks[i].empty()) {
      info.role = TrackRole::Empty;
      continue;
    }
    bool all_percussion = std::all_of(tracks[i].begin(), tracks[i].end(), [](const NoteEvent& n) {
      return n.channel == kPercussionChannel;
    });
    info.role = all_percussion ? TrackRole::Drum : TrackRole::Accompaniment;
  }

  int melody = -1;
  for (const auto& info : infos) {
    if (info.role == TrackRole::Drum || info.role == TrackRole::Empty) {
      continue;
    }
    if (melody < 0 || info.note_count > infos[melody].note_count ||
        (info.note_count == infos[melody].note_count &&
         info.monophony_ratio > infos[melody].monophony_ratio)) {
      melody = info.index;
    }
  }
  if (melody < 0) {
    throw AnalysisError(AnalysisErrorKind::NoMelodyTrack, "no non-drum pitched track");
  }
  infos[melody].role = TrackRole::Melody;

  for (auto& info : infos) {
    if (info.role == TrackRole::Accompaniment && info.monophony_ratio < kMonophonyThreshold) {
      info.role = TrackRole::Polyphony;
    }
  }
  return infos;
}

inline int melodyTrackIndex(const std::vector<TrackInfo>& infos) {
  for (const auto& info : infos) {
    if (info.role == TrackRole::Melody) {
      return info.index;
    }
  }
  return -1;
}

/// Drops zero-duration notes, deduplicates exact (onset, pitch, duration)
/// repeats, merges overlapping same-pitch notes into one spanning note, and
/// returns the result sorted by (onset, pitch). Touching notes stay separate.
inline std::vector<NoteEvent> cleanNotes(const std::vector<NoteEvent>& input) {
  std::vector<NoteEvent> notes;
  notes.reserve(input.size());
  for (const auto& note : input) {
    if (note.duration > 0) {
      notes.push_back(note);
    }
  }
  std::sort(notes.begin(), notes.end(), [](const NoteEvent& a, const NoteEvent& b) {
    return std::tie(a.onset, a.pitch, a.duration) < std::tie(b.onset, b.pitch, b.duration);
  });
  notes.erase(std::unique(notes.begin(), notes.end(),
                          [](const NoteEvent& a, const NoteEvent& b) {
                            return a.onset == b.onset && a.pitch == b.pitch &&
                                   a.duration == b.duration;
                          }),
              notes.end());

  std::vector<NoteEvent> merged;
  merged.reserve(notes.size());
  int last_for_pitch[128];
  std::fill(std::begin(last_for_pitch), std::end(last_for_pitch), -1);
  for (const auto& note : notes) {
    int last = last_for_pitch[note.pitch];
    if (last >= 0 && note.onset < merged[static_cast<std::size_t>(last)].onset +
                                      merged[static_cast<std::size_t>(last)].duration) {
      auto& open = merged[static_cast<std::size_t>(last)];
      open.duration = std::max(open.onset + open.duration, note.onset + note.duration) -
                      open.onset;
    } else {
      last_for_pitch[note.pitch] = static_cast<int>(merged.size());
      merged.push_back(note);
    }
  }
  return merged;
}

/// Splits cleaned notes into bars by onset tick. Bar boundaries follow the
/// active time signature (length = numerator * tpq * 4 / denominator); a
/// signature change starts a new bar at its own tick. Interior empty bars are
/// kept, trailing empties dropped.
inline std::vector<Bar> segmentBars(const std::vector<NoteEvent>& notes, const TimeGrid& grid) {
  if (notes.empty()) {
    return {};
  }

  struct Segment {
    Tick start = 0;
    Tick bar_length = 1;
    long long first_bar = 0;
  };

  std::vector<Segment> segments;
  Tick tpq = std::max(1, grid.ticks_per_quarter);
  std::vector<TimeSignatureEvent> signatures = grid.time_signatures;
  if (signatures.empty() || signatures.front().tick != 0) {
    signatures.insert(signatures.begin(), TimeSignatureEvent{0, 4, 4});
  }
  for (const auto& sig : signatures) {
    Tick bar_length =
        std::max<Tick>(1, static_cast<Tick>(sig.numerator) * tpq * 4 / sig.denominator);
    if (!segments.empty() && segments.back().start == sig.tick) {
      segments.back().bar_length = bar_length;  // later event at the same tick wins
      continue;
    }
    long long first_bar = 0;
    if (!segments.empty()) {
      const auto& prev = segments.back();
      Tick span = sig.tick - prev.start;
      first_bar = prev.first_bar + (span + prev.bar_length - 1) / prev.bar_length;
    }
    segments.push_back(Segment{sig.tick, bar_length, first_bar});
  }

  // Notes are sorted by onset, so one forward cursor covers all lookups.
  std::vector<long long> bar_of_note(notes.size());
  std::size_t seg = 0;
  for (std::size_t i = 0; i < notes.size(); ++i) {
    Tick onset = notes[i].onset;
    while (seg + 1 < segments.size() && segments[seg + 1].start <= onset) {
      ++seg;
    }
    bar_of_note[i] =
        segments[seg].first_bar + (onset - segments[seg].start) / segments[seg].bar_length;
  }

  long long last_bar = bar_of_note.back();
  if (last_bar + 1 > kMaxBars) {
    throw AnalysisError(AnalysisErrorKind::TooManyBars,
                        "onsets imply " + std::to_string(last_bar + 1) + " bars");
  }

  std::vector<Bar> bars(static_cast<std::size_t>(last_bar + 1));
  for (std::size_t i = 0; i < bars.size(); ++i) {
    bars[i].index = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < notes.size(); ++i) {
    bars[static_cast<std::size_t>(bar_of_note[i])].pitches.push_back(notes[i].pitch);
  }
  return bars;
}

}  // namespace modescore

#endif  // MODESCORE_PREPROCESS_HPP
