/// @file
/// @brief Note/track/bar value types shared across the pipeline, plus the
///        typed errors every stage throws.

#ifndef MODESCORE_EVENTS_HPP
#define MODESCORE_EVENTS_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace modescore {

using Tick = std::int64_t;

/// One pitched note. `duration` may be zero straight out of the parser;
/// cleaning drops those.
struct NoteEvent {
  Tick onset = 0;
  Tick duration = 0;
  std::uint8_t pitch = 0;     // MIDI note number 0-127
  std::uint8_t velocity = 0;  // 1-127 (velocity-0 note-ons are note-offs)
  std::uint8_t channel = 0;   // 0-15
  std::uint16_t track = 0;

  friend bool operator==(const NoteEvent&, const NoteEvent&) = default;
  friend auto operator<=>(const NoteEvent&, const NoteEvent&) = default;
};

struct TimeSignatureEvent {
  Tick tick = 0;
  int numerator = 4;
  int denominator = 4;

  friend bool operator==(const TimeSignatureEvent&, const TimeSignatureEvent&) = default;
};

struct TempoEvent {
  Tick tick = 0;
  int microseconds_per_quarter = 500000;  // 120 bpm

  friend bool operator==(const TempoEvent&, const TempoEvent&) = default;
};

/// Metrical skeleton of a file. Event lists are sorted by tick and always
/// start with an entry at tick 0 (defaults injected when the file has none).
struct TimeGrid {
  int ticks_per_quarter = 480;
  std::vector<TimeSignatureEvent> time_signatures;
  std::vector<TempoEvent> tempos;
};

/// One measure of the selected melody: 0-based index plus contained note
/// numbers in onset order.
struct Bar {
  int index = 0;
  std::vector<int> pitches;

  friend bool operator==(const Bar&, const Bar&) = default;
};

enum class TrackRole { Melody, Accompaniment, Drum, Polyphony, Empty };

struct TrackInfo {
  int index = 0;
  TrackRole role = TrackRole::Empty;
  int note_count = 0;
  double monophony_ratio = 1.0;  // fraction of onsets with nothing else sounding
};

inline const char* trackRoleName(TrackRole role) {
  switch (role) {
    case TrackRole::Melody: return "Melody";
    case TrackRole::Accompaniment: return "Accompaniment";
    case TrackRole::Drum: return "Drum";
    case TrackRole::Polyphony: return "Polyphony";
    case TrackRole::Empty: return "Empty";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ParseErrorKind {
  MalformedHeader,    // bad magic, bad length, zero division
  UnsupportedFormat,  // format 2 or SMPTE division
  TruncatedTrack,     // chunk or event data runs past the declared end
  MalformedEvent,     // undecodable event content inside a track
};

inline const char* parseErrorKindName(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::MalformedHeader: return "MalformedHeader";
    case ParseErrorKind::UnsupportedFormat: return "UnsupportedFormat";
    case ParseErrorKind::TruncatedTrack: return "TruncatedTrack";
    case ParseErrorKind::MalformedEvent: return "MalformedEvent";
  }
  return "ParseError";
}

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ParseErrorKind kind() const { return kind_; }
  const char* kindName() const { return parseErrorKindName(kind_); }

 private:
  ParseErrorKind kind_;
};

enum class AnalysisErrorKind {
  NoMelodyTrack,  // no non-drum pitched track to analyze
  EmptyPiece,     // ranking requested over zero bars
  EmptyTrace,     // transition scan over an empty trace
  TooManyBars,    // resource guard: onset ticks imply an absurd bar count
};

inline const char* analysisErrorKindName(AnalysisErrorKind kind) {
  switch (kind) {
    case AnalysisErrorKind::NoMelodyTrack: return "NoMelodyTrack";
    case AnalysisErrorKind::EmptyPiece: return "EmptyPiece";
    case AnalysisErrorKind::EmptyTrace: return "EmptyTrace";
    case AnalysisErrorKind::TooManyBars: return "TooManyBars";
  }
  return "AnalysisError";
}

class AnalysisError : public std::runtime_error {
 public:
  AnalysisError(AnalysisErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  AnalysisErrorKind kind() const { return kind_; }
  const char* kindName() const { return analysisErrorKindName(kind_); }

 private:
  AnalysisErrorKind kind_;
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace modescore

#endif  // MODESCORE_EVENTS_HPP
