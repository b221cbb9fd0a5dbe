/// @file
/// @brief Minimal format-0 SMF writer: the reference encoder for fixtures and
///        round-trip checks.

#ifndef MODESCORE_SMF_WRITER_HPP
#define MODESCORE_SMF_WRITER_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <vector>

#include "modescore/events.hpp"

namespace modescore {

struct SmfWriteOptions {
  int ticks_per_quarter = 480;
  int numerator = 4;
  int denominator = 4;  // must be a power of two
  int microseconds_per_quarter = 500000;
};

namespace detail {

inline void appendBe16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

inline void appendBe32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

inline void appendVlq(std::vector<std::uint8_t>& out, std::uint32_t v) {
  std::uint8_t stack[5];
  int n = 0;
  stack[n++] = static_cast<std::uint8_t>(v & 0x7F);
  v >>= 7;
  while (v > 0) {
    stack[n++] = static_cast<std::uint8_t>((v & 0x7F) | 0x80);
    v >>= 7;
  }
  while (n > 0) {
    out.push_back(stack[--n]);
  }
}

inline int denominatorPower(int denominator) {
  int power = 0;
  while ((1 << power) < denominator) {
    ++power;
  }
  return power;
}

}  // namespace detail

/// Encodes notes as a single-track format-0 file. Note-offs are emitted before
/// note-ons at the same tick so back-to-back repeats pair unambiguously.
inline std::vector<std::uint8_t> writeSmf(const std::vector<NoteEvent>& notes,
                                          const SmfWriteOptions& options = {}) {
  struct Event {
    Tick tick;
    int order;  // 0 = note-off, 1 = note-on
    std::uint8_t status;
    std::uint8_t data1;
    std::uint8_t data2;
  };

  std::vector<Event> events;
  events.reserve(notes.size() * 2);
  for (const auto& note : notes) {
    std::uint8_t channel = note.channel & 0x0F;
    std::uint8_t velocity = note.velocity == 0 ? 64 : (note.velocity & 0x7F);
    events.push_back(Event{note.onset, 1, static_cast<std::uint8_t>(0x90 | channel),
                           static_cast<std::uint8_t>(note.pitch & 0x7F), velocity});
    events.push_back(Event{note.onset + note.duration, 0,
                           static_cast<std::uint8_t>(0x80 | channel),
                           static_cast<std::uint8_t>(note.pitch & 0x7F), 0});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return std::tie(a.tick, a.order, a.data1) < std::tie(b.tick, b.order, b.data1);
  });

  std::vector<std::uint8_t> track;
  // Time signature at tick 0: nn, 2^dd, MIDI clocks per metronome, 32nds per quarter.
  detail::appendVlq(track, 0);
  track.insert(track.end(), {0xFF, 0x58, 0x04});
  track.push_back(static_cast<std::uint8_t>(options.numerator));
  track.push_back(static_cast<std::uint8_t>(detail::denominatorPower(options.denominator)));
  track.insert(track.end(), {24, 8});
  // Tempo at tick 0.
  detail::appendVlq(track, 0);
  track.insert(track.end(), {0xFF, 0x51, 0x03});
  int usec = options.microseconds_per_quarter;
  track.push_back(static_cast<std::uint8_t>((usec >> 16) & 0xFF));
  track.push_back(static_cast<std::uint8_t>((usec >> 8) & 0xFF));
  track.push_back(static_cast<std::uint8_t>(usec & 0xFF));

  Tick cursor = 0;
  for (const auto& event : events) {
    detail::appendVlq(track, static_cast<std::uint32_t>(event.tick - cursor));
    cursor = event.tick;
    track.push_back(event.status);
    track.push_back(event.data1);
    track.push_back(event.data2);
  }

  // End of track.
  detail::appendVlq(track, 0);
  track.insert(track.end(), {0xFF, 0x2F, 0x00});

  std::vector<std::uint8_t> out;
  out.reserve(14 + 8 + track.size());
  out.insert(out.end(), {'M', 'T', 'h', 'd'});
  detail::appendBe32(out, 6);
  detail::appendBe16(out, 0);  // format 0
  detail::appendBe16(out, 1);  // one track
  detail::appendBe16(out, static_cast<std::uint16_t>(options.ticks_per_quarter));
  out.insert(out.end(), {'M', 'T', 'r', 'k'});
  detail::appendBe32(out, static_cast<std::uint32_t>(track.size()));
  out.insert(out.end(), track.begin(), track.end());
  return out;
}

inline void writeSmfFile(const std::filesystem::path& path, const std::vector<NoteEvent>& notes,
                         const SmfWriteOptions& options = {}) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open file for writing: " + path.string());
  }
  auto bytes = writeSmf(notes, options);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("write failure: " + path.string());
  }
}

}  // namespace modescore

#endif  // MODESCORE_SMF_WRITER_HPP
