/// @file
/// @brief Standard MIDI File (format 0/1) decoder producing note events and a
///        time grid.

#ifndef MODESCORE_SMF_READER_HPP
#define MODESCORE_SMF_READER_HPP

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "modescore/events.hpp"

namespace modescore {

/// Result of decoding one file. Warnings carry recoverable oddities
/// (currently: note-ons closed at track end for lack of a note-off).
struct SmfData {
  TimeGrid grid;
  std::vector<std::vector<NoteEvent>> tracks;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::uint16_t readBe16(const std::uint8_t* data, std::size_t offset) {
  return static_cast<std::uint16_t>((data[offset] << 8) | data[offset + 1]);
}

inline std::uint32_t readBe32(const std::uint8_t* data, std::size_t offset) {
  return (static_cast<std::uint32_t>(data[offset]) << 24) |
         (static_cast<std::uint32_t>(data[offset + 1]) << 16) |
         (static_cast<std::uint32_t>(data[offset + 2]) << 8) |
         static_cast<std::uint32_t>(data[offset + 3]);
}

inline std::uint32_t readVlq(const std::uint8_t* data, std::size_t& offset, std::size_t end) {
  std::uint32_t value = 0;
  for (int i = 0; i < 4; ++i) {
    if (offset >= end) {
      throw ParseError(ParseErrorKind::TruncatedTrack,
                       "variable-length quantity runs past chunk end");
    }
    std::uint8_t byte = data[offset++];
    value = (value << 7) | (byte & 0x7Fu);
    if ((byte & 0x80u) == 0) {
      return value;
    }
  }
  throw ParseError(ParseErrorKind::MalformedEvent,
                   "variable-length quantity longer than four bytes");
}

struct PendingNote {
  Tick onset = 0;
  std::uint8_t pitch = 0;
  std::uint8_t velocity = 0;
  std::uint8_t channel = 0;
  bool open = false;
};

/// Parses one MTrk chunk body. Meta events feed the grid; note pairs become
/// NoteEvents (earliest unmatched note-on per channel/pitch wins).
inline void parseTrackChunk(const std::uint8_t* data, std::size_t begin, std::size_t end,
                            std::uint16_t track_index, SmfData& out) {
  std::vector<NoteEvent> notes;
  std::vector<PendingNote> pending;
  std::size_t offset = begin;
  Tick tick = 0;
  std::uint8_t running_status = 0;

  auto requireBytes = [&](std::size_t count) {
    if (offset + count > end) {
      throw ParseError(ParseErrorKind::TruncatedTrack, "event data runs past chunk end");
    }
  };

  auto closeNote = [&](std::uint8_t channel, std::uint8_t pitch, Tick off_tick) {
    for (auto& p : pending) {
      if (p.open && p.channel == channel && p.pitch == pitch) {
        notes.push_back(NoteEvent{p.onset, off_tick - p.onset, p.pitch, p.velocity, p.channel,
                                  track_index});
        p.open = false;
        return;
      }
    }
    // Stray note-off with no matching note-on: ignored.
  };

  while (offset < end) {
    tick += static_cast<Tick>(readVlq(data, offset, end));
    if (offset >= end) {
      throw ParseError(ParseErrorKind::TruncatedTrack, "delta time with no event");
    }

    std::uint8_t lead = data[offset];

    if (lead == 0xFF) {
      ++offset;
      requireBytes(1);
      std::uint8_t meta_type = data[offset++];
      std::uint32_t length = readVlq(data, offset, end);
      requireBytes(length);
      if (meta_type == 0x51 && length == 3) {
        int usec = (data[offset] << 16) | (data[offset + 1] << 8) | data[offset + 2];
        if (usec > 0) {
          out.grid.tempos.push_back(TempoEvent{tick, usec});
        }
      } else if (meta_type == 0x58 && length >= 2) {
        int numerator = data[offset];
        int den_power = std::min<int>(data[offset + 1], 16);
        if (numerator > 0) {
          out.grid.time_signatures.push_back(TimeSignatureEvent{tick, numerator, 1 << den_power});
        }
      } else if (meta_type == 0x2F) {
        offset = end;
        break;
      }
      offset += length;
      continue;
    }

    if (lead == 0xF0 || lead == 0xF7) {
      // SysEx: skipped by declared length, never interpreted.
      ++offset;
      std::uint32_t length = readVlq(data, offset, end);
      requireBytes(length);
      offset += length;
      continue;
    }

    std::uint8_t status;
    if (lead & 0x80u) {
      if (lead >= 0xF0) {
        throw ParseError(ParseErrorKind::MalformedEvent, "system message inside track chunk");
      }
      status = lead;
      running_status = status;
      ++offset;
    } else {
      if (running_status == 0) {
        throw ParseError(ParseErrorKind::MalformedEvent, "data byte with no running status");
      }
      status = running_status;
    }

    std::uint8_t kind = status & 0xF0u;
    std::uint8_t channel = status & 0x0Fu;

    if (kind == 0xC0 || kind == 0xD0) {
      requireBytes(1);
      ++offset;
      continue;
    }

    requireBytes(2);
    std::uint8_t data1 = data[offset++] & 0x7Fu;
    std::uint8_t data2 = data[offset++] & 0x7Fu;

    if (kind == 0x90 && data2 > 0) {
      pending.push_back(PendingNote{tick, data1, data2, channel, true});
    } else if (kind == 0x80 || kind == 0x90) {
      closeNote(channel, data1, tick);
    }
    // 0xA0/0xB0/0xE0 carry no note information; data already consumed.
  }

  for (const auto& p : pending) {
    if (p.open) {
      notes.push_back(NoteEvent{p.onset, tick - p.onset, p.pitch, p.velocity, p.channel,
                                track_index});
      out.warnings.push_back("DanglingNoteOn: track " + std::to_string(track_index) + " pitch " +
                             std::to_string(p.pitch) + " closed at tick " + std::to_string(tick));
    }
  }

  std::sort(notes.begin(), notes.end(), [](const NoteEvent& a, const NoteEvent& b) {
    return std::tie(a.onset, a.pitch, a.duration) < std::tie(b.onset, b.pitch, b.duration);
  });
  out.tracks.push_back(std::move(notes));
}

}  // namespace detail

/// Decodes a format 0/1 SMF byte sequence.
///
/// Throws ParseError (MalformedHeader, UnsupportedFormat, TruncatedTrack,
/// MalformedEvent). Dangling note-ons are not errors: they close at track end
/// and land in SmfData::warnings.
inline SmfData parseSmf(std::span<const std::uint8_t> bytes) {
  const std::uint8_t* data = bytes.data();
  std::size_t size = bytes.size();

  if (size < 14 || std::memcmp(data, "MThd", 4) != 0) {
    throw ParseError(ParseErrorKind::MalformedHeader, "missing MThd header");
  }
  std::uint32_t header_length = detail::readBe32(data, 4);
  if (header_length < 6 || 8 + static_cast<std::size_t>(header_length) > size) {
    throw ParseError(ParseErrorKind::MalformedHeader, "bad MThd length");
  }
  std::uint16_t format = detail::readBe16(data, 8);
  std::uint16_t declared_tracks = detail::readBe16(data, 10);
  std::uint16_t division = detail::readBe16(data, 12);

  if (format > 1) {
    throw ParseError(ParseErrorKind::UnsupportedFormat,
                     "format " + std::to_string(format) + " not supported");
  }
  if (division & 0x8000u) {
    throw ParseError(ParseErrorKind::UnsupportedFormat, "SMPTE time division not supported");
  }
  if (division == 0) {
    throw ParseError(ParseErrorKind::MalformedHeader, "zero ticks-per-quarter division");
  }

  SmfData out;
  out.grid.ticks_per_quarter = division;

  std::size_t offset = 8 + header_length;
  std::uint16_t parsed_tracks = 0;
  while (parsed_tracks < declared_tracks) {
    if (offset + 8 > size) {
      throw ParseError(ParseErrorKind::TruncatedTrack,
                       "expected " + std::to_string(declared_tracks) + " tracks, found " +
                           std::to_string(parsed_tracks));
    }
    std::uint32_t chunk_length = detail::readBe32(data, offset + 4);
    bool is_track = std::memcmp(data + offset, "MTrk", 4) == 0;
    offset += 8;
    if (offset + chunk_length > size) {
      throw ParseError(ParseErrorKind::TruncatedTrack, "chunk shorter than declared length");
    }
    if (is_track) {
      detail::parseTrackChunk(data, offset, offset + chunk_length, parsed_tracks, out);
      ++parsed_tracks;
    }
    // Alien chunk types are skipped by length.
    offset += chunk_length;
  }

  auto byTick = [](const auto& a, const auto& b) { return a.tick < b.tick; };
  std::stable_sort(out.grid.time_signatures.begin(), out.grid.time_signatures.end(), byTick);
  std::stable_sort(out.grid.tempos.begin(), out.grid.tempos.end(), byTick);
  if (out.grid.time_signatures.empty() || out.grid.time_signatures.front().tick != 0) {
    out.grid.time_signatures.insert(out.grid.time_signatures.begin(),
                                    TimeSignatureEvent{0, 4, 4});
  }
  if (out.grid.tempos.empty() || out.grid.tempos.front().tick != 0) {
    out.grid.tempos.insert(out.grid.tempos.begin(), TempoEvent{0, 500000});
  }
  return out;
}

inline SmfData parseSmf(const std::vector<std::uint8_t>& bytes) {
  return parseSmf(std::span<const std::uint8_t>(bytes.data(), bytes.size()));
}

inline std::vector<std::uint8_t> readBinaryFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open file: " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoError("read failure: " + path.string());
  }
  return bytes;
}

inline SmfData parseSmfFile(const std::filesystem::path& path) {
  return parseSmf(readBinaryFile(path));
}

}  // namespace modescore

#endif  // MODESCORE_SMF_READER_HPP
