/// @file
/// @brief Pitch-class arithmetic, the 24-mode universe, and the scale/mask
///        construction rules that drive per-bar mode exclusion.

#ifndef MODESCORE_THEORY_HPP
#define MODESCORE_THEORY_HPP

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace modescore {

constexpr int kSemitonesPerOctave = 12;

/// Semitone index within the twelve-tone octave, 0 = C. Arithmetic wraps mod 12.
class PitchClass {
 public:
  constexpr PitchClass() = default;
  constexpr explicit PitchClass(int value) : value_(static_cast<std::int8_t>(wrap(value))) {}

  constexpr int value() const { return value_; }
  constexpr PitchClass transposed(int semitones) const { return PitchClass(value_ + semitones); }

  friend constexpr bool operator==(PitchClass, PitchClass) = default;
  friend constexpr auto operator<=>(PitchClass, PitchClass) = default;

 private:
  static constexpr int wrap(int v) { return ((v % 12) + 12) % 12; }

  std::int8_t value_ = 0;
};

/// Octave group of a MIDI pitch; pitch = pitchClassOf(p).value() + 12 * octaveOf(p).
constexpr int octaveOf(int pitch) { return pitch / kSemitonesPerOctave; }
constexpr PitchClass pitchClassOf(int pitch) { return PitchClass(pitch % kSemitonesPerOctave); }

/// Seven absolute semitone numbers of one scale octave, lowest first.
using ScaleSequence = std::array<int, 7>;
/// The five absolute semitone numbers foreign to a mode in one octave.
using MaskSequence = std::array<int, 5>;

/// Natural major: whole, whole, half, whole, whole, whole steps from the keynote.
inline constexpr std::array<int, 7> kMajorScaleOffsets = {0, 2, 4, 5, 7, 9, 11};
/// Natural minor: whole, half, whole, whole, half, whole steps from the keynote.
inline constexpr std::array<int, 7> kMinorScaleOffsets = {0, 2, 3, 5, 7, 8, 10};
/// Semitones absent from the natural major on the same keynote.
inline constexpr std::array<int, 5> kMajorMaskOffsets = {1, 3, 6, 8, 10};
/// Minor mask; differs from the major mask only in the raised fifth degree (7 vs 8).
inline constexpr std::array<int, 5> kMinorMaskOffsets = {1, 3, 6, 7, 10};

namespace detail {

template <std::size_t N>
constexpr std::array<int, N> offsetSequence(const std::array<int, N>& offsets, int keynote,
                                            int octave) {
  std::array<int, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = keynote + offsets[i] + octave * kSemitonesPerOctave;
  }
  return out;
}

}  // namespace detail

/// Natural major scale rooted at `keynote`, shifted into octave group `octave`.
constexpr ScaleSequence majorScale(PitchClass keynote, int octave) {
  return detail::offsetSequence(kMajorScaleOffsets, keynote.value(), octave);
}

/// Natural minor scale rooted at `keynote`, shifted into octave group `octave`.
constexpr ScaleSequence minorScale(PitchClass keynote, int octave) {
  return detail::offsetSequence(kMinorScaleOffsets, keynote.value(), octave);
}

/// Exclusion mask of the major on `keynote`: any pitch in it rules the mode out.
constexpr MaskSequence majorMask(PitchClass keynote, int octave) {
  return detail::offsetSequence(kMajorMaskOffsets, keynote.value(), octave);
}

/// Exclusion mask of the minor affiliated with the major on `keynote`.
constexpr MaskSequence minorMask(PitchClass keynote, int octave) {
  return detail::offsetSequence(kMinorMaskOffsets, keynote.value(), octave);
}

enum class ModeQuality : std::uint8_t { Major, Minor };

/// One of the 24 candidate keys: a reference keynote plus Major/Minor quality.
///
/// Minor modes are labelled by the keynote of their relative major, so C Major
/// and A minor share keynote 0. The sounding tonic of a minor is keynote + 9.
struct Mode {
  PitchClass keynote;
  ModeQuality quality = ModeQuality::Major;

  static constexpr Mode major(int keynote) { return {PitchClass(keynote), ModeQuality::Major}; }
  static constexpr Mode minor(int keynote) { return {PitchClass(keynote), ModeQuality::Minor}; }

  /// Canonical index: majors 0-11 by keynote, minors 12-23.
  constexpr int index() const {
    return (quality == ModeQuality::Major ? 0 : kSemitonesPerOctave) + keynote.value();
  }
  static constexpr Mode fromIndex(int index) {
    return {PitchClass(index % kSemitonesPerOctave),
            index < kSemitonesPerOctave ? ModeQuality::Major : ModeQuality::Minor};
  }

  /// Displayed tonic: the keynote itself for majors, keynote + 9 for minors.
  constexpr PitchClass tonic() const {
    return quality == ModeQuality::Major ? keynote : keynote.transposed(9);
  }

  friend constexpr bool operator==(Mode, Mode) = default;
};

constexpr int kModeCount = 24;

/// Set of pitch classes, stored as a 12-bit mask.
class PitchClassSet {
 public:
  constexpr PitchClassSet() = default;
  constexpr explicit PitchClassSet(std::uint16_t bits) : bits_(bits & 0x0FFF) {}

  static constexpr PitchClassSet full() { return PitchClassSet(0x0FFF); }

  constexpr void add(PitchClass pc) { bits_ |= static_cast<std::uint16_t>(1u << pc.value()); }
  constexpr bool contains(PitchClass pc) const { return (bits_ >> pc.value()) & 1u; }
  constexpr bool intersects(PitchClassSet other) const { return (bits_ & other.bits_) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr std::uint16_t bits() const { return bits_; }

  constexpr PitchClassSet complement() const {
    return PitchClassSet(static_cast<std::uint16_t>(~bits_));
  }
  constexpr PitchClassSet transposed(int semitones) const {
    int s = ((semitones % 12) + 12) % 12;
    std::uint32_t doubled = (static_cast<std::uint32_t>(bits_) << s);
    return PitchClassSet(static_cast<std::uint16_t>((doubled | (doubled >> 12)) & 0x0FFF));
  }

  friend constexpr PitchClassSet operator|(PitchClassSet a, PitchClassSet b) {
    return PitchClassSet(static_cast<std::uint16_t>(a.bits_ | b.bits_));
  }
  friend constexpr PitchClassSet operator&(PitchClassSet a, PitchClassSet b) {
    return PitchClassSet(static_cast<std::uint16_t>(a.bits_ & b.bits_));
  }
  friend constexpr bool operator==(PitchClassSet, PitchClassSet) = default;

 private:
  std::uint16_t bits_ = 0;
};

/// Octave-independent exclusion mask of a mode: the five pitch classes whose
/// presence in a bar rules the mode out, in any octave.
constexpr PitchClassSet maskPitchClasses(Mode mode) {
  const auto& offsets =
      mode.quality == ModeQuality::Major ? kMajorMaskOffsets : kMinorMaskOffsets;
  PitchClassSet set;
  for (int d : offsets) {
    set.add(mode.keynote.transposed(d));
  }
  return set;
}

/// Minimal number of perfect-fifth steps between two pitch classes (0-6).
///
/// Seven is its own inverse mod twelve, so the step count along the circle of
/// fifths is 7 * diff mod 12, folded onto the shorter direction.
constexpr int fifthsDistance(PitchClass a, PitchClass b) {
  int diff = b.value() - a.value();
  int steps = ((diff * 7) % 12 + 12) % 12;
  return steps <= 6 ? steps : 12 - steps;
}

/// Whether two modes count as closely related: keynotes at most `maxDistance`
/// fifths apart. Relative major/minor pairs share a keynote and always qualify.
constexpr bool closelyRelated(Mode a, Mode b, int maxDistance = 1) {
  return fifthsDistance(a.keynote, b.keynote) <= maxDistance;
}

inline constexpr std::array<std::string_view, 12> kPitchClassNames = {
    "C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"};

/// Report name: majors as "C".."B", minors as "Am".."G#m" (named by tonic).
inline std::string modeName(Mode mode) {
  std::string name(kPitchClassNames[static_cast<std::size_t>(mode.tonic().value())]);
  if (mode.quality == ModeQuality::Minor) {
    name += 'm';
  }
  return name;
}

/// Parses the names produced by modeName; rejects anything else.
inline std::optional<Mode> parseMode(std::string_view name) {
  bool minor = false;
  if (!name.empty() && name.back() == 'm') {
    minor = true;
    name.remove_suffix(1);
  }
  for (int pc = 0; pc < 12; ++pc) {
    if (name == kPitchClassNames[static_cast<std::size_t>(pc)]) {
      // Minor names carry the tonic; recover the relative-major keynote.
      int keynote = minor ? (pc + 3) % 12 : pc;
      return Mode{PitchClass(keynote), minor ? ModeQuality::Minor : ModeQuality::Major};
    }
  }
  return std::nullopt;
}

}  // namespace modescore

#endif  // MODESCORE_THEORY_HPP
