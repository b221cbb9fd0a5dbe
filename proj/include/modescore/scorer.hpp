/// @file
/// @brief Abnormal mode-change detection along a bar-mode trace and the
///        human/machine provenance score built from it.

#ifndef MODESCORE_SCORER_HPP
#define MODESCORE_SCORER_HPP

#include <cstdio>
#include <string>
#include <vector>

#include "modescore/events.hpp"
#include "modescore/extractor.hpp"
#include "modescore/theory.hpp"

namespace modescore {

enum class PolicyKind {
  AnchorReturn,  // default: abnormal runs end only on an exact return to the anchor
  Pairwise,      // each transition judged against its predecessor alone
};

struct TransitionPolicy {
  PolicyKind kind = PolicyKind::AnchorReturn;
  int close_threshold = 1;  // fifths-distance bound for "closely related"
};

enum class TransitionState { Stable, Abnormal, Pairwise };

inline const char* transitionStateName(TransitionState state) {
  switch (state) {
    case TransitionState::Stable: return "stable";
    case TransitionState::Abnormal: return "abnormal";
    case TransitionState::Pairwise: return "pairwise";
  }
  return "unknown";
}

/// Audit record for one bar boundary.
struct TransitionFlag {
  int from_bar = 0;
  int to_bar = 0;
  BarMode prev;
  BarMode cur;
  bool abnormal = false;
  TransitionState state = TransitionState::Stable;  // state after evaluating
};

/// Abnormal-change count over modifiable transitions, kept as an exact ratio.
struct ProvenanceScore {
  int abnormal_count = 0;
  int transition_count = 0;  // bar count - 1, or 0 for degenerate pieces
  bool degenerate = false;   // piece had no bars
  std::vector<TransitionFlag> flags;

  double value() const {
    return transition_count > 0
               ? static_cast<double>(abnormal_count) / static_cast<double>(transition_count)
               : 0.0;
  }

  /// Exact rendering to six decimals; 6/10 prints as "0.600000".
  std::string text() const { return formatRatio(abnormal_count, transition_count); }

  static std::string formatRatio(long long numerator, long long denominator) {
    long long scaled = 0;
    if (denominator > 0) {
      scaled = (numerator * 1000000 + denominator / 2) / denominator;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld.%06lld", scaled / 1000000, scaled % 1000000);
    return buf;
  }
};

/// Walks consecutive bar pairs and flags abnormal mode changes.
///
/// AnchorReturn keeps an anchor mode and a stable/abnormal state. While
/// stable, a step to an Unknown bar or to a mode not closely related to the
/// anchor is abnormal and opens an abnormal run; a normal step moves the
/// anchor along. An abnormal run closes (and the step counts normal) only
/// when the trace re-enters the anchor exactly. Leading Unknown bars leave
/// the anchor unseeded and every step abnormal until a known mode arrives.
///
/// Pairwise flags a step iff either side is Unknown or the two modes are not
/// closely related.
inline ProvenanceScore abnormalTransitions(const ModeTrace& trace,
                                           const TransitionPolicy& policy = {}) {
  if (trace.empty()) {
    throw AnalysisError(AnalysisErrorKind::EmptyTrace, "transition scan over empty trace");
  }

  ProvenanceScore score;
  score.transition_count = static_cast<int>(trace.size()) - 1;
  score.flags.reserve(static_cast<std::size_t>(score.transition_count));

  if (policy.kind == PolicyKind::Pairwise) {
    for (std::size_t i = 1; i < trace.size(); ++i) {
      const BarMode& prev = trace[i - 1];
      const BarMode& cur = trace[i];
      bool abnormal =
          !prev || !cur || !closelyRelated(*prev, *cur, policy.close_threshold);
      score.abnormal_count += abnormal ? 1 : 0;
      score.flags.push_back(TransitionFlag{static_cast<int>(i) - 1, static_cast<int>(i), prev,
                                           cur, abnormal, TransitionState::Pairwise});
    }
    return score;
  }

  BarMode anchor = trace.front();  // Unknown stays unseeded
  TransitionState state = anchor ? TransitionState::Stable : TransitionState::Abnormal;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const BarMode& cur = trace[i];
    bool abnormal;
    if (!anchor) {
      abnormal = true;
      if (cur) {
        anchor = cur;
        state = TransitionState::Stable;
      }
    } else if (state == TransitionState::Stable) {
      if (cur && closelyRelated(*cur, *anchor, policy.close_threshold)) {
        abnormal = false;
        anchor = cur;
      } else {
        abnormal = true;
        state = TransitionState::Abnormal;
      }
    } else {
      if (cur && *cur == *anchor) {
        abnormal = false;
        state = TransitionState::Stable;
      } else {
        abnormal = true;
      }
    }
    score.abnormal_count += abnormal ? 1 : 0;
    score.flags.push_back(TransitionFlag{static_cast<int>(i) - 1, static_cast<int>(i),
                                         trace[i - 1], cur, abnormal, state});
  }
  return score;
}

/// Every analysis artifact for one melody, bars through score.
struct BarAnalysis {
  std::vector<CandidateSet> sets;
  TendencyRanking ranking;
  ModeTrace trace;
  ProvenanceScore score;
};

inline BarAnalysis analyzeBars(const std::vector<Bar>& bars, const TransitionPolicy& policy = {}) {
  BarAnalysis analysis;
  if (bars.empty()) {
    analysis.score.degenerate = true;
    return analysis;
  }
  analysis.sets.reserve(bars.size());
  for (const auto& bar : bars) {
    analysis.sets.push_back(candidateModes(bar));
  }
  analysis.ranking = tendencyRanking(analysis.sets);
  analysis.trace = assignBarModes(analysis.sets, analysis.ranking);
  analysis.score = abnormalTransitions(analysis.trace, policy);
  return analysis;
}

/// Full extractor + scorer composition; empty or single-bar input yields a
/// zero score with zero transitions.
inline ProvenanceScore melodyScore(const std::vector<Bar>& bars,
                                   const TransitionPolicy& policy = {}) {
  return analyzeBars(bars, policy).score;
}

enum class Direction { LowIsMachine, HighIsMachine };
enum class Label { Machine, Human };

inline const char* labelName(Label label) {
  return label == Label::Machine ? "Machine" : "Human";
}

/// Threshold rule is boundary-inclusive: LowIsMachine labels Machine iff
/// score <= threshold; HighIsMachine inverts.
inline Label classifyScore(const ProvenanceScore& score, double threshold,
                           Direction direction = Direction::LowIsMachine) {
  bool machine = score.value() <= threshold;
  if (direction == Direction::HighIsMachine) {
    machine = !machine;
  }
  return machine ? Label::Machine : Label::Human;
}

}  // namespace modescore

#endif  // MODESCORE_SCORER_HPP
