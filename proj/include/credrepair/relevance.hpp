#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "credrepair/catalog.hpp"
#include "credrepair/corpus.hpp"
#include "credrepair/rng.hpp"

namespace credrepair {

// Which relation->frame mapping drives the frame-trigger criterion.
enum class FrameMode { kExpert, kAuto, kOff };

// How the relevant set is filtered before sentence sampling.
enum class FrameFilter { kAllRelevant, kFramesOnly, kNoFrames };

inline constexpr int kNumRelevanceFlags = 7;

struct RelevanceFlags {
  bool subject_match = false;
  bool subject_alias = false;
  bool object_match = false;
  bool object_alias = false;
  bool object_paraphrase = false;
  bool predicate_alias = false;
  bool frame_trigger = false;

  bool any() const {
    return subject_match || subject_alias || object_match || object_alias ||
           object_paraphrase || predicate_alias || frame_trigger;
  }
  bool any_non_frame() const {
    return subject_match || subject_alias || object_match || object_alias ||
           object_paraphrase || predicate_alias;
  }
  // Fixed flag order used throughout the feature vector.
  std::array<bool, kNumRelevanceFlags> as_array() const {
    return {subject_match, subject_alias,     object_match,   object_alias,
            object_paraphrase, predicate_alias, frame_trigger};
  }

  bool operator==(const RelevanceFlags&) const = default;
};

struct RelevantSentence {
  std::string text;
  RelevanceFlags flags;
};

// Sentinel for "use every relevant sentence".
inline constexpr int kAllSentences = 0;

// Applies the relevance criteria to one sentence; absent when nothing
// fires. Matching is case-insensitive whole-token-sequence containment.
// subject_match/object_match cover the canonical strings; the alias flags
// cover non-canonical aliases only, so the flags stay informative.
std::optional<RelevantSentence> sentence_relevance(const std::string& sentence,
                                                   const Fact& fact,
                                                   const AliasDb& alias_db,
                                                   const ParaphraseTable& paraphrases,
                                                   const RelationCatalog& catalog,
                                                   FrameMode frame_mode);

// All relevant sentences of the document, in document order.
std::vector<RelevantSentence> relevant_sentences(const Document& doc, const Fact& fact,
                                                 const AliasDb& alias_db,
                                                 const ParaphraseTable& paraphrases,
                                                 const RelationCatalog& catalog,
                                                 FrameMode frame_mode);

// Filters by frame_filter, then samples k sentences uniformly without
// replacement (document order preserved). k = kAllSentences or k >= the
// filtered count returns the whole filtered set. An empty result means the
// fact has no usable provenance; callers exclude such facts.
std::vector<RelevantSentence> select_sentences(const Document& doc, const Fact& fact,
                                               int k, RngStream rng,
                                               FrameFilter frame_filter,
                                               const AliasDb& alias_db,
                                               const ParaphraseTable& paraphrases,
                                               const RelationCatalog& catalog,
                                               FrameMode frame_mode);

// Same filter + sampling over a precomputed relevant set.
std::vector<RelevantSentence> select_from_relevant(
    const std::vector<RelevantSentence>& relevant, int k, RngStream rng,
    FrameFilter frame_filter);

FrameMode frame_mode_from_string(const std::string& s);
FrameFilter frame_filter_from_string(const std::string& s);
std::string to_string(FrameMode mode);
std::string to_string(FrameFilter filter);

}  // namespace credrepair
