#include "credrepair/relevance.hpp"

#include <algorithm>

#include "credrepair/error.hpp"
#include "credrepair/text.hpp"

namespace credrepair {

namespace {

bool phrase_in(const std::vector<std::string>& sentence_tokens, const std::string& phrase) {
  return contains_token_seq(sentence_tokens, tokenize(phrase));
}

bool any_alias_in(const std::vector<std::string>& sentence_tokens,
                  const std::set<std::string>& aliases, const std::string& canonical) {
  std::string canon = to_lower(canonical);
  for (const auto& alias : aliases) {
    if (alias == canon) continue;  // canonical handled by the *_match flag
    if (phrase_in(sentence_tokens, alias)) return true;
  }
  return false;
}

const std::vector<FrameDef>* frames_for(const RelationDef& rel, FrameMode mode) {
  switch (mode) {
    case FrameMode::kExpert:
      return &rel.expert_frames;
    case FrameMode::kAuto:
      return &rel.auto_frames;
    case FrameMode::kOff:
      return nullptr;
  }
  return nullptr;
}

}  // namespace

std::optional<RelevantSentence> sentence_relevance(const std::string& sentence,
                                                   const Fact& fact,
                                                   const AliasDb& alias_db,
                                                   const ParaphraseTable& paraphrases,
                                                   const RelationCatalog& catalog,
                                                   FrameMode frame_mode) {
  const std::vector<std::string> tokens = tokenize(sentence);
  RelevanceFlags flags;
  flags.subject_match = phrase_in(tokens, fact.subject);
  flags.subject_alias = any_alias_in(tokens, alias_db.lookup(fact.subject), fact.subject);
  flags.object_match = phrase_in(tokens, fact.object);
  flags.object_alias = any_alias_in(tokens, alias_db.lookup(fact.object), fact.object);
  for (const auto& para : paraphrases.lookup(fact.object)) {
    if (phrase_in(tokens, para)) {
      flags.object_paraphrase = true;
      break;
    }
  }

  auto rel_index = catalog.index_of(fact.relation);
  if (!rel_index) {
    throw ValidationError("fact relation '" + fact.relation + "' not in catalog");
  }
  const RelationDef& rel = catalog.relation(*rel_index);
  for (const auto& alias : rel.aliases) {
    if (phrase_in(tokens, alias)) {
      flags.predicate_alias = true;
      break;
    }
  }
  if (const auto* frames = frames_for(rel, frame_mode)) {
    for (const auto& frame : *frames) {
      for (const auto& unit : frame.lexical_units) {
        if (phrase_in(tokens, unit)) {
          flags.frame_trigger = true;
          break;
        }
      }
      if (flags.frame_trigger) break;
    }
  }

  if (!flags.any()) return std::nullopt;
  return RelevantSentence{sentence, flags};
}

std::vector<RelevantSentence> relevant_sentences(const Document& doc, const Fact& fact,
                                                 const AliasDb& alias_db,
                                                 const ParaphraseTable& paraphrases,
                                                 const RelationCatalog& catalog,
                                                 FrameMode frame_mode) {
  std::vector<RelevantSentence> out;
  for (const auto& sentence : doc.sentences) {
    if (auto rel = sentence_relevance(sentence, fact, alias_db, paraphrases, catalog,
                                      frame_mode)) {
      out.push_back(std::move(*rel));
    }
  }
  return out;
}

std::vector<RelevantSentence> select_from_relevant(
    const std::vector<RelevantSentence>& relevant, int k, RngStream rng,
    FrameFilter frame_filter) {
  std::vector<RelevantSentence> filtered;
  for (const auto& s : relevant) {
    switch (frame_filter) {
      case FrameFilter::kAllRelevant:
        filtered.push_back(s);
        break;
      case FrameFilter::kFramesOnly:
        if (s.flags.frame_trigger) filtered.push_back(s);
        break;
      case FrameFilter::kNoFrames:
        if (s.flags.any_non_frame()) filtered.push_back(s);
        break;
    }
  }
  if (k == kAllSentences || filtered.size() <= static_cast<std::size_t>(k)) {
    return filtered;  // fewer than the target: use all of them
  }
  std::vector<std::size_t> picks =
      rng.sample_indices(filtered.size(), static_cast<std::size_t>(k));
  std::vector<RelevantSentence> out;
  out.reserve(picks.size());
  for (std::size_t idx : picks) out.push_back(filtered[idx]);
  return out;
}

std::vector<RelevantSentence> select_sentences(const Document& doc, const Fact& fact,
                                               int k, RngStream rng,
                                               FrameFilter frame_filter,
                                               const AliasDb& alias_db,
                                               const ParaphraseTable& paraphrases,
                                               const RelationCatalog& catalog,
                                               FrameMode frame_mode) {
  if (k < 0) throw ValidationError("sentence count k must be >= 0");
  return select_from_relevant(
      relevant_sentences(doc, fact, alias_db, paraphrases, catalog, frame_mode), k,
      std::move(rng), frame_filter);
}

FrameMode frame_mode_from_string(const std::string& s) {
  if (s == "expert") return FrameMode::kExpert;
  if (s == "auto") return FrameMode::kAuto;
  if (s == "off") return FrameMode::kOff;
  throw ValidationError("unknown frame mode '" + s + "' (expert|auto|off)");
}

FrameFilter frame_filter_from_string(const std::string& s) {
  if (s == "all_relevant") return FrameFilter::kAllRelevant;
  if (s == "frames_only") return FrameFilter::kFramesOnly;
  if (s == "no_frames") return FrameFilter::kNoFrames;
  throw ValidationError("unknown frame filter '" + s +
                        "' (all_relevant|frames_only|no_frames)");
}

std::string to_string(FrameMode mode) {
  switch (mode) {
    case FrameMode::kExpert: return "expert";
    case FrameMode::kAuto: return "auto";
    case FrameMode::kOff: return "off";
  }
  return "?";
}

std::string to_string(FrameFilter filter) {
  switch (filter) {
    case FrameFilter::kAllRelevant: return "all_relevant";
    case FrameFilter::kFramesOnly: return "frames_only";
    case FrameFilter::kNoFrames: return "no_frames";
  }
  return "?";
}

}  // namespace credrepair
