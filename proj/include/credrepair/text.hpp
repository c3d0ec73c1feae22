#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace credrepair {

// Lowercase, split on whitespace, strip leading/trailing punctuation from
// each token, drop empties. Interior punctuation is kept, so "U.S.-based,"
// becomes "u.s.-based".
std::vector<std::string> tokenize(std::string_view text);

std::string to_lower(std::string_view s);

// True if `needle` occurs as a contiguous subsequence of `haystack`.
// Empty needles never match.
bool contains_token_seq(const std::vector<std::string>& haystack,
                        const std::vector<std::string>& needle);

// Convenience splitter for raw prose; splits on '.', '?', '!' followed by
// whitespace. Provided for ad-hoc ingestion only -- the pipeline expects
// documents that are already sentence-segmented.
std::vector<std::string> naive_sentence_split(std::string_view text);

}  // namespace credrepair
