#include "credrepair/text.hpp"

#include <algorithm>
#include <cctype>

namespace credrepair {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i == start) continue;
    std::size_t lo = start;
    std::size_t hi = i;
    while (lo < hi && is_punct(text[lo])) ++lo;
    while (hi > lo && is_punct(text[hi - 1])) --hi;
    if (hi > lo) tokens.push_back(to_lower(text.substr(lo, hi - lo)));
  }
  return tokens;
}

bool contains_token_seq(const std::vector<std::string>& haystack,
                        const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
         haystack.end();
}

std::vector<std::string> naive_sentence_split(std::string_view text) {
  std::vector<std::string> sentences;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    current.push_back(text[i]);
    char c = text[i];
    bool boundary = (c == '.' || c == '?' || c == '!') &&
                    (i + 1 == text.size() || is_space(text[i + 1]));
    if (boundary) {
      while (!current.empty() && is_space(current.front())) current.erase(current.begin());
      if (!current.empty()) sentences.push_back(current);
      current.clear();
    }
  }
  while (!current.empty() && is_space(current.front())) current.erase(current.begin());
  if (!current.empty() &&
      current.find_first_not_of(" \t\r\n") != std::string::npos) {
    sentences.push_back(current);
  }
  return sentences;
}

}  // namespace credrepair
