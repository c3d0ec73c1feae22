#include "credrepair/features.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "credrepair/error.hpp"
#include "credrepair/text.hpp"

namespace credrepair {

FeatureVector build_features(const Fact& /*fact*/,
                             const std::vector<RelevantSentence>& sentences,
                             const EmbeddingTable& embeddings) {
  if (sentences.empty()) {
    throw ValidationError("build_features needs at least one relevant sentence");
  }
  const int e = embeddings.dimension();
  FeatureVector fv;
  fv.e = e;
  fv.values.assign(e + kNumRelevanceFlags, 0.0);

  std::size_t token_count = 0;
  std::array<bool, kNumRelevanceFlags> flags{};
  for (const auto& sentence : sentences) {
    for (const auto& token : tokenize(sentence.text)) {
      auto vec = embeddings.lookup(token);
      for (int i = 0; i < e; ++i) fv.values[i] += vec[i];
      ++token_count;
    }
    auto sentence_flags = sentence.flags.as_array();
    for (int i = 0; i < kNumRelevanceFlags; ++i) {
      flags[i] = flags[i] || sentence_flags[i];
    }
  }
  if (token_count > 0) {
    for (int i = 0; i < e; ++i) fv.values[i] /= static_cast<double>(token_count);
  }
  for (int i = 0; i < kNumRelevanceFlags; ++i) {
    fv.values[e + i] = flags[i] ? 1.0 : 0.0;
  }
  return fv;
}

namespace {

constexpr char kCacheMagic[8] = {'C', 'R', 'F', 'C', 'A', 'C', 'H', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in, const std::string& what) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw ParseError("truncated cache: " + what);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& out, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& in, const std::string& what) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw ParseError("truncated cache: " + what);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_feature_cache(const std::vector<CachedFeatures>& entries, int e,
                         const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(kCacheMagic, sizeof(kCacheMagic));
  put_u32(out, 1);  // version
  put_u32(out, static_cast<std::uint32_t>(e));
  put_u32(out, kNumRelevanceFlags);
  put_u32(out, static_cast<std::uint32_t>(entries.size()));
  for (const auto& entry : entries) {
    if (entry.features.size() != e + kNumRelevanceFlags) {
      throw ValidationError("cached feature length mismatch for '" + entry.id + "'");
    }
    put_u32(out, static_cast<std::uint32_t>(entry.id.size()));
    out.write(entry.id.data(), static_cast<std::streamsize>(entry.id.size()));
    for (double v : entry.features.values) put_f64(out, v);
  }
}

std::vector<CachedFeatures> read_feature_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kCacheMagic, 8) != 0) {
    throw ParseError(path.string() + ": not a feature cache file");
  }
  std::uint32_t version = get_u32(in, "version");
  if (version != 1) {
    throw ParseError(path.string() + ": unsupported cache version " +
                     std::to_string(version));
  }
  int e = static_cast<int>(get_u32(in, "e"));
  int n = static_cast<int>(get_u32(in, "n"));
  if (n != kNumRelevanceFlags) {
    throw ParseError(path.string() + ": flag count " + std::to_string(n) +
                     " does not match this build");
  }
  std::uint32_t count = get_u32(in, "count");
  std::vector<CachedFeatures> entries;
  entries.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    CachedFeatures entry;
    std::uint32_t id_len = get_u32(in, "id length");
    entry.id.resize(id_len);
    if (!in.read(entry.id.data(), id_len)) throw ParseError("truncated cache: id");
    entry.features.e = e;
    entry.features.values.resize(e + n);
    for (auto& v : entry.features.values) v = get_f64(in, "value");
    entries.push_back(std::move(entry));
  }
  return entries;
}

}  // namespace credrepair
