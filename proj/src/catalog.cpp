#include "credrepair/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "credrepair/error.hpp"
#include "credrepair/text.hpp"

namespace credrepair {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const std::unordered_set<std::string>& stopwords() {
  static const std::unordered_set<std::string> kStopwords = {
      "a",    "an",   "the",  "of",    "in",    "on",    "at",    "to",
      "for",  "from", "by",   "with",  "and",   "or",    "but",   "is",
      "are",  "was",  "were", "be",    "been",  "being", "as",    "that",
      "this", "these", "those", "it",  "its",   "he",    "she",   "they",
      "them", "his",  "her",  "their", "we",    "you",   "i",     "not",
      "no",   "do",   "does", "did",   "has",   "have",  "had",   "will",
      "would", "can", "could", "may",  "might", "shall", "should"};
  return kStopwords;
}

std::vector<std::string> normalize_units(const std::vector<std::string>& units,
                                         const std::string& frame_name) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& u : units) {
    std::string lower = to_lower(u);
    if (lower.empty()) continue;
    if (seen.insert(lower).second) out.push_back(lower);
  }
  if (out.empty()) {
    throw ValidationError("frame '" + frame_name + "' has no lexical units");
  }
  return out;
}

FrameDef parse_frame(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("frame_name") || !j.contains("lexical_units")) {
    throw ParseError(where + ": frame entries need frame_name and lexical_units");
  }
  FrameDef frame;
  frame.frame_name = j.at("frame_name").get<std::string>();
  frame.lexical_units = normalize_units(
      j.at("lexical_units").get<std::vector<std::string>>(), frame.frame_name);
  return frame;
}

ordered_json frame_to_json(const FrameDef& f) {
  ordered_json j;
  j["frame_name"] = f.frame_name;
  j["lexical_units"] = f.lexical_units;
  return j;
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return doc;
}

}  // namespace

RelationCatalog::RelationCatalog(std::vector<RelationDef> relations)
    : relations_(std::move(relations)) {
  if (relations_.empty() || relations_.back().name != kCannotRepair) {
    RelationDef reserved;
    reserved.name = kCannotRepair;
    reserved.aliases = {to_lower(kCannotRepair)};
    relations_.push_back(std::move(reserved));
  }
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    RelationDef& rel = relations_[i];
    if (rel.name.empty()) {
      throw ValidationError("relation at index " + std::to_string(i) + " has empty name");
    }
    if (rel.name == kCannotRepair && i + 1 != relations_.size()) {
      throw ValidationError("reserved relation " + std::string(kCannotRepair) +
                            " may only appear as the last entry");
    }
    // Canonical name counts as an alias.
    std::string canonical = to_lower(rel.name);
    std::vector<std::string> aliases;
    std::unordered_set<std::string> seen;
    aliases.push_back(canonical);
    seen.insert(canonical);
    for (const auto& a : rel.aliases) {
      std::string lower = to_lower(a);
      if (lower.empty()) continue;
      if (seen.insert(lower).second) aliases.push_back(lower);
    }
    rel.aliases = std::move(aliases);
    if (!index_.emplace(rel.name, static_cast<int>(i)).second) {
      throw ValidationError("duplicate relation name '" + rel.name + "'");
    }
  }
}

std::optional<int> RelationCatalog::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void RelationCatalog::set_auto_frames(int index, std::vector<FrameDef> frames) {
  relations_.at(index).auto_frames = std::move(frames);
}

void AliasDb::add(const std::string& entity, const std::string& alias) {
  std::string key = to_lower(entity);
  auto& set = aliases_[key];
  set.insert(key);  // identity invariant
  std::string value = to_lower(alias);
  if (!value.empty()) set.insert(value);
}

std::set<std::string> AliasDb::lookup(const std::string& entity) const {
  std::string key = to_lower(entity);
  auto it = aliases_.find(key);
  if (it == aliases_.end()) return {key};
  return it->second;
}

void ParaphraseTable::add(const std::string& phrase, const std::string& paraphrase) {
  std::string value = to_lower(paraphrase);
  if (value.empty()) throw ValidationError("empty paraphrase for '" + phrase + "'");
  table_[to_lower(phrase)].insert(value);
}

std::set<std::string> ParaphraseTable::lookup(const std::string& phrase) const {
  auto it = table_.find(to_lower(phrase));
  if (it == table_.end()) return {};
  return it->second;
}

RelationCatalog load_catalog(const std::filesystem::path& path) {
  json doc = load_json_file(path);
  if (!doc.is_object() || !doc.contains("relations") || !doc["relations"].is_array()) {
    throw ParseError(path.string() + ": expected top-level object with a 'relations' array");
  }
  std::vector<RelationDef> relations;
  int idx = 0;
  for (const auto& entry : doc["relations"]) {
    std::string where = path.string() + ": relation #" + std::to_string(idx);
    if (!entry.is_object() || !entry.contains("name")) {
      throw ParseError(where + ": missing 'name'");
    }
    RelationDef rel;
    try {
      rel.name = entry.at("name").get<std::string>();
      where = path.string() + ": relation '" + rel.name + "'";
      if (entry.contains("aliases")) {
        rel.aliases = entry.at("aliases").get<std::vector<std::string>>();
      }
      rel.description = entry.value("description", std::string{});
      if (entry.contains("expert_frames")) {
        for (const auto& f : entry.at("expert_frames")) {
          rel.expert_frames.push_back(parse_frame(f, where));
        }
      }
      if (entry.contains("auto_frames")) {
        for (const auto& f : entry.at("auto_frames")) {
          rel.auto_frames.push_back(parse_frame(f, where));
        }
      }
    } catch (const json::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
    relations.push_back(std::move(rel));
    ++idx;
  }
  return RelationCatalog(std::move(relations));
}

void save_catalog(const RelationCatalog& catalog, const std::filesystem::path& path) {
  ordered_json doc;
  doc["relations"] = ordered_json::array();
  for (const auto& rel : catalog.relations()) {
    ordered_json j;
    j["name"] = rel.name;
    j["aliases"] = rel.aliases;
    j["description"] = rel.description;
    j["expert_frames"] = ordered_json::array();
    for (const auto& f : rel.expert_frames) j["expert_frames"].push_back(frame_to_json(f));
    j["auto_frames"] = ordered_json::array();
    for (const auto& f : rel.auto_frames) j["auto_frames"].push_back(frame_to_json(f));
    doc["relations"].push_back(std::move(j));
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

std::vector<FrameDef> load_frame_inventory(const std::filesystem::path& path) {
  json doc = load_json_file(path);
  if (!doc.is_object() || !doc.contains("frames") || !doc["frames"].is_array()) {
    throw ParseError(path.string() + ": expected top-level object with a 'frames' array");
  }
  std::vector<FrameDef> frames;
  for (const auto& f : doc["frames"]) {
    frames.push_back(parse_frame(f, path.string()));
  }
  return frames;
}

namespace {

template <typename Fn>
void load_tsv(const std::filesystem::path& path, Fn&& add) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": expected key<TAB>value");
    }
    add(line.substr(0, tab), line.substr(tab + 1));
  }
}

}  // namespace

AliasDb load_alias_db(const std::filesystem::path& path) {
  AliasDb db;
  load_tsv(path, [&](const std::string& k, const std::string& v) { db.add(k, v); });
  return db;
}

ParaphraseTable load_paraphrase_table(const std::filesystem::path& path) {
  ParaphraseTable table;
  load_tsv(path, [&](const std::string& k, const std::string& v) { table.add(k, v); });
  return table;
}

bool is_stopword(const std::string& token) { return stopwords().count(token) > 0; }

RelationCatalog auto_frame_mapping(RelationCatalog catalog,
                                   const std::vector<FrameDef>& frame_inventory,
                                   int min_overlap) {
  if (frame_inventory.empty()) {
    throw ValidationError("auto frame mapping needs a nonempty frame inventory");
  }
  for (int i = 0; i < catalog.num_classes(); ++i) {
    if (i == catalog.cannot_repair_index()) {
      catalog.set_auto_frames(i, {});
      continue;
    }
    const RelationDef& rel = catalog.relation(i);
    std::unordered_set<std::string> bag;
    for (const auto& tok : tokenize(rel.description)) {
      if (!is_stopword(tok)) bag.insert(tok);
    }
    for (const auto& alias : rel.aliases) {
      for (const auto& tok : tokenize(alias)) {
        if (!is_stopword(tok)) bag.insert(tok);
      }
    }
    std::vector<FrameDef> mapped;
    std::unordered_set<std::string> mapped_names;
    for (const auto& frame : frame_inventory) {
      int overlap = 0;
      for (const auto& unit : frame.lexical_units) {
        for (const auto& tok : tokenize(unit)) {
          if (bag.count(tok)) ++overlap;
        }
      }
      if (overlap >= min_overlap && mapped_names.insert(frame.frame_name).second) {
        mapped.push_back(frame);
      }
    }
    catalog.set_auto_frames(i, std::move(mapped));
  }
  return catalog;
}

std::vector<FrameDef> expert_frame_inventory(const RelationCatalog& catalog) {
  std::vector<FrameDef> frames;
  std::unordered_set<std::string> seen;
  for (const auto& rel : catalog.relations()) {
    for (const auto& f : rel.expert_frames) {
      if (seen.insert(f.frame_name).second) frames.push_back(f);
    }
  }
  return frames;
}

}  // namespace credrepair
