#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace credrepair {

// Reserved repair class for faux facts that have no valid correction.
inline constexpr const char* kCannotRepair = "CANNOT_REPAIR";

struct FrameDef {
  std::string frame_name;
  std::vector<std::string> lexical_units;  // lowercase, deduplicated, nonempty

  bool operator==(const FrameDef&) const = default;
};

struct RelationDef {
  std::string name;
  std::vector<std::string> aliases;  // lowercase; always contains the name
  std::string description;
  std::vector<FrameDef> expert_frames;
  std::vector<FrameDef> auto_frames;  // empty until auto_frame_mapping runs

  bool operator==(const RelationDef&) const = default;
};

// Ordered relation inventory. The reserved CANNOT_REPAIR entry is always
// the last index so the repair softmax head covers it directly.
class RelationCatalog {
 public:
  RelationCatalog() = default;
  explicit RelationCatalog(std::vector<RelationDef> relations);

  const std::vector<RelationDef>& relations() const { return relations_; }
  int cannot_repair_index() const { return static_cast<int>(relations_.size()) - 1; }
  int num_classes() const { return static_cast<int>(relations_.size()); }
  // Real relations, excluding the reserved class.
  int num_real_relations() const { return num_classes() - 1; }

  std::optional<int> index_of(const std::string& name) const;
  const RelationDef& relation(int index) const { return relations_.at(index); }

  void set_auto_frames(int index, std::vector<FrameDef> frames);

 private:
  std::vector<RelationDef> relations_;
  std::unordered_map<std::string, int> index_;
};

// Entity -> alias set, lowercase. Every known entity maps to itself.
class AliasDb {
 public:
  void add(const std::string& entity, const std::string& alias);
  // Alias set for the entity (identity included even for unknown entities).
  std::set<std::string> lookup(const std::string& entity) const;
  std::size_t size() const { return aliases_.size(); }

 private:
  std::unordered_map<std::string, std::set<std::string>> aliases_;
};

// Directed phrase -> paraphrase lookup, lowercase.
class ParaphraseTable {
 public:
  void add(const std::string& phrase, const std::string& paraphrase);
  std::set<std::string> lookup(const std::string& phrase) const;
  std::size_t size() const { return table_.size(); }

 private:
  std::unordered_map<std::string, std::set<std::string>> table_;
};

// Catalog document: JSON with a "relations" array; see README for the
// schema. Appends the reserved CANNOT_REPAIR class when absent.
RelationCatalog load_catalog(const std::filesystem::path& path);
void save_catalog(const RelationCatalog& catalog, const std::filesystem::path& path);

// Frame inventory file: JSON {"frames": [{frame_name, lexical_units}]}.
std::vector<FrameDef> load_frame_inventory(const std::filesystem::path& path);

// Tab-separated `key<TAB>alias` files, lowercased on load.
AliasDb load_alias_db(const std::filesystem::path& path);
ParaphraseTable load_paraphrase_table(const std::filesystem::path& path);

// Bag-of-words frame mapping: a frame is assigned to a relation when the
// token bag of the relation's description and aliases (stopwords removed)
// shares at least `min_overlap` tokens with the frame's lexical units.
// Output order follows the inventory; replaces any existing auto_frames.
RelationCatalog auto_frame_mapping(RelationCatalog catalog,
                                   const std::vector<FrameDef>& frame_inventory,
                                   int min_overlap = 1);

// All expert frames in the catalog, deduplicated by frame name. The
// default inventory for auto mapping.
std::vector<FrameDef> expert_frame_inventory(const RelationCatalog& catalog);

bool is_stopword(const std::string& token);

}  // namespace credrepair
