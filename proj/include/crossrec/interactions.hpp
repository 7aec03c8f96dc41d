#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crossrec/types.hpp"

namespace crossrec {

// One domain's implicit-feedback log. Keys are the external identifiers;
// indices are positions in the sorted key lists, so IDs are reproducible
// across machines. Interactions are unique (set semantics) and every user
// and item has at least one interaction after pruning.
struct InteractionSet {
  std::string domain_name;
  std::vector<std::string> users;  // sorted external user keys
  std::vector<std::string> items;  // sorted external item keys
  std::vector<std::pair<Index, Index>> interactions;  // sorted, no duplicates

  Index n_users() const { return static_cast<Index>(users.size()); }
  Index n_items() const { return static_cast<Index>(items.size()); }
  Index n_interactions() const { return static_cast<Index>(interactions.size()); }

  std::optional<Index> user_index(const std::string& key) const;
  std::optional<Index> item_index(const std::string& key) const;

  // Per-user adjacency (item indices, ascending).
  std::vector<std::vector<Index>> items_by_user() const;

  // 0/1 matrix with the interaction pattern.
  SpMat binary_matrix() const;
};

enum class FileFormat { Tsv, Csv };

struct LoadOptions {
  FileFormat format = FileFormat::Tsv;
  bool has_header = false;
  Index min_user_deg = 1;
  Index min_item_deg = 1;
};

// Builds a pruned InteractionSet from raw (user_key, item_key) records.
// Duplicates collapse; users/items are pruned iteratively until every user
// has >= min_user_deg and every item >= min_item_deg interactions.
InteractionSet make_interaction_set(std::string domain_name,
                                    std::vector<std::pair<std::string, std::string>> records,
                                    Index min_user_deg = 1, Index min_item_deg = 1);

// Parses a TSV/CSV file of user_key, item_key[, value] records. A value
// column, when present, is binarized at > 0 (non-positive rows are treated
// as no interaction). Throws DataError on unreadable files, malformed
// records (with line number) and empty post-pruning results.
InteractionSet load_interactions(const std::filesystem::path& path, const LoadOptions& opts);

// Users present in both domains, in sorted key order.
struct OverlapInfo {
  std::vector<std::string> overlap_keys;
  std::vector<Index> source_rows;  // overlap position -> row in source matrix
  std::vector<Index> target_rows;  // overlap position -> row in target matrix

  Index size() const { return static_cast<Index>(overlap_keys.size()); }
  bool empty() const { return overlap_keys.empty(); }
};

OverlapInfo detect_overlap(const InteractionSet& src, const InteractionSet& tgt);

// Content hash of a domain pair, used to key caches and stamp reports.
std::uint64_t dataset_hash(const InteractionSet& src, const InteractionSet& tgt);
std::string dataset_hash_hex(const InteractionSet& src, const InteractionSet& tgt);

}  // namespace crossrec
