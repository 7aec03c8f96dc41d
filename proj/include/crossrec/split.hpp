#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "crossrec/interactions.hpp"

namespace crossrec {

enum class Scenario { Intra, Inter };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

struct SplitSpec {
  Scenario scenario = Scenario::Intra;
  double train_ratio = 0.8;
  double validation_ratio = 0.2;
  double test_user_fraction = 0.5;  // inter only
  std::uint64_t seed = 0;
};

struct KeyPair {
  std::string user;
  std::string item;

  bool operator==(const KeyPair&) const = default;
  auto operator<=>(const KeyPair&) const = default;
};

struct SplitResult {
  SplitSpec spec;
  InteractionSet train_source;
  InteractionSet train_target;
  std::vector<KeyPair> validation;  // held out of all training matrices
  std::vector<KeyPair> test;
};

// Intra: per-user holdout on the target domain. Each user with degree >= 2
// contributes max(1, round((1 - train_ratio) * degree)) test pairs, then
// validation pairs are carved per-user from the remaining training
// interactions (always leaving at least one training pair). The source
// domain passes through whole.
//
// Inter: round(test_user_fraction * |overlap|) overlapping users become
// cold-start test users: all their target-domain pairs form the test
// ground truth and leave training; their source rows stay. Validation is
// carved from the remaining target-domain training interactions.
//
// The seed fully determines the split.
SplitResult split(const InteractionSet& tgt, const InteractionSet& src, const SplitSpec& spec);

void save_split_manifest(const std::filesystem::path& path, const SplitResult& result);
SplitResult load_split_manifest(const std::filesystem::path& path);

}  // namespace crossrec
