#include "crossrec/interactions.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>

#include "crossrec/errors.hpp"
#include "crossrec/rng.hpp"

namespace crossrec {

std::optional<Index> InteractionSet::user_index(const std::string& key) const {
  auto it = std::lower_bound(users.begin(), users.end(), key);
  if (it == users.end() || *it != key) return std::nullopt;
  return static_cast<Index>(it - users.begin());
}

std::optional<Index> InteractionSet::item_index(const std::string& key) const {
  auto it = std::lower_bound(items.begin(), items.end(), key);
  if (it == items.end() || *it != key) return std::nullopt;
  return static_cast<Index>(it - items.begin());
}

std::vector<std::vector<Index>> InteractionSet::items_by_user() const {
  std::vector<std::vector<Index>> adj(users.size());
  for (const auto& [u, i] : interactions) adj[static_cast<std::size_t>(u)].push_back(i);
  return adj;
}

SpMat InteractionSet::binary_matrix() const {
  std::vector<Triplet> trips;
  trips.reserve(interactions.size());
  for (const auto& [u, i] : interactions) trips.emplace_back(u, i, 1.0);
  SpMat m(n_users(), n_items());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

InteractionSet make_interaction_set(std::string domain_name,
                                    std::vector<std::pair<std::string, std::string>> records,
                                    Index min_user_deg, Index min_item_deg) {
  std::sort(records.begin(), records.end());
  records.erase(std::unique(records.begin(), records.end()), records.end());

  // Iterative pruning: dropping a user can orphan items and vice versa,
  // so repeat until the degree constraints hold everywhere.
  bool changed = true;
  while (changed && !records.empty()) {
    changed = false;
    std::map<std::string, Index> user_deg, item_deg;
    for (const auto& [u, i] : records) {
      ++user_deg[u];
      ++item_deg[i];
    }
    std::vector<std::pair<std::string, std::string>> kept;
    kept.reserve(records.size());
    for (auto& rec : records) {
      if (user_deg[rec.first] >= min_user_deg && item_deg[rec.second] >= min_item_deg)
        kept.push_back(std::move(rec));
      else
        changed = true;
    }
    records = std::move(kept);
  }

  InteractionSet out;
  out.domain_name = std::move(domain_name);
  for (const auto& [u, i] : records) {
    out.users.push_back(u);
    out.items.push_back(i);
  }
  auto dedup_sort = [](std::vector<std::string>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup_sort(out.users);
  dedup_sort(out.items);
  out.interactions.reserve(records.size());
  for (const auto& [u, i] : records)
    out.interactions.emplace_back(*out.user_index(u), *out.item_index(i));
  std::sort(out.interactions.begin(), out.interactions.end());
  return out;
}

namespace {

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::string trim(std::string s) {
  auto notspace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

}  // namespace

InteractionSet load_interactions(const std::filesystem::path& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open interaction file: " + path.string());

  const char sep = opts.format == FileFormat::Tsv ? '\t' : ',';
  std::vector<std::pair<std::string, std::string>> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && opts.has_header) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    auto fields = split_fields(line, sep);
    if (fields.size() < 2 || fields.size() > 3)
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": expected user, item[, value] record");
    std::string user = trim(fields[0]);
    std::string item = trim(fields[1]);
    if (user.empty() || item.empty())
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": empty key");
    if (fields.size() == 3) {
      const std::string value = trim(fields[2]);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc() || ptr != value.data() + value.size())
        throw DataError(path.string() + ":" + std::to_string(line_no) +
                        ": unparseable value '" + value + "'");
      if (v <= 0.0) continue;  // implicit feedback: binarize at > 0
    }
    records.emplace_back(std::move(user), std::move(item));
  }

  auto set = make_interaction_set(path.stem().string(), std::move(records), opts.min_user_deg,
                                  opts.min_item_deg);
  if (set.interactions.empty())
    throw DataError(path.string() + ": no interactions remain after pruning");
  return set;
}

OverlapInfo detect_overlap(const InteractionSet& src, const InteractionSet& tgt) {
  OverlapInfo info;
  std::set_intersection(src.users.begin(), src.users.end(), tgt.users.begin(), tgt.users.end(),
                        std::back_inserter(info.overlap_keys));
  info.source_rows.reserve(info.overlap_keys.size());
  info.target_rows.reserve(info.overlap_keys.size());
  for (const auto& key : info.overlap_keys) {
    info.source_rows.push_back(*src.user_index(key));
    info.target_rows.push_back(*tgt.user_index(key));
  }
  return info;
}

namespace {

std::uint64_t hash_set(const InteractionSet& s, std::uint64_t h) {
  h = fnv1a64(s.domain_name, h);
  for (const auto& k : s.users) h = fnv1a64(k, fnv1a64("|u", h));
  for (const auto& k : s.items) h = fnv1a64(k, fnv1a64("|i", h));
  for (const auto& [u, i] : s.interactions) {
    h = fnv1a64_bytes(&u, sizeof(u), h);
    h = fnv1a64_bytes(&i, sizeof(i), h);
  }
  return h;
}

}  // namespace

std::uint64_t dataset_hash(const InteractionSet& src, const InteractionSet& tgt) {
  std::uint64_t h = fnv1a64("crossrec-data");
  h = hash_set(src, h);
  h = hash_set(tgt, h);
  return h;
}

std::string dataset_hash_hex(const InteractionSet& src, const InteractionSet& tgt) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(dataset_hash(src, tgt)));
  return buf;
}

}  // namespace crossrec
