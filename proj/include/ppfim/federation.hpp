#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ppfim/crypto.hpp"
#include "ppfim/dataset.hpp"
#include "ppfim/errors.hpp"
#include "ppfim/miner.hpp"
#include "ppfim/splitter.hpp"

namespace ppfim {

// Two readings of the global aggregation step:
//   union: every locally frequent itemset survives, counts are summed
//          (complete, possibly over-inclusive);
//   sum:   summed counts must clear a global absolute threshold
//          (sound, possibly under-inclusive).
enum class AggregationMode { union_mode, sum_mode };

inline const char* to_string(AggregationMode mode) {
  return mode == AggregationMode::union_mode ? "union" : "sum";
}

inline AggregationMode aggregation_mode_from_string(const std::string& name) {
  if (name == "union") return AggregationMode::union_mode;
  if (name == "sum") return AggregationMode::sum_mode;
  throw InvalidParameterError("aggregation mode must be 'union' or 'sum'");
}

struct PipelineConfig {
  std::size_t n_ics = 1;
  double sigma = 0.5;     // relative support threshold in (0, 1]
  double min_conf = 0.5;  // rule confidence threshold in (0, 1]
  AggregationMode mode = AggregationMode::union_mode;
  DoubleEncryptionKey key;
  std::uint64_t seed = 0;
  std::size_t n_data_owners = 1;
  std::size_t max_level = 0;  // cap on explored itemset size, 0 = unlimited

  void validate() const {
    if (n_ics < 1) throw InvalidParameterError("n_ics must be >= 1");
    if (!(sigma > 0.0) || sigma > 1.0) throw InvalidParameterError("sigma must be in (0, 1]");
    if (!(min_conf > 0.0) || min_conf > 1.0)
      throw InvalidParameterError("min_conf must be in (0, 1]");
    if (n_data_owners < 1) throw InvalidParameterError("n_data_owners must be >= 1");
    key.validate();
  }
};

// DO -> ICS message: one partition's ciphertext transactions.
struct EncryptedBlockMsg {
  std::size_t partition_index = 0;
  std::vector<Transaction> transactions;
};

// ICS -> FCCS message: one partition's local mining report.
struct LocalReportMsg {
  LocalMiningReport report;
};

struct AssociationRule {
  Itemset antecedent;
  Itemset consequent;
  Count support = 0;
  double confidence = 0.0;
  bool approximate = false;  // supports behind the ratio are capped sums

  bool operator==(const AssociationRule&) const = default;
};

struct GlobalMiningResult {
  ItemsetCounts frequent;
  AggregationMode mode = AggregationMode::union_mode;
  std::vector<AssociationRule> rules;
  bool supports_are_capped = true;
  std::uint64_t rules_skipped_missing_antecedent = 0;

  bool operator==(const GlobalMiningResult&) const = default;
};

struct RunMetrics {
  double encrypt_ms = 0.0;
  double split_ms = 0.0;
  double mine_ms = 0.0;
  double aggregate_ms = 0.0;
  double decrypt_ms = 0.0;
  std::uint64_t visits_total = 0;
  std::vector<std::size_t> block_sizes;
};

struct PipelineRun {
  GlobalMiningResult result;
  RunMetrics metrics;
};

// Absolute support threshold for a block: ceil(sigma * block_size), at least
// 1. The small nudge keeps exact decimal products (e.g. 0.1 * 70) from
// rounding up to the next integer.
inline Count local_threshold(double sigma, std::size_t block_size) {
  if (!(sigma > 0.0) || sigma > 1.0) throw InvalidParameterError("sigma must be in (0, 1]");
  if (block_size < 1) throw InvalidParameterError("block_size must be >= 1");
  const double raw = sigma * static_cast<double>(block_size) - 1e-9;
  const auto threshold = static_cast<Count>(std::ceil(std::max(raw, 0.0)));
  return std::max<Count>(1, threshold);
}

// Combines the local reports itemset-by-itemset (summation commutes, so any
// report order gives the same result). Requires exactly one report per
// partition. In sum mode, itemsets below global_threshold are dropped.
inline GlobalMiningResult aggregate(const std::vector<LocalReportMsg>& reports,
                                    AggregationMode mode, Count global_threshold,
                                    std::size_t n_expected) {
  std::vector<bool> seen(n_expected, false);
  for (const auto& msg : reports) {
    const std::size_t index = msg.report.partition_index;
    if (index >= n_expected)
      throw IncompleteAggregationError(
          index, "report from unknown partition " + std::to_string(index));
    if (seen[index])
      throw IncompleteAggregationError(
          index, "duplicate report from partition " + std::to_string(index));
    seen[index] = true;
  }
  for (std::size_t i = 0; i < n_expected; ++i)
    if (!seen[i])
      throw IncompleteAggregationError(i, "missing report from partition " + std::to_string(i));

  GlobalMiningResult result;
  result.mode = mode;
  result.supports_are_capped = true;
  for (const auto& msg : reports)
    for (const auto& [itemset, count] : msg.report.frequent) result.frequent[itemset] += count;

  if (mode == AggregationMode::sum_mode) {
    for (auto it = result.frequent.begin(); it != result.frequent.end();) {
      if (it->second < global_threshold)
        it = result.frequent.erase(it);
      else
        ++it;
    }
  }
  return result;
}

struct RuleGeneration {
  std::vector<AssociationRule> rules;
  std::uint64_t skipped_missing_antecedent = 0;
};

// Emits A -> Z\A for every frequent Z with |Z| >= 2 and every non-empty
// proper subset A whose support is known, whenever support(Z)/support(A)
// clears min_conf. Rules are approximate when the supports are capped sums.
inline RuleGeneration generate_rules(const GlobalMiningResult& result, double min_conf) {
  if (!(min_conf > 0.0) || min_conf > 1.0)
    throw InvalidParameterError("min_conf must be in (0, 1]");

  RuleGeneration out;
  for (const auto& [itemset, support] : result.frequent) {
    const std::size_t k = itemset.size();
    if (k < 2) continue;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << k); ++mask) {
      AssociationRule rule;
      for (std::size_t bit = 0; bit < k; ++bit)
        ((mask >> bit) & 1 ? rule.antecedent : rule.consequent).push_back(itemset[bit]);

      const auto antecedent_it = result.frequent.find(rule.antecedent);
      if (antecedent_it == result.frequent.end()) {
        ++out.skipped_missing_antecedent;
        continue;
      }
      rule.support = support;
      rule.confidence =
          static_cast<double>(support) / static_cast<double>(antecedent_it->second);
      rule.approximate = result.supports_are_capped;
      if (rule.confidence >= min_conf) out.rules.push_back(std::move(rule));
    }
  }
  return out;
}

namespace detail {

template <typename F>
double timed_ms(F&& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

template <typename F>
auto tag_phase(const char* phase, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(std::string(phase) + ": " + e.what());
  }
}

inline Itemset map_itemset(const Itemset& itemset, const DoubleEncryptionKey& key) {
  Itemset out;
  out.reserve(itemset.size());
  for (const auto& item : itemset) out.push_back(decrypt_item(item, key));
  std::sort(out.begin(), out.end());
  return out;
}

// Maps a ciphertext-space result back to plaintext itemsets.
inline GlobalMiningResult decrypt_result(GlobalMiningResult result,
                                         const DoubleEncryptionKey& key) {
  ItemsetCounts plain;
  for (const auto& [itemset, count] : result.frequent) plain.emplace(map_itemset(itemset, key), count);
  result.frequent = std::move(plain);
  for (auto& rule : result.rules) {
    rule.antecedent = map_itemset(rule.antecedent, key);
    rule.consequent = map_itemset(rule.consequent, key);
  }
  return result;
}

inline void sort_rules(std::vector<AssociationRule>& rules) {
  std::sort(rules.begin(), rules.end(), [](const AssociationRule& a, const AssociationRule& b) {
    return std::tie(a.antecedent, a.consequent) < std::tie(b.antecedent, b.consequent);
  });
}

// The full three-role pipeline. When key is absent the DO encryption step is
// the identity map, which is the reference point for the encryption
// transparency property.
inline PipelineRun run_pipeline_impl(const TransactionDatabase& db, const PipelineConfig& config,
                                     const std::optional<DoubleEncryptionKey>& key) {
  config.validate();
  if (db.empty()) throw EmptyDatabaseError("pipeline: input database is empty");

  PipelineRun run;
  RunMetrics& metrics = run.metrics;

  // DO: encrypt
  TransactionDatabase outsourced;
  metrics.encrypt_ms = timed_ms([&] {
    tag_phase("encrypt", [&] { outsourced = key ? encrypt_database(db, *key) : db; });
  });

  // DO: split
  PartitionAssignment assignment;
  metrics.split_ms = timed_ms([&] {
    tag_phase("split", [&] { assignment = split(outsourced.ids(), config.n_ics, config.seed); });
  });

  std::unordered_map<TransactionId, const Transaction*> by_id;
  by_id.reserve(outsourced.size());
  for (const auto& tr : outsourced.transactions) by_id.emplace(tr.id, &tr);

  std::vector<EncryptedBlockMsg> blocks;
  blocks.reserve(config.n_ics);
  for (std::size_t b = 0; b < assignment.blocks.size(); ++b) {
    EncryptedBlockMsg msg;
    msg.partition_index = b;
    msg.transactions.reserve(assignment.blocks[b].size());
    for (TransactionId id : assignment.blocks[b]) msg.transactions.push_back(*by_id.at(id));
    metrics.block_sizes.push_back(msg.transactions.size());
    blocks.push_back(std::move(msg));
  }

  // ICS: mine every block concurrently; the empty-block threshold of 1 keeps
  // degenerate partitions (more servers than transactions) well-defined.
  std::vector<LocalReportMsg> reports(blocks.size());
  metrics.mine_ms = timed_ms([&] {
    tag_phase("mine", [&] {
      std::vector<std::future<LocalMiningReport>> futures;
      futures.reserve(blocks.size());
      for (const auto& block : blocks) {
        futures.push_back(std::async(std::launch::async, [&config, &block] {
          const Count threshold =
              block.transactions.empty() ? 1 : local_threshold(config.sigma, block.transactions.size());
          LocalMiningReport report =
              mine_local(block.transactions, threshold, config.max_level);
          report.partition_index = block.partition_index;
          return report;
        }));
      }
      // barrier: aggregation starts only after every report has arrived
      for (std::size_t i = 0; i < futures.size(); ++i) reports[i].report = futures[i].get();
    });
  });
  for (const auto& msg : reports) metrics.visits_total += msg.report.visits;

  // FCCS: aggregate and derive rules
  GlobalMiningResult result;
  metrics.aggregate_ms = timed_ms([&] {
    tag_phase("aggregate", [&] {
      result = aggregate(reports, config.mode, local_threshold(config.sigma, db.size()),
                         config.n_ics);
      auto generated = generate_rules(result, config.min_conf);
      result.rules = std::move(generated.rules);
      result.rules_skipped_missing_antecedent = generated.skipped_missing_antecedent;
    });
  });

  // DO: decrypt the result and put it in canonical order
  metrics.decrypt_ms = timed_ms([&] {
    tag_phase("decrypt", [&] {
      if (key) result = decrypt_result(std::move(result), *key);
      sort_rules(result.rules);
    });
  });

  run.result = std::move(result);
  return run;
}

}  // namespace detail

// DO encrypts and splits, ICS mine concurrently, FCCS aggregates and derives
// rules, DO decrypts the result. Output is a pure function of (db, config).
inline PipelineRun run_pipeline(const TransactionDatabase& db, const PipelineConfig& config) {
  return detail::run_pipeline_impl(db, config, config.key);
}

// Same orchestration with encryption replaced by the identity map.
inline PipelineRun mine_federated(const TransactionDatabase& db, const PipelineConfig& config) {
  return detail::run_pipeline_impl(db, config, std::nullopt);
}

}  // namespace ppfim
