#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "ppfim/crypto.hpp"
#include "ppfim/federation.hpp"
#include "ppfim/splitter.hpp"

namespace ppfim {

inline constexpr int kReportVersion = 1;

using ordered_json = nlohmann::ordered_json;

inline ordered_json itemset_to_json(const Itemset& itemset) {
  ordered_json arr = ordered_json::array();
  for (const auto& item : itemset) arr.push_back(item);
  return arr;
}

// Mining report. Everything except phase_ms is reproducible byte-for-byte
// from (input, flags, seed); phase_ms holds the wall-clock measurements.
inline ordered_json mine_report_json(const PipelineConfig& config,
                                     const GlobalMiningResult& result,
                                     const RunMetrics& metrics) {
  ordered_json j;
  j["version"] = kReportVersion;
  j["mode"] = to_string(result.mode);
  j["sigma"] = config.sigma;
  j["min_conf"] = config.min_conf;
  j["n_ics"] = config.n_ics;
  j["n_data_owners"] = config.n_data_owners;
  j["seed"] = config.seed;
  j["supports_are_capped"] = result.supports_are_capped;
  j["block_sizes"] = metrics.block_sizes;

  ordered_json itemsets = ordered_json::array();
  for (const auto& [itemset, support] : result.frequent) {
    ordered_json entry;
    entry["items"] = itemset_to_json(itemset);
    entry["support"] = support;
    itemsets.push_back(std::move(entry));
  }
  j["frequent_itemsets"] = std::move(itemsets);

  ordered_json rules = ordered_json::array();
  for (const auto& rule : result.rules) {
    ordered_json entry;
    entry["antecedent"] = itemset_to_json(rule.antecedent);
    entry["consequent"] = itemset_to_json(rule.consequent);
    entry["support"] = rule.support;
    entry["confidence"] = rule.confidence;
    entry["approximate"] = rule.approximate;
    rules.push_back(std::move(entry));
  }
  j["rules"] = std::move(rules);
  j["rules_skipped_missing_antecedent"] = result.rules_skipped_missing_antecedent;
  j["visits_total"] = metrics.visits_total;

  ordered_json phases;
  phases["encrypt"] = metrics.encrypt_ms;
  phases["split"] = metrics.split_ms;
  phases["mine"] = metrics.mine_ms;
  phases["aggregate"] = metrics.aggregate_ms;
  phases["decrypt"] = metrics.decrypt_ms;
  j["phase_ms"] = std::move(phases);
  return j;
}

inline std::string format_mine_report(const PipelineConfig& config,
                                      const GlobalMiningResult& result,
                                      const RunMetrics& metrics) {
  return mine_report_json(config, result, metrics).dump(2) + "\n";
}

// Partition report: block sizes plus each block's ids (sorted, with the
// covered range) under the seed that produced them.
inline ordered_json split_report_json(const PartitionAssignment& assignment) {
  ordered_json j;
  j["version"] = kReportVersion;
  j["seed"] = assignment.seed;
  j["n_ics"] = assignment.n_blocks;
  std::size_t total = 0;
  for (const auto& block : assignment.blocks) total += block.size();
  j["n_transactions"] = total;

  ordered_json sizes = ordered_json::array();
  ordered_json blocks = ordered_json::array();
  for (const auto& block : assignment.blocks) {
    sizes.push_back(block.size());
    IdList sorted = block;
    std::sort(sorted.begin(), sorted.end());
    ordered_json entry;
    entry["size"] = sorted.size();
    entry["id_min"] = sorted.empty() ? 0 : sorted.front();
    entry["id_max"] = sorted.empty() ? 0 : sorted.back();
    entry["ids"] = sorted;
    blocks.push_back(std::move(entry));
  }
  j["block_sizes"] = std::move(sizes);
  j["blocks"] = std::move(blocks);
  return j;
}

inline std::string format_split_report(const PartitionAssignment& assignment) {
  return split_report_json(assignment).dump(2) + "\n";
}

}  // namespace ppfim
