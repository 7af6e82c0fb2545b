#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "ppfim/dataset.hpp"
#include "ppfim/errors.hpp"

namespace ppfim {

// Sorted, duplicate-free item sequence. Bytewise token order throughout.
using Itemset = std::vector<Item>;
using ItemsetCounts = std::map<Itemset, Count>;

// Per-candidate capped counter. Counting halts at min_sup; saturated means
// the cap was reached, i.e. the candidate is locally frequent.
struct CandidateCounter {
  Itemset itemset;
  Count count = 0;
  bool saturated = false;
};

struct CappedCountResult {
  std::vector<CandidateCounter> counters;
  std::uint64_t visits = 0;
};

// One partition's mining output: locally frequent itemsets with capped
// counts, plus the membership-test counter used as the portable work metric.
struct LocalMiningReport {
  std::size_t partition_index = 0;
  Count local_min_sup = 0;
  ItemsetCounts frequent;
  std::uint64_t visits = 0;
  std::size_t levels = 0;  // highest level with a frequent itemset
};

struct ExactMiningResult {
  ItemsetCounts frequent;
  std::uint64_t visits = 0;
};

// Subset test over sorted item vectors.
inline bool transaction_contains(const Transaction& tr, const Itemset& candidate) {
  return std::includes(tr.items.begin(), tr.items.end(), candidate.begin(), candidate.end());
}

// Level-1 scan with capped counting: an item's counter stops once it reaches
// min_sup. Only saturated counters are returned. Item occurrences are not
// candidate membership tests, so this scan contributes no visits.
inline std::vector<CandidateCounter> locate_freq_1_itemsets(
    const std::vector<Transaction>& block, Count min_sup) {
  if (min_sup < 1) throw InvalidParameterError("locate_freq_1_itemsets: min_sup must be >= 1");
  std::map<Item, Count> counts;
  for (const auto& tr : block)
    for (const auto& item : tr.items) {
      Count& n = counts[item];
      if (n < min_sup) ++n;
    }
  std::vector<CandidateCounter> saturated;
  for (const auto& [item, n] : counts)
    if (n == min_sup) saturated.push_back(CandidateCounter{Itemset{item}, n, true});
  return saturated;
}

// Standard candidate generation: join pairs of (a-1)-itemsets sharing their
// first a-2 items, then prune candidates with an infrequent (a-1)-subset.
inline std::vector<Itemset> apri_gene(std::vector<Itemset> prev_level) {
  if (prev_level.empty()) return {};
  const std::size_t k = prev_level.front().size();
  if (k < 1) throw InvalidParameterError("apri_gene: itemsets must be non-empty");
  for (const auto& s : prev_level)
    if (s.size() != k) throw InvalidParameterError("apri_gene: itemsets of mixed sizes");
  std::sort(prev_level.begin(), prev_level.end());
  prev_level.erase(std::unique(prev_level.begin(), prev_level.end()), prev_level.end());

  std::vector<Itemset> candidates;
  for (std::size_t i = 0; i < prev_level.size(); ++i) {
    for (std::size_t j = i + 1; j < prev_level.size(); ++j) {
      if (!std::equal(prev_level[i].begin(), prev_level[i].end() - 1, prev_level[j].begin(),
                      prev_level[j].end() - 1))
        break;  // sorted order: no later j shares the prefix either
      Itemset candidate = prev_level[i];
      candidate.push_back(prev_level[j].back());

      bool all_subsets_frequent = true;
      Itemset subset(candidate.begin() + 1, candidate.end());
      for (std::size_t drop = 0; drop < candidate.size() && all_subsets_frequent; ++drop) {
        // subset currently omits candidate[drop]
        all_subsets_frequent =
            std::binary_search(prev_level.begin(), prev_level.end(), subset);
        if (drop + 1 < candidate.size()) subset[drop] = candidate[drop];
      }
      if (all_subsets_frequent) candidates.push_back(std::move(candidate));
    }
  }
  return candidates;
}

// Capped counting of size-a candidates over one block, in block order.
// Transactions shorter than the level are skipped, a saturated candidate is
// never tested again, and the scan stops once every candidate is saturated.
// visits counts each (transaction, unsaturated-candidate) membership test.
inline CappedCountResult count_capped(const std::vector<Transaction>& block,
                                      const std::vector<Itemset>& candidates, Count min_sup,
                                      std::size_t level) {
  if (min_sup < 1) throw InvalidParameterError("count_capped: min_sup must be >= 1");
  for (const auto& c : candidates)
    if (c.size() != level)
      throw InvalidParameterError("count_capped: candidate size does not match level");

  CappedCountResult result;
  result.counters.reserve(candidates.size());
  for (const auto& c : candidates) result.counters.push_back(CandidateCounter{c, 0, false});

  std::size_t n_saturated = 0;
  for (const auto& tr : block) {
    if (n_saturated == result.counters.size()) break;
    if (tr.length() < level) continue;
    for (auto& counter : result.counters) {
      if (counter.saturated) continue;
      ++result.visits;
      if (transaction_contains(tr, counter.itemset)) {
        if (++counter.count == min_sup) {
          counter.saturated = true;
          ++n_saturated;
        }
      }
    }
  }
  return result;
}

// Level-wise mining with capped counting and early exits. Reported counts
// equal local_min_sup exactly; the frequent/infrequent decision matches an
// uncapped run. max_level of 0 means unlimited.
inline LocalMiningReport mine_local(const std::vector<Transaction>& block, Count local_min_sup,
                                    std::size_t max_level = 0) {
  if (local_min_sup < 1) throw InvalidParameterError("mine_local: local_min_sup must be >= 1");

  LocalMiningReport report;
  report.local_min_sup = local_min_sup;

  std::vector<Itemset> current;
  for (const auto& counter : locate_freq_1_itemsets(block, local_min_sup)) {
    report.frequent.emplace(counter.itemset, counter.count);
    current.push_back(counter.itemset);
  }
  if (!current.empty()) report.levels = 1;

  for (std::size_t level = 2; !current.empty() && (max_level == 0 || level <= max_level);
       ++level) {
    const auto candidates = apri_gene(current);
    if (candidates.empty()) break;
    auto counted = count_capped(block, candidates, local_min_sup, level);
    report.visits += counted.visits;
    current.clear();
    for (auto& counter : counted.counters) {
      if (!counter.saturated) continue;
      report.frequent.emplace(counter.itemset, counter.count);
      current.push_back(std::move(counter.itemset));
    }
    if (!current.empty()) report.levels = level;
  }
  return report;
}

// Textbook Apriori: full counting, no length filter, no early exit. Exact
// supports. visits uses the same membership-test metric as count_capped so
// the two miners are directly comparable.
inline ExactMiningResult classic_apriori(const std::vector<Transaction>& transactions,
                                         Count min_sup, std::size_t max_level = 0) {
  if (min_sup < 1) throw InvalidParameterError("classic_apriori: min_sup must be >= 1");

  ExactMiningResult result;
  std::map<Item, Count> ones;
  for (const auto& tr : transactions)
    for (const auto& item : tr.items) ++ones[item];

  std::vector<Itemset> current;
  for (const auto& [item, n] : ones) {
    if (n < min_sup) continue;
    Itemset single{item};
    result.frequent.emplace(single, n);
    current.push_back(std::move(single));
  }

  for (std::size_t level = 2; !current.empty() && (max_level == 0 || level <= max_level);
       ++level) {
    const auto candidates = apri_gene(current);
    if (candidates.empty()) break;
    std::vector<Count> counts(candidates.size(), 0);
    for (const auto& tr : transactions) {
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        ++result.visits;
        if (transaction_contains(tr, candidates[i])) ++counts[i];
      }
    }
    current.clear();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (counts[i] < min_sup) continue;
      result.frequent.emplace(candidates[i], counts[i]);
      current.push_back(candidates[i]);
    }
  }
  return result;
}

inline ExactMiningResult classic_apriori(const TransactionDatabase& db, Count min_sup,
                                         std::size_t max_level = 0) {
  return classic_apriori(db.transactions, min_sup, max_level);
}

}  // namespace ppfim
