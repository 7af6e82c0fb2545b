#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ppfim/crypto.hpp"
#include "ppfim/dataset.hpp"
#include "ppfim/federation.hpp"
#include "ppfim/miner.hpp"
#include "ppfim/report.hpp"
#include "ppfim/splitter.hpp"

namespace ppfim {

// splitmix64; used to derive independent per-cell seeds from one base seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) { return mix_seed(mix_seed(a) ^ b); }

// Concatenation of `owners` synthetic databases with ids reassigned 1..n;
// models several data owners contributing to one mining run.
inline TransactionDatabase make_owner_pool(std::size_t n_tx_total, std::size_t n_items,
                                           std::size_t max_len, std::size_t owners,
                                           std::uint64_t seed) {
  if (owners < 1) throw InvalidParameterError("make_owner_pool: owners must be >= 1");
  if (n_tx_total < owners)
    throw InvalidParameterError("make_owner_pool: need at least one transaction per owner");

  TransactionDatabase pool;
  pool.transactions.reserve(n_tx_total);
  const std::size_t base = n_tx_total / owners;
  const std::size_t remainder = n_tx_total % owners;
  for (std::size_t o = 0; o < owners; ++o) {
    const std::size_t n_tx = base + (o < remainder ? 1 : 0);
    auto part = generate_synthetic(n_tx, n_items, max_len, mix_seed(seed, o));
    for (auto& tr : part.transactions) {
      tr.id = static_cast<TransactionId>(pool.size() + 1);
      pool.transactions.push_back(std::move(tr));
    }
  }
  return pool;
}

// Itemset overlap of `result` against the exact reference.
inline double recall_vs_exact(const ItemsetCounts& result, const ItemsetCounts& exact) {
  if (exact.empty()) return 1.0;
  std::size_t hit = 0;
  for (const auto& [itemset, _] : exact) hit += result.count(itemset);
  return static_cast<double>(hit) / static_cast<double>(exact.size());
}

inline double precision_vs_exact(const ItemsetCounts& result, const ItemsetCounts& exact) {
  if (result.empty()) return 1.0;
  std::size_t hit = 0;
  for (const auto& [itemset, _] : result) hit += exact.count(itemset);
  return static_cast<double>(hit) / static_cast<double>(result.size());
}

struct BenchOptions {
  std::vector<std::size_t> tx_grid{500, 1000};
  std::vector<std::size_t> ics_grid{1, 2, 4};
  std::vector<double> sigma_grid{0.1, 0.25};
  std::vector<std::size_t> owners_grid{1};
  std::size_t n_items = 10;
  std::size_t max_len = 4;
  std::uint64_t seed = 42;
  AggregationMode mode = AggregationMode::union_mode;
  double min_conf = 0.5;
  DoubleEncryptionKey key;
  std::size_t max_level = 0;
};

struct BenchRow {
  std::size_t t = 0;
  std::size_t c = 0;
  double sigma = 0.0;
  std::size_t n_transactions = 0;
  std::uint64_t visits_customized = 0;
  std::uint64_t visits_classic = 0;
  double wall_ms_pipeline = 0.0;
  double wall_ms_oracle = 0.0;
  std::size_t itemsets_found = 0;
  double recall_vs_exact = 0.0;
  double precision_vs_exact = 0.0;
  std::string status = "ok";
};

// Runs the full pipeline and the exact oracle on identical data for every
// grid cell. The mode guarantees (union => recall 1, sum => precision 1) and
// the work-reduction relation are asserted per row; violations mark the row
// instead of aborting the sweep.
inline std::vector<BenchRow> run_bench(const BenchOptions& options) {
  std::vector<BenchRow> rows;
  for (std::size_t t : options.owners_grid) {
    for (std::size_t n_tx : options.tx_grid) {
      const TransactionDatabase db =
          make_owner_pool(n_tx, options.n_items, options.max_len, t, mix_seed(options.seed, t));
      for (double sigma : options.sigma_grid) {
        for (std::size_t c : options.ics_grid) {
          BenchRow row;
          row.t = t;
          row.c = c;
          row.sigma = sigma;
          row.n_transactions = db.size();
          try {
            PipelineConfig config;
            config.n_ics = c;
            config.sigma = sigma;
            config.min_conf = options.min_conf;
            config.mode = options.mode;
            config.key = options.key;
            config.seed = mix_seed(mix_seed(options.seed, t ^ (n_tx << 8)),
                                   c ^ (static_cast<std::uint64_t>(sigma * 1e6) << 16));
            config.n_data_owners = t;
            config.max_level = options.max_level;

            const auto started = std::chrono::steady_clock::now();
            const PipelineRun run = run_pipeline(db, config);
            row.wall_ms_pipeline = std::chrono::duration<double, std::milli>(
                                       std::chrono::steady_clock::now() - started)
                                       .count();

            ExactMiningResult exact;
            row.wall_ms_oracle = detail::timed_ms([&] {
              exact = classic_apriori(db, local_threshold(sigma, db.size()), options.max_level);
            });

            row.visits_customized = run.metrics.visits_total;
            row.visits_classic = exact.visits;
            row.itemsets_found = run.result.frequent.size();
            row.recall_vs_exact = recall_vs_exact(run.result.frequent, exact.frequent);
            row.precision_vs_exact = precision_vs_exact(run.result.frequent, exact.frequent);

            if (row.visits_customized > row.visits_classic)
              row.status = "assert-failed: visits_customized > visits_classic";
            else if (options.mode == AggregationMode::union_mode && row.recall_vs_exact != 1.0)
              row.status = "assert-failed: union mode must reach recall 1.0";
            else if (options.mode == AggregationMode::sum_mode && row.precision_vs_exact != 1.0)
              row.status = "assert-failed: sum mode must reach precision 1.0";
          } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

inline std::string format_bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "t,c,sigma,n_transactions,visits_customized,visits_classic,wall_ms_pipeline,"
         "wall_ms_oracle,itemsets_found,recall_vs_exact,precision_vs_exact,status\n";
  char buf[64];
  for (const auto& row : rows) {
    out << row.t << ',' << row.c << ',';
    std::snprintf(buf, sizeof(buf), "%.6g", row.sigma);
    out << buf << ',' << row.n_transactions << ',' << row.visits_customized << ','
        << row.visits_classic << ',';
    std::snprintf(buf, sizeof(buf), "%.3f", row.wall_ms_pipeline);
    out << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.3f", row.wall_ms_oracle);
    out << buf << ',' << row.itemsets_found << ',';
    std::snprintf(buf, sizeof(buf), "%.6g", row.recall_vs_exact);
    out << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.6g", row.precision_vs_exact);
    out << buf << ',' << row.status << '\n';
  }
  return out.str();
}

// Per-block cipher-item frequency tables under one or many split seeds, and
// the worst deviation of any block's item share from the even 1/N split.
struct DispersionReport {
  std::size_t n_ics = 0;
  std::uint64_t base_seed = 0;
  std::size_t n_seeds = 0;
  std::map<Item, Count> global_counts;
  std::map<Item, std::vector<Count>> block_counts;  // summed across seeds
  std::map<Item, std::vector<double>> mean_shares;
  double max_abs_deviation = 0.0;
};

inline DispersionReport compute_dispersion(const TransactionDatabase& db, std::size_t n_ics,
                                           std::uint64_t base_seed, std::size_t n_seeds) {
  if (n_seeds < 1) throw InvalidParameterError("compute_dispersion: n_seeds must be >= 1");
  if (n_ics < 1) throw InvalidParameterError("compute_dispersion: n_ics must be >= 1");
  if (db.empty()) throw EmptyDatabaseError("compute_dispersion: empty database");

  DispersionReport report;
  report.n_ics = n_ics;
  report.base_seed = base_seed;
  report.n_seeds = n_seeds;

  std::unordered_map<TransactionId, const Transaction*> by_id;
  for (const auto& tr : db.transactions) by_id.emplace(tr.id, &tr);
  for (const auto& tr : db.transactions)
    for (const auto& item : tr.items) ++report.global_counts[item];
  for (const auto& [item, _] : report.global_counts) {
    report.block_counts[item].assign(n_ics, 0);
    report.mean_shares[item].assign(n_ics, 0.0);
  }

  const IdList ids = db.ids();
  for (std::size_t s = 0; s < n_seeds; ++s) {
    const PartitionAssignment assignment = split(ids, n_ics, base_seed + s);
    for (std::size_t b = 0; b < n_ics; ++b)
      for (TransactionId id : assignment.blocks[b])
        for (const auto& item : by_id.at(id)->items) ++report.block_counts[item][b];
  }

  const double even_share = 1.0 / static_cast<double>(n_ics);
  for (const auto& [item, global] : report.global_counts) {
    const double denom = static_cast<double>(global) * static_cast<double>(n_seeds);
    for (std::size_t b = 0; b < n_ics; ++b) {
      const double share = static_cast<double>(report.block_counts[item][b]) / denom;
      report.mean_shares[item][b] = share;
      report.max_abs_deviation = std::max(report.max_abs_deviation, std::abs(share - even_share));
    }
  }
  return report;
}

// Tokens are hex-encoded: dispersion runs on ciphertext databases whose
// bytes need not be printable.
inline ordered_json dispersion_report_json(const DispersionReport& report) {
  ordered_json j;
  j["version"] = kReportVersion;
  j["n_ics"] = report.n_ics;
  j["base_seed"] = report.base_seed;
  j["n_seeds"] = report.n_seeds;
  ordered_json items = ordered_json::array();
  for (const auto& [item, global] : report.global_counts) {
    ordered_json entry;
    entry["token_hex"] = hex_encode(item);
    entry["global_count"] = global;
    entry["block_counts"] = report.block_counts.at(item);
    entry["mean_shares"] = report.mean_shares.at(item);
    items.push_back(std::move(entry));
  }
  j["items"] = std::move(items);
  j["max_abs_share_deviation"] = report.max_abs_deviation;
  return j;
}

inline std::string format_dispersion_report(const DispersionReport& report) {
  return dispersion_report_json(report).dump(2) + "\n";
}

}  // namespace ppfim
