// Acceptance suite: end-to-end checks of the mining, crypto, splitting, and
// federation guarantees. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ppfim/ppfim.hpp"

using namespace ppfim;
using ppfim_test::is_subset_of;
using ppfim_test::keys_of;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double sigma_for(std::uint64_t i) {
  constexpr double kSigmas[] = {0.1, 0.25, 0.5};
  return kSigmas[i % 3];
}

// ---- 1 & 2: decision equivalence and work reduction over one shared grid --

struct MinerComparison {
  std::size_t equal_sets = 0;
  std::size_t total = 0;
  std::size_t reduction_ok = 0;
  std::size_t strict_reductions = 0;
};

MinerComparison compare_miners_grid() {
  MinerComparison cmp;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto db = ppfim_test::random_mining_db(i);
    const Count min_sup = local_threshold(sigma_for(i), db.size());
    const auto capped = mine_local(db.transactions, min_sup);
    const auto exact = classic_apriori(db, min_sup);
    ++cmp.total;
    if (keys_of(capped.frequent) == keys_of(exact.frequent)) ++cmp.equal_sets;
    if (capped.visits <= exact.visits) ++cmp.reduction_ok;
    if (capped.visits < exact.visits) ++cmp.strict_reductions;
  }
  return cmp;
}

Outcome criterion_decision_equivalence() {
  const auto cmp = compare_miners_grid();
  return {cmp.equal_sets == cmp.total,
          std::to_string(cmp.equal_sets) + "/" + std::to_string(cmp.total) +
              " databases with identical frequent sets"};
}

Outcome criterion_work_reduction() {
  const auto cmp = compare_miners_grid();
  const bool pass = cmp.reduction_ok == cmp.total && cmp.strict_reductions >= 90;
  return {pass, "visits_customized <= visits_classic on " + std::to_string(cmp.reduction_ok) +
                    "/" + std::to_string(cmp.total) + ", strict on " +
                    std::to_string(cmp.strict_reductions) + " (need >= 90)"};
}

// ---- 3: classic Apriori vs exhaustive powerset enumeration ----------------

Outcome criterion_oracle_grounding() {
  std::size_t matches = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto db = ppfim_test::tiny_random_db(i);
    const Count min_sup = 1 + i % 3;
    if (classic_apriori(db, min_sup).frequent == ppfim_test::powerset_frequent(db, min_sup))
      ++matches;
  }
  return {matches == 50, std::to_string(matches) + "/50 exact-count matches"};
}

// ---- 4: crypto round trip and determinism ---------------------------------

Outcome criterion_crypto_correctness() {
  std::mt19937_64 rng(202401);
  std::size_t failures = 0;

  std::vector<DoubleEncryptionKey> keys;
  for (int k = 0; k < 20; ++k)
    keys.push_back({1 + static_cast<int>(rng() % 127), static_cast<int>(rng() % 128)});

  for (const auto& key : keys)
    for (int b = 0; b < 128; ++b) {
      const Item item(1, static_cast<char>(b));
      if (decrypt_item(encrypt_item(item, key), key) != item) ++failures;
      if (encrypt_item(item, key) != encrypt_item(Item(item), key)) ++failures;
    }

  for (int i = 0; i < 1000; ++i) {
    const auto& key = keys[rng() % keys.size()];
    Item item;
    const std::size_t len = 1 + rng() % 24;
    for (std::size_t j = 0; j < len; ++j) item.push_back(static_cast<char>(rng() % 128));
    if (decrypt_item(encrypt_item(item, key), key) != item) ++failures;
    if (encrypt_item(item, key) != encrypt_item(Item(item), key)) ++failures;
  }
  return {failures == 0, failures == 0 ? "identity and determinism hold on all items"
                                       : std::to_string(failures) + " mismatches"};
}

// ---- 5: encryption transparency --------------------------------------------

Outcome criterion_encryption_transparency() {
  std::size_t matches = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto db = ppfim_test::random_mining_db(3000 + i);
    PipelineConfig config;
    config.n_ics = 1 + i % 4;
    config.sigma = sigma_for(i);
    config.min_conf = 0.5;
    config.mode = (i % 2 == 0) ? AggregationMode::union_mode : AggregationMode::sum_mode;
    config.seed = i * 17 + 3;
    config.key = {1 + static_cast<int>((i * 7) % 127), static_cast<int>((i * 29) % 128)};

    if (run_pipeline(db, config).result == mine_federated(db, config).result) ++matches;
  }
  return {matches == 50, std::to_string(matches) + "/50 identical decrypted results"};
}

// ---- 6: splitter validity and chi-square uniformity ------------------------

bool partition_valid(const PartitionAssignment& assignment, std::size_t total) {
  std::set<TransactionId> seen;
  std::size_t min_size = total, max_size = 0, count = 0;
  for (const auto& block : assignment.blocks) {
    min_size = std::min(min_size, block.size());
    max_size = std::max(max_size, block.size());
    count += block.size();
    for (TransactionId id : block)
      if (id < 1 || id > total || !seen.insert(id).second) return false;
  }
  return count == total && seen.size() == total && max_size - min_size <= 1;
}

// Per-id chi-square of block placement over n_seeds splits. Returns the
// largest statistic across ids; df is n_blocks - 1.
double max_placement_chi_square(std::size_t total, std::size_t n_blocks, std::size_t n_seeds) {
  IdList ids(total);
  std::iota(ids.begin(), ids.end(), TransactionId{1});
  std::vector<std::vector<std::size_t>> placements(total + 1, std::vector<std::size_t>(n_blocks, 0));
  for (std::size_t seed = 0; seed < n_seeds; ++seed) {
    const auto assignment = split(ids, n_blocks, 555000 + seed);
    for (std::size_t b = 0; b < n_blocks; ++b)
      for (TransactionId id : assignment.blocks[b]) ++placements[id][b];
  }
  const double expected = static_cast<double>(n_seeds) / static_cast<double>(n_blocks);
  double worst = 0.0;
  for (std::size_t id = 1; id <= total; ++id) {
    double chi2 = 0.0;
    for (std::size_t b = 0; b < n_blocks; ++b) {
      const double diff = static_cast<double>(placements[id][b]) - expected;
      chi2 += diff * diff / expected;
    }
    worst = std::max(worst, chi2);
  }
  return worst;
}

Outcome criterion_splitter_uniformity() {
  std::size_t invalid = 0;
  for (std::size_t total = 1; total <= 50; ++total)
    for (std::size_t n = 1; n <= 8; ++n)
      for (std::uint64_t rep = 0; rep < 3; ++rep) {
        IdList ids(total);
        std::iota(ids.begin(), ids.end(), TransactionId{1});
        if (!partition_valid(split(ids, n, total * 100 + n * 10 + rep), total)) ++invalid;
      }

  // chi-square critical values at p = 0.001 for df 1 and df 2
  const double chi_6_2 = max_placement_chi_square(6, 2, 10000);
  const double chi_12_3 = max_placement_chi_square(12, 3, 10000);
  const bool uniform = chi_6_2 < 10.828 && chi_12_3 < 13.816;

  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%zu invalid partitions; max chi2 T=6,N=2: %.3f (<10.828), T=12,N=3: %.3f (<13.816)",
                invalid, chi_6_2, chi_12_3);
  return {invalid == 0 && uniform, detail};
}

// ---- 7: federated sandwich --------------------------------------------------

Outcome criterion_federated_sandwich() {
  std::size_t holds = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto db = ppfim_test::random_mining_db(9000 + i);
    const double sigma = sigma_for(i / 3);
    PipelineConfig config;
    config.n_ics = 2 + i % 3;
    config.sigma = sigma;
    config.min_conf = 0.5;
    config.seed = i;

    const auto exact_keys = keys_of(classic_apriori(db, local_threshold(sigma, db.size())).frequent);
    config.mode = AggregationMode::sum_mode;
    const auto sum_keys = keys_of(run_pipeline(db, config).result.frequent);
    config.mode = AggregationMode::union_mode;
    const auto union_keys = keys_of(run_pipeline(db, config).result.frequent);

    if (is_subset_of(sum_keys, exact_keys) && is_subset_of(exact_keys, union_keys)) ++holds;
  }
  return {holds == 100, std::to_string(holds) + "/100 triples satisfy sum ⊆ exact ⊆ union"};
}

// ---- 8: order independence of aggregation -----------------------------------

std::string result_bytes(const GlobalMiningResult& result) {
  return mine_report_json(PipelineConfig{}, result, RunMetrics{}).dump();
}

Outcome criterion_order_independence() {
  std::size_t stable = 0;
  std::mt19937_64 shuffle_rng(31415);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto db = ppfim_test::random_mining_db(6000 + i);
    const std::size_t n_ics = 2 + i % 4;
    const double sigma = sigma_for(i);
    const Count global_threshold = local_threshold(sigma, db.size());
    const auto mode = (i % 2 == 0) ? AggregationMode::union_mode : AggregationMode::sum_mode;

    const auto assignment = split(db.ids(), n_ics, i * 11 + 1);
    std::vector<LocalReportMsg> reports;
    for (std::size_t b = 0; b < n_ics; ++b) {
      std::vector<Transaction> block;
      for (TransactionId id : assignment.blocks[b]) block.push_back(db.transactions[id - 1]);
      LocalReportMsg msg;
      msg.report = mine_local(block, block.empty() ? 1 : local_threshold(sigma, block.size()));
      msg.report.partition_index = b;
      reports.push_back(std::move(msg));
    }

    const auto finalize = [&](const std::vector<LocalReportMsg>& msgs) {
      GlobalMiningResult result = aggregate(msgs, mode, global_threshold, n_ics);
      auto generated = generate_rules(result, 0.5);
      result.rules = std::move(generated.rules);
      result.rules_skipped_missing_antecedent = generated.skipped_missing_antecedent;
      detail::sort_rules(result.rules);
      return result;
    };

    const std::string baseline = result_bytes(finalize(reports));
    bool identical = true;
    for (int perm = 0; perm < 5; ++perm) {
      std::shuffle(reports.begin(), reports.end(), shuffle_rng);
      if (result_bytes(finalize(reports)) != baseline) identical = false;
    }
    if (identical) ++stable;
  }
  return {stable == 20, std::to_string(stable) + "/20 pipelines bit-identical under permutation"};
}

// ---- 9: scaling trend and visit identity across server counts ---------------

Outcome criterion_scaling_trend() {
  const auto db = generate_synthetic(10000, 10, 3, 4242);
  const std::vector<std::size_t> server_counts{1, 2, 4, 6};

  std::vector<double> mine_ms;
  std::vector<std::uint64_t> visits;
  for (std::size_t c : server_counts) {
    PipelineConfig config;
    config.n_ics = c;
    config.sigma = 0.1;
    config.min_conf = 0.5;
    config.seed = 77;

    double best = 1e18;
    std::uint64_t v = 0;
    for (int rep = 0; rep < 3; ++rep) {
      const auto run = run_pipeline(db, config);
      best = std::min(best, run.metrics.mine_ms);
      v = run.metrics.visits_total;
    }
    mine_ms.push_back(best);
    visits.push_back(v);
  }

  const bool visits_identical =
      std::all_of(visits.begin(), visits.end(), [&](std::uint64_t v) { return v == visits[0]; });

  const auto exact = classic_apriori(db, local_threshold(0.1, db.size()));
  const bool reduced = visits[0] <= exact.visits;

  // the same grid through the bench harness must come back clean
  BenchOptions options;
  options.tx_grid = {10000};
  options.ics_grid = server_counts;
  options.sigma_grid = {0.1};
  options.owners_grid = {1};
  options.n_items = 10;
  options.max_len = 3;
  options.seed = 4242;
  const auto rows = run_bench(options);
  bool bench_ok = !rows.empty();
  for (const auto& row : rows)
    if (row.status != "ok" || row.visits_customized != rows.front().visits_customized)
      bench_ok = false;

  // soft trend: each step may wobble 25% + 5 ms, and the largest server
  // count must not be slower than the single-server run
  bool trend = mine_ms.back() <= mine_ms.front() + 5.0;
  for (std::size_t i = 1; i < mine_ms.size(); ++i)
    if (mine_ms[i] > mine_ms[i - 1] * 1.25 + 5.0) trend = false;

  char detail[240];
  std::snprintf(detail, sizeof(detail),
                "mine ms (c=1,2,4,6): %.1f %.1f %.1f %.1f; visits %llu%s across c; classic %llu; "
                "bench rows %s",
                mine_ms[0], mine_ms[1], mine_ms[2], mine_ms[3],
                static_cast<unsigned long long>(visits[0]),
                visits_identical ? " identical" : " NOT identical",
                static_cast<unsigned long long>(exact.visits), bench_ok ? "clean" : "DIRTY");
  return {visits_identical && reduced && trend && bench_ok, detail};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "decision equivalence of capped and classic mining", 10.0, criterion_decision_equivalence},
      {2, "work reduction via capped counting", 10.0, criterion_work_reduction},
      {3, "classic miner grounded in exhaustive enumeration", 5.0, criterion_oracle_grounding},
      {4, "cipher round trip and determinism", 1.0, criterion_crypto_correctness},
      {5, "encryption transparency of the pipeline", 10.0, criterion_encryption_transparency},
      {6, "partition validity and placement uniformity", 30.0, criterion_splitter_uniformity},
      {7, "sum/exact/union sandwich", 30.0, criterion_federated_sandwich},
      {8, "aggregation order independence", 5.0, criterion_order_independence},
      {9, "mine-phase scaling trend and visit identity", 60.0, criterion_scaling_trend},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto started = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    const bool in_budget = elapsed < criterion.budget_s;
    const bool pass = outcome.pass && in_budget;
    if (!pass) ++failures;
    std::printf("[%s] criterion %d: %s — %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", criterion.id,
                criterion.name, outcome.detail.c_str(), elapsed,
                in_budget ? "" : ", over budget");
  }
  return failures == 0 ? 0 : 1;
}
