#pragma once

#include <cstdint>
#include <random>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ppfim/dataset.hpp"
#include "ppfim/errors.hpp"

namespace ppfim {

using IdList = std::vector<TransactionId>;

// Seedable generator behind every partitioning decision. mt19937_64 is the
// fixed, documented engine; identical seeds yield identical draw sequences
// on every platform.
class SplitterRng {
 public:
  explicit SplitterRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound). Modulo reduction; the bias is below 2^-50 for
  // any bound this library ever passes.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw InvalidParameterError("next_below: bound must be >= 1");
    return engine_() % bound;
  }

 private:
  std::mt19937_64 engine_;
};

// Picks a uniformly random id and removes it by swap-with-last + shrink.
inline TransactionId draw_random_id(IdList& pool, SplitterRng& rng) {
  if (pool.empty()) throw EmptyPoolError("draw_random_id: pool is empty");
  const std::size_t index = static_cast<std::size_t>(rng.next_below(pool.size()));
  std::swap(pool[index], pool.back());
  const TransactionId id = pool.back();
  pool.pop_back();
  return id;
}

// Draws block_size ids without replacement. Returns the block in draw order
// plus whatever is left of the pool.
inline std::pair<IdList, IdList> build_block(IdList pool, std::size_t block_size,
                                             SplitterRng& rng) {
  if (block_size > pool.size())
    throw InvalidParameterError("build_block: block_size exceeds pool size");
  IdList block;
  block.reserve(block_size);
  for (std::size_t i = 0; i < block_size; ++i) block.push_back(draw_random_id(pool, rng));
  return {std::move(block), std::move(pool)};
}

// Ids of main absent from block, in main's order, duplicates suppressed.
inline IdList difference_list(const IdList& main, const IdList& block) {
  std::unordered_set<TransactionId> excluded(block.begin(), block.end());
  std::unordered_set<TransactionId> emitted;
  IdList out;
  for (TransactionId id : main) {
    if (excluded.count(id)) continue;
    if (!emitted.insert(id).second) continue;
    out.push_back(id);
  }
  return out;
}

// Disjoint, covering, near-even blocks of transaction ids; one per server.
struct PartitionAssignment {
  std::vector<IdList> blocks;
  std::size_t n_blocks = 0;
  std::uint64_t seed = 0;
};

// Repeatedly carves a random block off the remaining id list, then recomputes
// the remainder as a difference list. The first (T mod N) blocks get one
// extra id so sizes never differ by more than 1.
inline PartitionAssignment split(const IdList& ids, std::size_t n_ics, std::uint64_t seed) {
  if (n_ics < 1) throw InvalidParameterError("split: n_ics must be >= 1");
  if (ids.empty()) throw EmptyDatabaseError("split: no transaction ids to partition");

  const std::size_t total = ids.size();
  const std::size_t base = total / n_ics;
  const std::size_t remainder = total % n_ics;

  PartitionAssignment assignment;
  assignment.n_blocks = n_ics;
  assignment.seed = seed;
  assignment.blocks.reserve(n_ics);

  SplitterRng rng(seed);
  IdList remaining = ids;
  for (std::size_t b = 0; b < n_ics; ++b) {
    const std::size_t block_size = base + (b < remainder ? 1 : 0);
    auto [block, leftover] = build_block(remaining, block_size, rng);
    remaining = difference_list(remaining, block);
    assignment.blocks.push_back(std::move(block));
  }
  return assignment;
}

}  // namespace ppfim
