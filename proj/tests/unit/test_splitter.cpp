#include <catch2/catch.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "ppfim/splitter.hpp"

using namespace ppfim;

namespace {

IdList iota_ids(std::size_t n) {
  IdList ids(n);
  std::iota(ids.begin(), ids.end(), TransactionId{1});
  return ids;
}

void check_partition_valid(const PartitionAssignment& assignment, const IdList& ids) {
  std::set<TransactionId> seen;
  std::size_t min_size = ids.size(), max_size = 0, total = 0;
  for (const auto& block : assignment.blocks) {
    min_size = std::min(min_size, block.size());
    max_size = std::max(max_size, block.size());
    total += block.size();
    for (TransactionId id : block) REQUIRE(seen.insert(id).second);  // disjoint
  }
  REQUIRE(total == ids.size());  // covering, given disjointness
  REQUIRE(seen == std::set<TransactionId>(ids.begin(), ids.end()));
  REQUIRE(max_size - min_size <= 1);
}

}  // namespace

TEST_CASE("drawing from a singleton pool empties it") {
  IdList pool{7};
  SplitterRng rng(1);
  CHECK(draw_random_id(pool, rng) == 7);
  CHECK(pool.empty());
}

TEST_CASE("a draw removes exactly the returned id") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    IdList pool{1, 2, 3};
    SplitterRng rng(seed);
    const TransactionId drawn = draw_random_id(pool, rng);
    CHECK(pool.size() == 2);
    std::set<TransactionId> rest(pool.begin(), pool.end());
    CHECK(rest.size() == 2);
    CHECK(rest.count(drawn) == 0);
  }
}

TEST_CASE("drawing from an empty pool fails") {
  IdList pool;
  SplitterRng rng(1);
  CHECK_THROWS_AS(draw_random_id(pool, rng), EmptyPoolError);
}

TEST_CASE("first draws are uniform over the pool") {
  std::map<TransactionId, int> first_draw;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    IdList pool = iota_ids(10);
    SplitterRng rng(seed);
    ++first_draw[draw_random_id(pool, rng)];
  }
  for (const auto& [_, n] : first_draw)
    CHECK(std::abs(n / 10000.0 - 0.1) <= 0.02);
}

TEST_CASE("building a block of the full pool size is an exhaustive draw") {
  SplitterRng rng(5);
  auto [block, remaining] = build_block(iota_ids(4), 4, rng);
  CHECK(remaining.empty());
  std::sort(block.begin(), block.end());
  CHECK(block == iota_ids(4));
}

TEST_CASE("building an empty block leaves the pool untouched") {
  SplitterRng rng(5);
  auto [block, remaining] = build_block(iota_ids(10), 0, rng);
  CHECK(block.empty());
  CHECK(remaining == iota_ids(10));
}

TEST_CASE("block size larger than the pool is rejected") {
  SplitterRng rng(5);
  CHECK_THROWS_AS(build_block(iota_ids(3), 4, rng), InvalidParameterError);
}

TEST_CASE("block building is deterministic per seed") {
  SplitterRng rng_a(123), rng_b(123);
  CHECK(build_block(iota_ids(100), 50, rng_a).first == build_block(iota_ids(100), 50, rng_b).first);
}

TEST_CASE("difference lists preserve order and suppress duplicates") {
  CHECK(difference_list({1, 2, 3, 4}, {2, 4}) == IdList{1, 3});
  CHECK(difference_list({1, 2}, {}) == IdList{1, 2});
  CHECK(difference_list({1, 1, 2}, {1}) == IdList{2});
}

TEST_CASE("split produces near-even disjoint covering blocks") {
  const auto even = split(iota_ids(10), 2, 99);
  REQUIRE(even.blocks.size() == 2);
  CHECK(even.blocks[0].size() == 5);
  CHECK(even.blocks[1].size() == 5);
  check_partition_valid(even, iota_ids(10));

  const auto uneven = split(iota_ids(10), 3, 99);
  REQUIRE(uneven.blocks.size() == 3);
  CHECK(uneven.blocks[0].size() == 4);
  CHECK(uneven.blocks[1].size() == 3);
  CHECK(uneven.blocks[2].size() == 3);
  check_partition_valid(uneven, iota_ids(10));
}

TEST_CASE("split validates its parameters") {
  CHECK_THROWS_AS(split(iota_ids(5), 0, 1), InvalidParameterError);
  CHECK_THROWS_AS(split({}, 2, 1), EmptyDatabaseError);
}

TEST_CASE("split is a pure function of ids, server count, and seed") {
  const auto a = split(iota_ids(37), 4, 7);
  const auto b = split(iota_ids(37), 4, 7);
  CHECK(a.blocks == b.blocks);
}

TEST_CASE("one server degenerates to a single block of all ids") {
  const auto assignment = split(iota_ids(12), 1, 3);
  REQUIRE(assignment.blocks.size() == 1);
  IdList sorted = assignment.blocks[0];
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == iota_ids(12));
}

TEST_CASE("partition invariants hold across a size sweep") {
  for (std::size_t total = 1; total <= 30; ++total)
    for (std::size_t n = 1; n <= 8; ++n)
      check_partition_valid(split(iota_ids(total), n, 1000 + total * 8 + n), iota_ids(total));
}

TEST_CASE("ids land in each block with equal frequency") {
  constexpr int kRuns = 60000;
  std::map<TransactionId, int> in_first_block;
  for (int seed = 0; seed < kRuns; ++seed) {
    const auto assignment = split(iota_ids(6), 2, static_cast<std::uint64_t>(seed));
    for (TransactionId id : assignment.blocks[0]) ++in_first_block[id];
  }
  for (TransactionId id = 1; id <= 6; ++id)
    CHECK(std::abs(in_first_block[id] / static_cast<double>(kRuns) - 0.5) <= 0.01);
}

TEST_CASE("split placement matches shuffle-then-chunk as a distribution") {
  constexpr int kRuns = 20000;
  constexpr std::size_t kTotal = 8, kBlocks = 3;
  // per (id, block) placement frequencies for both methods
  std::map<std::pair<TransactionId, std::size_t>, int> via_split, via_shuffle;
  for (int seed = 0; seed < kRuns; ++seed) {
    const auto assignment = split(iota_ids(kTotal), kBlocks, static_cast<std::uint64_t>(seed));
    for (std::size_t b = 0; b < kBlocks; ++b)
      for (TransactionId id : assignment.blocks[b]) ++via_split[{id, b}];
    const auto chunks =
        ppfim_test::shuffle_then_chunk(iota_ids(kTotal), kBlocks, static_cast<std::uint64_t>(seed) + 777);
    for (std::size_t b = 0; b < kBlocks; ++b)
      for (TransactionId id : chunks[b]) ++via_shuffle[{id, b}];
  }
  for (TransactionId id = 1; id <= kTotal; ++id)
    for (std::size_t b = 0; b < kBlocks; ++b) {
      const double p_split = via_split[{id, b}] / static_cast<double>(kRuns);
      const double p_shuffle = via_shuffle[{id, b}] / static_cast<double>(kRuns);
      CHECK(std::abs(p_split - p_shuffle) <= 0.02);
    }
}
