#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ppfim/errors.hpp"

namespace ppfim {

// Items are raw 7-bit byte strings: printable text in plaintext databases,
// arbitrary bytes in [0, 127] once encrypted.
using Item = std::string;
using TransactionId = std::uint64_t;
using Count = std::uint64_t;

inline bool is_seven_bit(std::string_view token) {
  return std::all_of(token.begin(), token.end(),
                     [](char c) { return static_cast<unsigned char>(c) <= 127; });
}

// One customer transaction: a unique id plus a duplicate-free item set.
// Items are kept sorted bytewise so that subset tests and canonical
// serialization are cheap.
struct Transaction {
  TransactionId id = 0;
  std::vector<Item> items;  // strictly ascending, no duplicates

  std::size_t length() const { return items.size(); }

  bool operator==(const Transaction&) const = default;
};

struct TransactionDatabase {
  std::vector<Transaction> transactions;

  std::size_t size() const { return transactions.size(); }
  bool empty() const { return transactions.empty(); }

  std::vector<TransactionId> ids() const {
    std::vector<TransactionId> out;
    out.reserve(transactions.size());
    for (const auto& tr : transactions) out.push_back(tr.id);
    return out;
  }

  bool operator==(const TransactionDatabase&) const = default;
};

struct DatasetStats {
  std::size_t n_transactions = 0;
  std::size_t n_distinct_items = 0;
  std::size_t max_transaction_length = 0;
  std::map<Item, Count> item_frequencies;
};

// Parses line-oriented basket text: one transaction per non-empty line,
// whitespace-separated item tokens, '#' lines are comments. Duplicate tokens
// within a line collapse to one; ids are assigned 1-based in parse order.
inline TransactionDatabase parse_basket_file(std::string_view text) {
  TransactionDatabase db;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    std::vector<Item> items;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      if (i > start) {
        std::string_view token = line.substr(start, i - start);
        if (!is_seven_bit(token))
          throw ParseError(line_no, "item token contains a byte outside the 7-bit range");
        items.emplace_back(token);
      }
    }
    if (items.empty()) continue;  // whitespace-only line

    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    db.transactions.push_back(Transaction{static_cast<TransactionId>(db.size() + 1), std::move(items)});
  }
  if (db.empty()) throw EmptyDatabaseError("basket input holds zero transactions");
  return db;
}

// Canonical serializer: one transaction per line, items sorted bytewise,
// single-space separated, trailing newline. parse_basket_file round-trips it.
inline std::string serialize_basket(const TransactionDatabase& db) {
  std::string out;
  for (const auto& tr : db.transactions) {
    for (std::size_t i = 0; i < tr.items.size(); ++i) {
      if (i > 0) out += ' ';
      out += tr.items[i];
    }
    out += '\n';
  }
  return out;
}

// Deterministic synthetic databases over the alphabet item_1 .. item_n.
// Transaction lengths are uniform in [1, max_len]; items are drawn without
// replacement per transaction.
inline TransactionDatabase generate_synthetic(std::size_t n_tx, std::size_t n_items,
                                              std::size_t max_len, std::uint64_t seed) {
  if (n_tx < 1) throw InvalidParameterError("generate_synthetic: n_tx must be >= 1");
  if (max_len < 1) throw InvalidParameterError("generate_synthetic: max_len must be >= 1");
  if (max_len > n_items)
    throw InvalidParameterError("generate_synthetic: max_len must not exceed n_items");

  std::vector<Item> alphabet;
  alphabet.reserve(n_items);
  for (std::size_t i = 1; i <= n_items; ++i) alphabet.push_back("item_" + std::to_string(i));

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> indices(n_items);
  TransactionDatabase db;
  db.transactions.reserve(n_tx);
  for (std::size_t t = 0; t < n_tx; ++t) {
    const std::size_t len = 1 + static_cast<std::size_t>(rng() % max_len);
    for (std::size_t i = 0; i < n_items; ++i) indices[i] = i;
    std::vector<Item> items;
    items.reserve(len);
    for (std::size_t k = 0; k < len; ++k) {
      // partial Fisher-Yates: pick one of the not-yet-chosen indices
      const std::size_t j = k + static_cast<std::size_t>(rng() % (n_items - k));
      std::swap(indices[k], indices[j]);
      items.push_back(alphabet[indices[k]]);
    }
    std::sort(items.begin(), items.end());
    db.transactions.push_back(Transaction{static_cast<TransactionId>(t + 1), std::move(items)});
  }
  return db;
}

inline DatasetStats db_stats(const TransactionDatabase& db) {
  DatasetStats stats;
  stats.n_transactions = db.size();
  for (const auto& tr : db.transactions) {
    stats.max_transaction_length = std::max(stats.max_transaction_length, tr.length());
    for (const auto& item : tr.items) ++stats.item_frequencies[item];
  }
  stats.n_distinct_items = stats.item_frequencies.size();
  return stats;
}

}  // namespace ppfim
