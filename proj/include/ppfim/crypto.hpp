#pragma once

#include <string>
#include <string_view>

#include "ppfim/dataset.hpp"
#include "ppfim/errors.hpp"

namespace ppfim {

// Ciphertext tokens live in the same 7-bit byte domain as plaintext items.
using CipherItem = Item;

// Key material for the two-stage item cipher: a Caesar shift applied
// bytewise mod 128, followed by XOR with a single 7-bit pattern repeated
// per byte (period-1 keystream).
struct DoubleEncryptionKey {
  int caesar_shift = 5;
  int stream_key = 85;

  void validate() const {
    if (caesar_shift < 1 || caesar_shift > 127)
      throw InvalidParameterError("caesar_shift must be in [1, 127]");
    if (stream_key < 0 || stream_key > 127)
      throw InvalidParameterError("stream_key must be in [0, 127]");
  }

  bool operator==(const DoubleEncryptionKey&) const = default;
};

namespace detail {

inline void require_seven_bit(std::string_view bytes, const char* op) {
  if (!is_seven_bit(bytes))
    throw ByteDomainError(std::string(op) + ": byte outside [0, 127]");
}

}  // namespace detail

inline std::string caesar_encrypt(std::string_view bytes, int shift) {
  if (shift < 1 || shift > 127) throw InvalidParameterError("caesar shift must be in [1, 127]");
  detail::require_seven_bit(bytes, "caesar_encrypt");
  std::string out;
  out.reserve(bytes.size());
  for (char c : bytes)
    out.push_back(static_cast<char>((static_cast<unsigned char>(c) + shift) % 128));
  return out;
}

inline std::string caesar_decrypt(std::string_view bytes, int shift) {
  if (shift < 1 || shift > 127) throw InvalidParameterError("caesar shift must be in [1, 127]");
  detail::require_seven_bit(bytes, "caesar_decrypt");
  std::string out;
  out.reserve(bytes.size());
  for (char c : bytes)
    out.push_back(static_cast<char>((static_cast<unsigned char>(c) + 128 - shift) % 128));
  return out;
}

// Self-inverse: applying the same key twice restores the input.
inline std::string stream_xor(std::string_view bytes, int stream_key) {
  if (stream_key < 0 || stream_key > 127)
    throw InvalidParameterError("stream key must be in [0, 127]");
  detail::require_seven_bit(bytes, "stream_xor");
  std::string out;
  out.reserve(bytes.size());
  for (char c : bytes)
    out.push_back(static_cast<char>(static_cast<unsigned char>(c) ^ stream_key));
  return out;
}

// Deterministic: equal plaintext items yield equal cipher items under the
// same key, so mining on ciphertext is mining on relabeled items.
inline CipherItem encrypt_item(const Item& item, const DoubleEncryptionKey& key) {
  key.validate();
  return stream_xor(caesar_encrypt(item, key.caesar_shift), key.stream_key);
}

inline Item decrypt_item(const CipherItem& ct, const DoubleEncryptionKey& key) {
  key.validate();
  return caesar_decrypt(stream_xor(ct, key.stream_key), key.caesar_shift);
}

// Item-wise encryption. Ids, transaction count, and per-transaction lengths
// are unchanged; items are re-sorted because the cipher permutes byte order.
inline TransactionDatabase encrypt_database(const TransactionDatabase& db,
                                            const DoubleEncryptionKey& key) {
  key.validate();
  TransactionDatabase out;
  out.transactions.reserve(db.size());
  for (const auto& tr : db.transactions) {
    Transaction ct{tr.id, {}};
    ct.items.reserve(tr.items.size());
    for (const auto& item : tr.items) ct.items.push_back(encrypt_item(item, key));
    std::sort(ct.items.begin(), ct.items.end());
    out.transactions.push_back(std::move(ct));
  }
  return out;
}

// Hex encoding for cipher tokens at serialization boundaries.
inline std::string hex_encode(std::string_view bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (char c : bytes) {
    const auto b = static_cast<unsigned char>(c);
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

}  // namespace ppfim
