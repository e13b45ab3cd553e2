#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "galois/errors.hpp"

namespace galois {

/// Dense bitmask over a fixed index universe [0, universe).
///
/// The Tag parameter keeps attribute sets and object sets from being mixed up.
/// Binary operations require both operands to share a universe size.
template <class Tag>
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  static IndexSet full(std::size_t universe) {
    IndexSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  static IndexSet of(std::size_t universe, std::initializer_list<std::size_t> items) {
    IndexSet s(universe);
    for (auto i : items) s.insert(i);
    return s;
  }

  static IndexSet of(std::size_t universe, const std::vector<std::size_t>& items) {
    IndexSet s(universe);
    for (auto i : items) s.insert(i);
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  bool contains(std::size_t i) const {
    check(i);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void insert(std::size_t i) {
    check(i);
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  void erase(std::size_t i) {
    check(i);
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  bool is_subset_of(const IndexSet& other) const {
    same_universe(other);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~other.words_[k]) return false;
    return true;
  }
  bool is_proper_subset_of(const IndexSet& other) const { return is_subset_of(other) && *this != other; }

  IndexSet& operator&=(const IndexSet& other) {
    same_universe(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
  }
  IndexSet& operator|=(const IndexSet& other) {
    same_universe(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
    return *this;
  }
  /// Set difference.
  IndexSet& operator-=(const IndexSet& other) {
    same_universe(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~other.words_[k];
    return *this;
  }
  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }

  bool operator==(const IndexSet& other) const = default;

  /// Elements strictly below `bound`.
  IndexSet prefix(std::size_t bound) const {
    IndexSet s = *this;
    for (std::size_t k = 0; k < s.words_.size(); ++k) {
      const std::size_t lo = k * 64;
      if (lo >= bound) {
        s.words_[k] = 0;
      } else if (bound - lo < 64) {
        s.words_[k] &= (std::uint64_t{1} << (bound - lo)) - 1;
      }
    }
    return s;
  }

  /// Smallest element, or universe() when empty.
  std::size_t first() const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return universe_;
  }

  /// Lectic order: A < B iff the smallest element of the symmetric difference lies in B.
  bool lectic_less(const IndexSet& other) const {
    same_universe(other);
    for (std::size_t k = 0; k < words_.size(); ++k) {
      const std::uint64_t diff = words_[k] ^ other.words_[k];
      if (diff) return (other.words_[k] >> std::countr_zero(diff)) & 1u;
    }
    return false;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(w));
        f(k * 64 + bit);
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ universe_;
    for (auto w : words_) {
      h ^= w;
      h *= 1099511628211ull;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

 private:
  void check(std::size_t i) const {
    if (i >= universe_)
      throw BoundsError("index " + std::to_string(i) + " outside universe of size " + std::to_string(universe_));
  }
  void same_universe(const IndexSet& other) const {
    if (other.universe_ != universe_)
      throw BoundsError("set universes differ: " + std::to_string(universe_) + " vs " +
                        std::to_string(other.universe_));
  }
  void trim() {
    if (universe_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct AttributeTag {};
struct ObjectTag {};

using AttributeSet = IndexSet<AttributeTag>;
using ObjectSet = IndexSet<ObjectTag>;

struct IndexSetHash {
  template <class Tag>
  std::size_t operator()(const IndexSet<Tag>& s) const noexcept {
    return s.hash();
  }
};

}  // namespace galois
