#pragma once

// Dense GF(2) vectors and an incremental echelon basis. Private to the
// chain-complex engine.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace charslope::gf2 {

class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void flip(std::size_t i) { words_[i / 64] ^= (std::uint64_t{1} << (i % 64)); }
  void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }

  Vec& operator^=(const Vec& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }

  bool is_zero() const {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  std::optional<std::size_t> lowest() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return std::nullopt;
  }

  friend bool operator==(const Vec&, const Vec&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// Echelon basis keyed by lowest set bit. Each stored row optionally carries a
// companion vector that records how it was assembled from the inputs.
class Echelon {
 public:
  struct Row {
    Vec value;
    Vec tag;
  };

  // Reduces v (and its tag) against the basis; returns the residue.
  std::pair<Vec, Vec> reduce(Vec v, Vec tag) const {
    while (true) {
      const auto pivot = v.lowest();
      if (!pivot) break;
      const auto it = by_pivot_.find(*pivot);
      if (it == by_pivot_.end()) break;
      const Row& row = rows_[it->second];
      v ^= row.value;
      if (tag.size() == row.tag.size() && tag.size() > 0) tag ^= row.tag;
    }
    return {std::move(v), std::move(tag)};
  }

  bool contains(const Vec& v) const { return reduce(v, Vec()).first.is_zero(); }

  // Inserts v; returns false (and leaves the basis unchanged) when v is
  // already in the span. On false, `kernel_tag` receives the reduced tag.
  bool insert(Vec v, Vec tag, Vec* kernel_tag = nullptr) {
    auto [residue, residue_tag] = reduce(std::move(v), std::move(tag));
    const auto pivot = residue.lowest();
    if (!pivot) {
      if (kernel_tag) *kernel_tag = std::move(residue_tag);
      return false;
    }
    by_pivot_.emplace(*pivot, rows_.size());
    rows_.push_back({std::move(residue), std::move(residue_tag)});
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  std::vector<Row> rows_;
  std::unordered_map<std::size_t, std::size_t> by_pivot_;
};

}  // namespace charslope::gf2
