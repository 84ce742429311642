#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace symexp {

// A set partition of {0, ..., d-1}; each block sorted, blocks ordered by
// smallest element.
class Partition {
 public:
  Partition(std::size_t d, std::vector<std::vector<std::size_t>> blocks) : d_(d), blocks_(std::move(blocks)) {
    require(d_ >= 1, "partition needs d >= 1");
    std::vector<int> seen(d_, 0);
    for (auto& b : blocks_) {
      require(!b.empty(), "partition blocks must be nonempty");
      std::sort(b.begin(), b.end());
      for (std::size_t i : b) {
        require(i < d_, "partition element out of range");
        require(!seen[i]++, "partition blocks must be disjoint");
      }
    }
    for (std::size_t i = 0; i < d_; ++i) require(seen[i] == 1, "partition blocks must cover [d]");
    std::sort(blocks_.begin(), blocks_.end());
    label_.assign(d_, 0);
    for (std::size_t k = 0; k < blocks_.size(); ++k)
      for (std::size_t i : blocks_[k]) label_[i] = k;
  }

  // "1,2;3" (1-based elements, ';' between blocks); d is the largest element.
  static Partition parse(const std::string& text) {
    std::vector<std::vector<std::size_t>> blocks;
    std::size_t d = 0;
    std::stringstream outer(text);
    std::string block;
    while (std::getline(outer, block, ';')) {
      std::vector<std::size_t> b;
      std::stringstream inner(block);
      std::string item;
      while (std::getline(inner, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        require(!item.empty() && std::all_of(item.begin(), item.end(), ::isdigit),
                "bad block element '" + item + "'");
        std::size_t v = std::stoul(item);
        require(v >= 1 && v <= 64, "block elements must lie in 1..64");
        b.push_back(v - 1);
        d = std::max(d, v);
      }
      blocks.push_back(std::move(b));
    }
    require(!blocks.empty(), "empty partition");
    return Partition(d, std::move(blocks));
  }

  // Restricted growth string: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1]).
  static Partition from_growth_string(const std::vector<std::size_t>& rgs) {
    std::size_t k = rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::vector<std::size_t>> blocks(k);
    for (std::size_t i = 0; i < rgs.size(); ++i) blocks[rgs[i]].push_back(i);
    return Partition(rgs.size(), std::move(blocks));
  }

  std::size_t d() const { return d_; }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  bool equivalent(std::size_t i, std::size_t j) const { return label_[i] == label_[j]; }

  std::size_t max_block() const {
    std::size_t m = 0;
    for (const auto& b : blocks_) m = std::max(m, b.size());
    return m;
  }

  std::string str() const {
    std::string out;
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      if (k) out += ";";
      for (std::size_t j = 0; j < blocks_[k].size(); ++j) out += (j ? "," : "") + std::to_string(blocks_[k][j] + 1);
    }
    return out;
  }

 private:
  std::size_t d_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> label_;
};

inline constexpr std::size_t kMaxPermutationDegree = 8;

// |{i : i equivalent to sigma(i)}|.
inline std::size_t equivalent_fixed_count(const Partition& part, const std::vector<std::size_t>& sigma) {
  require(sigma.size() == part.d(), "permutation size differs from d");
  std::size_t c = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) c += part.equivalent(i, sigma[i]);
  return c;
}

inline void check_counting_input(const Partition& part, std::size_t t) {
  require(t >= 1 && t <= part.d(), "t must satisfy 1 <= t <= d");
}

// Every permutation matches at least t indices with equivalent images.
inline bool hypothesis_holds(const Partition& part, std::size_t t) {
  check_counting_input(part, t);
  if (part.d() > kMaxPermutationDegree) throw BudgetExceeded("hypothesis_holds enumerates d! permutations; d <= 8");
  std::vector<std::size_t> sigma(part.d());
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    if (equivalent_fixed_count(part, sigma) < t) return false;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return true;
}

inline std::size_t ceil_half(std::size_t n) { return (n + 1) / 2; }

inline bool max_class_bound_check(const Partition& part, std::size_t t) {
  check_counting_input(part, t);
  return part.max_block() >= ceil_half(part.d() + t);
}

// When the largest block m is below ceil((d+t)/2): lay the blocks out
// consecutively (largest first, ties by smallest element) and shift by m.
inline std::optional<std::vector<std::size_t>> cyclic_shift_witness(const Partition& part, std::size_t t) {
  check_counting_input(part, t);
  std::size_t d = part.d(), m = part.max_block();
  if (m >= ceil_half(d + t)) return std::nullopt;
  std::vector<std::vector<std::size_t>> order = part.blocks();
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  std::vector<std::size_t> line;
  for (const auto& b : order) line.insert(line.end(), b.begin(), b.end());
  std::vector<std::size_t> sigma(d);
  for (std::size_t k = 0; k < d; ++k) sigma[line[k]] = line[(k + m) % d];
  std::size_t expected = 2 * m > d ? 2 * m - d : 0;
  ensure(equivalent_fixed_count(part, sigma) == expected, "cyclic shift count differs from max(0, 2m - d)");
  ensure(expected < t, "cyclic shift does not refute the hypothesis");
  return sigma;
}

// Calls fn on every set partition of [d].
inline void for_each_partition(std::size_t d, const std::function<void(const Partition&)>& fn) {
  require(d >= 1, "for_each_partition needs d >= 1");
  std::vector<std::size_t> rgs(d, 0), mx(d, 0);
  while (true) {
    fn(Partition::from_growth_string(rgs));
    std::size_t i = d;
    while (--i > 0) {
      if (rgs[i] <= mx[i - 1]) break;
    }
    if (i == 0) return;
    ++rgs[i];
    mx[i] = std::max(mx[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < d; ++j) {
      rgs[j] = 0;
      mx[j] = mx[j - 1];
    }
  }
}

}  // namespace symexp
