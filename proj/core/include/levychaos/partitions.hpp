#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace levychaos {

/// Set of global indices 0..31, bit i <-> index i.
using IndexMask = std::uint32_t;

/// Ordered block sequence (S_1, ..., S_k) partitioning the global indices
/// {0, ..., m_1 + ... + m_N - 1}. Block r is identified with time variable t_r,
/// t_1 < ... < t_k.
///
/// Invariants checked on construction:
///   - each block holds at most one index of each factor;
///   - the indices of each factor appear in increasing order along the sequence.
/// Indices are zero-based here; the CLI prints them one-based.
class IdentificationRule {
 public:
  IdentificationRule(std::vector<int> orders, std::vector<std::vector<int>> blocks);

  [[nodiscard]] const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }
  [[nodiscard]] std::size_t size() const noexcept { return blocks_.size(); }
  [[nodiscard]] const std::vector<int>& orders() const noexcept { return orders_; }
  [[nodiscard]] int ground_size() const noexcept { return ground_size_; }
  /// Which factor (0-based) the global index belongs to.
  [[nodiscard]] int factor_of(int index) const;
  [[nodiscard]] IndexMask block_mask(std::size_t r) const { return masks_.at(r); }
  [[nodiscard]] bool has_singleton() const noexcept;

  friend bool operator==(const IdentificationRule& a, const IdentificationRule& b) {
    return a.orders_ == b.orders_ && a.blocks_ == b.blocks_;
  }
  friend bool operator<(const IdentificationRule& a, const IdentificationRule& b) {
    return a.blocks_ < b.blocks_;
  }

 private:
  void index_masks();

  std::vector<int> orders_;
  std::vector<std::vector<int>> blocks_;
  std::vector<IndexMask> masks_;
  int ground_size_ = 0;
};

struct EnumerationOptions {
  /// Largest allowed m_1 + ... + m_N.
  int capacity = 10;
  /// Blocks smaller than this are pruned during construction (2 drops singletons).
  int min_block_size = 1;
};

/// True when the blocks partition the ground set and satisfy both rule invariants.
bool is_valid_rule(std::span<const int> orders, const std::vector<std::vector<int>>& blocks);

/// Visits every rule in Pi(m_1, ..., m_N) produced by the backward induction:
/// the last block is a nonempty subset of the current largest unchosen index of
/// each factor, and so on down to the first block. Subsets are tried in
/// increasing bitmask order over factors, which fixes the visiting order.
/// Throws CapacityError when the ground set exceeds options.capacity.
void for_each_rule(std::span<const int> orders,
                   const std::function<void(const IdentificationRule&)>& visit,
                   EnumerationOptions options = {});

std::vector<IdentificationRule> enumerate_rules(std::span<const int> orders,
                                                EnumerationOptions options = {});

/// Rules whose blocks lie entirely in B with at most two elements, or entirely
/// outside B.
std::vector<IdentificationRule> filter_product(std::span<const IdentificationRule> rules,
                                               IndexMask gaussian_set);

/// Rules whose blocks lie entirely in B with exactly two elements, or entirely
/// outside B with at least two elements.
std::vector<IdentificationRule> filter_moment(std::span<const IdentificationRule> rules,
                                              IndexMask gaussian_set);

enum class BlockLabel { gaussian, jump };

struct BlockLabeling {
  std::vector<BlockLabel> labels;
  /// Union of the Gaussian-labelled blocks.
  IndexMask gaussian_set = 0;

  friend bool operator==(const BlockLabeling&, const BlockLabeling&) = default;
};

/// Every labelling contributing to the moment formula for this rule: pair
/// blocks are Gaussian or Jump, larger blocks are Jump. Blocks are labelled in
/// order with Gaussian before Jump, first block most significant.
/// Throws ConfigError if the rule has a singleton block.
std::vector<BlockLabeling> moment_labelings(const IdentificationRule& rule);

}  // namespace levychaos
