#include "levychaos/partitions.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "levychaos/errors.hpp"

namespace levychaos {

namespace {

std::vector<int> factor_offsets(std::span<const int> orders) {
  std::vector<int> offsets(orders.size() + 1, 0);
  for (std::size_t j = 0; j < orders.size(); ++j) offsets[j + 1] = offsets[j] + orders[j];
  return offsets;
}

void check_orders(std::span<const int> orders, int capacity) {
  if (orders.empty()) throw ConfigError("at least one factor is required");
  for (int m : orders) {
    if (m < 1) throw ConfigError("every factor order must be >= 1");
  }
  const int total = std::accumulate(orders.begin(), orders.end(), 0);
  if (total > capacity) {
    throw CapacityError("ground set size " + std::to_string(total) + " exceeds capacity " +
                        std::to_string(capacity));
  }
  if (total > 32) throw CapacityError("ground set size above 32 is not representable");
}

}  // namespace

bool is_valid_rule(std::span<const int> orders, const std::vector<std::vector<int>>& blocks) {
  const auto offsets = factor_offsets(orders);
  const int total = offsets.back();
  std::vector<int> seen(static_cast<std::size_t>(total), 0);
  // Last position at which each factor contributed an index, and that index.
  std::vector<int> last_index(orders.size(), -1);
  for (const auto& block : blocks) {
    if (block.empty()) return false;
    std::vector<int> used(orders.size(), 0);
    for (int idx : block) {
      if (idx < 0 || idx >= total || seen[static_cast<std::size_t>(idx)]++) return false;
      const auto j = static_cast<std::size_t>(
          std::upper_bound(offsets.begin(), offsets.end(), idx) - offsets.begin() - 1);
      if (used[j]++) return false;
      if (idx <= last_index[j]) return false;
      last_index[j] = idx;
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

IdentificationRule::IdentificationRule(std::vector<int> orders, std::vector<std::vector<int>> blocks)
    : orders_(std::move(orders)), blocks_(std::move(blocks)) {
  check_orders(orders_, 32);
  for (auto& b : blocks_) std::sort(b.begin(), b.end());
  if (!is_valid_rule(orders_, blocks_)) {
    throw ConfigError("blocks do not form an identification rule for these orders");
  }
  ground_size_ = std::accumulate(orders_.begin(), orders_.end(), 0);
  index_masks();
}

void IdentificationRule::index_masks() {
  masks_.clear();
  masks_.reserve(blocks_.size());
  for (const auto& b : blocks_) {
    IndexMask m = 0;
    for (int i : b) m |= IndexMask{1} << i;
    masks_.push_back(m);
  }
}

int IdentificationRule::factor_of(int index) const {
  int offset = 0;
  for (std::size_t j = 0; j < orders_.size(); ++j) {
    offset += orders_[j];
    if (index < offset) return static_cast<int>(j);
  }
  throw ConfigError("index outside the ground set");
}

bool IdentificationRule::has_singleton() const noexcept {
  return std::any_of(blocks_.begin(), blocks_.end(), [](const auto& b) { return b.size() == 1; });
}

void for_each_rule(std::span<const int> orders,
                   const std::function<void(const IdentificationRule&)>& visit,
                   EnumerationOptions options) {
  check_orders(orders, options.capacity);
  const std::size_t n = orders.size();
  if (n > 20) throw CapacityError("too many factors for subset enumeration");
  const auto offsets = factor_offsets(orders);
  const std::vector<int> order_vec(orders.begin(), orders.end());

  std::vector<int> remaining(order_vec);
  std::vector<std::vector<int>> reversed;  // blocks from last to first
  int unchosen = offsets.back();

  auto recurse = [&](auto&& self) -> void {
    if (unchosen == 0) {
      std::vector<std::vector<int>> blocks(reversed.rbegin(), reversed.rend());
      visit(IdentificationRule(order_vec, std::move(blocks)));
      return;
    }
    std::uint32_t available = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (remaining[j] > 0) available |= std::uint32_t{1} << j;
    }
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
      if ((mask & ~available) != 0) continue;
      const int size = std::popcount(mask);
      if (size < options.min_block_size) continue;
      std::vector<int> block;
      block.reserve(static_cast<std::size_t>(size));
      for (std::size_t j = 0; j < n; ++j) {
        if (mask & (std::uint32_t{1} << j)) {
          block.push_back(offsets[j] + remaining[j] - 1);
          --remaining[j];
        }
      }
      unchosen -= size;
      reversed.push_back(std::move(block));
      self(self);
      reversed.pop_back();
      unchosen += size;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask & (std::uint32_t{1} << j)) ++remaining[j];
      }
    }
  };
  recurse(recurse);
}

std::vector<IdentificationRule> enumerate_rules(std::span<const int> orders,
                                                EnumerationOptions options) {
  std::vector<IdentificationRule> out;
  for_each_rule(orders, [&](const IdentificationRule& r) { out.push_back(r); }, options);
  return out;
}

namespace {

template <typename Keep>
std::vector<IdentificationRule> filter_blocks(std::span<const IdentificationRule> rules,
                                              Keep keep_block) {
  std::vector<IdentificationRule> out;
  for (const auto& rule : rules) {
    bool ok = true;
    for (std::size_t r = 0; r < rule.size() && ok; ++r) ok = keep_block(rule.block_mask(r));
    if (ok) out.push_back(rule);
  }
  return out;
}

}  // namespace

std::vector<IdentificationRule> filter_product(std::span<const IdentificationRule> rules,
                                               IndexMask gaussian_set) {
  return filter_blocks(rules, [gaussian_set](IndexMask block) {
    if ((block & gaussian_set) == block) return std::popcount(block) <= 2;
    return (block & gaussian_set) == 0;
  });
}

std::vector<IdentificationRule> filter_moment(std::span<const IdentificationRule> rules,
                                              IndexMask gaussian_set) {
  return filter_blocks(rules, [gaussian_set](IndexMask block) {
    if ((block & gaussian_set) == block) return std::popcount(block) == 2;
    return (block & gaussian_set) == 0 && std::popcount(block) >= 2;
  });
}

std::vector<BlockLabeling> moment_labelings(const IdentificationRule& rule) {
  if (rule.has_singleton()) {
    throw ConfigError("moment labelings are undefined for rules with singleton blocks");
  }
  std::vector<BlockLabeling> out{BlockLabeling{}};
  for (std::size_t r = 0; r < rule.size(); ++r) {
    const IndexMask block = rule.block_mask(r);
    std::vector<BlockLabeling> next;
    next.reserve(out.size() * 2);
    for (const auto& partial : out) {
      if (std::popcount(block) == 2) {
        auto g = partial;
        g.labels.push_back(BlockLabel::gaussian);
        g.gaussian_set |= block;
        next.push_back(std::move(g));
      }
      auto j = partial;
      j.labels.push_back(BlockLabel::jump);
      next.push_back(std::move(j));
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace levychaos
