#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "levychaos/errors.hpp"
#include "levychaos/partitions.hpp"

namespace levychaos {
namespace {

using Blocks = std::vector<std::vector<int>>;

std::vector<Blocks> blocks_of(const std::vector<IdentificationRule>& rules) {
  std::vector<Blocks> out;
  for (const auto& r : rules) out.push_back(r.blocks());
  return out;
}

// All compositions of total into positive parts, i.e. every m with m_bar = total.
std::vector<std::vector<int>> compositions(int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = 1; k <= left; ++k) {
      cur.push_back(k);
      rec(left - k);
      cur.pop_back();
    }
  };
  rec(total);
  return out;
}

// Independent oracle: every ordered set partition of {0..n-1}, filtered by the
// two rule invariants written out directly.
std::set<Blocks> brute_force_rules(const std::vector<int>& orders) {
  const int n = std::accumulate(orders.begin(), orders.end(), 0);
  std::vector<int> factor(static_cast<std::size_t>(n));
  for (int j = 0, g = 0; j < static_cast<int>(orders.size()); ++j) {
    for (int i = 0; i < orders[static_cast<std::size_t>(j)]; ++i) factor[static_cast<std::size_t>(g++)] = j;
  }
  std::set<Blocks> out;
  std::vector<int> block_of(static_cast<std::size_t>(n));
  std::function<void(int, int)> assign = [&](int i, int k) {
    if (i == n) {
      Blocks b(static_cast<std::size_t>(k));
      for (int x = 0; x < n; ++x) b[static_cast<std::size_t>(block_of[static_cast<std::size_t>(x)])].push_back(x);
      // every order of the k blocks
      std::vector<int> perm(static_cast<std::size_t>(k));
      std::iota(perm.begin(), perm.end(), 0);
      do {
        Blocks ordered;
        for (int p : perm) ordered.push_back(b[static_cast<std::size_t>(p)]);
        bool ok = true;
        std::vector<int> last(orders.size(), -1);
        for (const auto& blk : ordered) {
          std::set<int> seen;
          for (int x : blk) {
            const int f = factor[static_cast<std::size_t>(x)];
            if (!seen.insert(f).second || x < last[static_cast<std::size_t>(f)]) ok = false;
            last[static_cast<std::size_t>(f)] = x;
          }
        }
        if (ok) out.insert(ordered);
      } while (std::next_permutation(perm.begin(), perm.end()));
      return;
    }
    // canonical labelling: index i joins an existing block or opens block k
    for (int b = 0; b <= k; ++b) {
      block_of[static_cast<std::size_t>(i)] = b;
      assign(i + 1, std::max(k, b + 1));
    }
  };
  assign(0, 0);
  return out;
}

TEST(Partitions, SingleFactorIsChain) {
  const std::vector<int> m{2};
  EXPECT_EQ(blocks_of(enumerate_rules(m)), (std::vector<Blocks>{{{0}, {1}}}));
}

TEST(Partitions, TwoSingletons) {
  const std::vector<int> m{1, 1};
  const auto rules = blocks_of(enumerate_rules(m));
  EXPECT_EQ(std::set<Blocks>(rules.begin(), rules.end()),
            (std::set<Blocks>{{{0, 1}}, {{0}, {1}}, {{1}, {0}}}));
  EXPECT_EQ(rules.size(), 3u);
}

TEST(Partitions, TwoOneHasFiveRules) {
  const std::vector<int> m{2, 1};
  const auto rules = blocks_of(enumerate_rules(m));
  EXPECT_EQ(std::set<Blocks>(rules.begin(), rules.end()),
            (std::set<Blocks>{{{0}, {1}, {2}}, {{0}, {2}, {1}}, {{2}, {0}, {1}}, {{0, 2}, {1}}, {{0}, {1, 2}}}));
}

TEST(Partitions, ExamplePairingsPresent) {
  const std::vector<int> m{1, 1, 2};
  const auto rules = blocks_of(enumerate_rules(m));
  EXPECT_NE(std::find(rules.begin(), rules.end(), Blocks{{0, 2}, {1, 3}}), rules.end());
  EXPECT_NE(std::find(rules.begin(), rules.end(), Blocks{{1, 2}, {0, 3}}), rules.end());
}

TEST(Partitions, MatchesBruteForceOracle) {
  for (int total = 1; total <= 6; ++total) {
    for (const auto& m : compositions(total)) {
      const auto rules = blocks_of(enumerate_rules(m));
      const std::set<Blocks> unique(rules.begin(), rules.end());
      EXPECT_EQ(unique.size(), rules.size());
      EXPECT_EQ(unique, brute_force_rules(m));
    }
  }
}

TEST(Partitions, InvariantsAndBlockCountBounds) {
  for (int total = 1; total <= 8; ++total) {
    for (const auto& m : compositions(total)) {
      const int max_m = *std::max_element(m.begin(), m.end());
      for_each_rule(m, [&](const IdentificationRule& rule) {
        EXPECT_TRUE(is_valid_rule(m, rule.blocks()));
        EXPECT_GE(static_cast<int>(rule.size()), max_m);
        EXPECT_LE(static_cast<int>(rule.size()), total);
      });
    }
  }
}

TEST(Partitions, EnumerationIsDeterministic) {
  const std::vector<int> m{2, 1, 2};
  EXPECT_EQ(blocks_of(enumerate_rules(m)), blocks_of(enumerate_rules(m)));
}

TEST(Partitions, CapacityAndValidation) {
  const std::vector<int> big{6, 5};
  EXPECT_THROW((void)enumerate_rules(big), CapacityError);
  const std::vector<int> zero{1, 0};
  EXPECT_THROW((void)enumerate_rules(zero), ConfigError);
  const std::vector<int> none;
  EXPECT_THROW((void)enumerate_rules(none), ConfigError);
  EXPECT_THROW(IdentificationRule({2}, {{1}, {0}}), ConfigError);
  EXPECT_THROW(IdentificationRule({2}, {{0, 1}}), ConfigError);
}

TEST(Partitions, FilterProduct) {
  const std::vector<int> m{1, 1};
  const auto rules = enumerate_rules(m);
  const auto both = blocks_of(filter_product(rules, 0b11));
  EXPECT_NE(std::find(both.begin(), both.end(), Blocks{{0, 1}}), both.end());
  const auto first = blocks_of(filter_product(rules, 0b01));
  EXPECT_EQ(std::find(first.begin(), first.end(), Blocks{{0, 1}}), first.end());
  EXPECT_NE(std::find(first.begin(), first.end(), Blocks{{0}, {1}}), first.end());

  const std::vector<int> three{1, 1, 1};
  for (const auto& r : filter_product(enumerate_rules(three), 0b111)) EXPECT_NE(r.size(), 1u);
}

TEST(Partitions, FilterMoment) {
  const std::vector<int> m{1, 1};
  const auto rules = enumerate_rules(m);
  for (IndexMask b : {0u, 3u}) {
    EXPECT_EQ(blocks_of(filter_moment(rules, b)), (std::vector<Blocks>{{{0, 1}}}));
  }
  EXPECT_TRUE(filter_moment(rules, 1u).empty());

  const std::vector<int> dominant{1, 1, 3};
  const auto d = enumerate_rules(dominant);
  for (IndexMask b = 0; b < 32; ++b) EXPECT_TRUE(filter_moment(d, b).empty());

  const std::vector<int> example{1, 1, 2};
  std::set<Blocks> survivors;
  const auto e = enumerate_rules(example);
  for (IndexMask b = 0; b < 16; ++b) {
    for (const auto& r : filter_moment(e, b)) survivors.insert(r.blocks());
  }
  EXPECT_EQ(survivors, (std::set<Blocks>{{{0, 2}, {1, 3}}, {{1, 2}, {0, 3}}}));
}

TEST(Partitions, Labelings) {
  const std::vector<int> two{1, 1};
  const auto single = moment_labelings(IdentificationRule(two, {{0, 1}}));
  ASSERT_EQ(single.size(), 2u);
  EXPECT_EQ(single[0].labels[0], BlockLabel::gaussian);
  EXPECT_EQ(single[1].labels[0], BlockLabel::jump);

  const std::vector<int> example{1, 1, 2};
  EXPECT_EQ(moment_labelings(IdentificationRule(example, {{0, 2}, {1, 3}})).size(), 4u);

  const std::vector<int> triple{1, 1, 1};
  EXPECT_EQ(moment_labelings(IdentificationRule(triple, {{0, 1, 2}})).size(), 1u);
  EXPECT_THROW((void)moment_labelings(IdentificationRule(two, {{0}, {1}})), ConfigError);
}

TEST(Partitions, MomentRoundTrip) {
  for (int total = 1; total <= 6; ++total) {
    for (const auto& m : compositions(total)) {
      const auto rules = enumerate_rules(m);
      std::multiset<std::pair<Blocks, IndexMask>> literal;
      for (IndexMask b = 0; b < (1u << total); ++b) {
        for (const auto& r : filter_moment(rules, b)) literal.insert({r.blocks(), b});
      }
      std::multiset<std::pair<Blocks, IndexMask>> factored;
      for (const auto& r : rules) {
        if (r.has_singleton()) continue;
        for (const auto& l : moment_labelings(r)) factored.insert({r.blocks(), l.gaussian_set});
      }
      EXPECT_EQ(literal, factored);
    }
  }
}

TEST(Partitions, DominantFactorHasNoMomentRules) {
  for (int total = 2; total <= 7; ++total) {
    for (const auto& m : compositions(total)) {
      const int max_m = *std::max_element(m.begin(), m.end());
      if (2 * max_m <= total) continue;
      EnumerationOptions opts;
      opts.min_block_size = 2;
      EXPECT_TRUE(enumerate_rules(m, opts).empty());
    }
  }
}

}  // namespace
}  // namespace levychaos
