#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "algperm/permutation.hpp"

namespace {

using algperm::Partition;
using algperm::Permutation;

// Table oracle: raw image arrays composed by hand, i -> p[q[i]].
std::vector<int> raw_compose(const std::vector<int>& p, const std::vector<int>& q) {
  std::vector<int> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = p[q[i] - 1];
  return out;
}

std::vector<int> raw_inverse(const std::vector<int>& p) {
  std::vector<int> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i] - 1] = static_cast<int>(i) + 1;
  return out;
}

std::vector<int> images_of(const Permutation& p) { return {p.images().begin(), p.images().end()}; }

int raw_orbits(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  int orbits = 0;
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s]) continue;
    ++orbits;
    for (std::size_t j = s; !seen[j]; j = p[j] - 1) seen[j] = true;
  }
  return orbits;
}

Permutation cyc(int n, std::initializer_list<std::initializer_list<int>> cycles) {
  return Permutation::from_cycles(n, cycles);
}

TEST(Compose, IdentityLeavesCycleAlone) {
  EXPECT_EQ(algperm::compose(Permutation::identity(3), cyc(3, {{1, 2, 3}})), cyc(3, {{1, 2, 3}}));
}

TEST(Compose, TranspositionSquaredIsIdentity) {
  EXPECT_EQ(algperm::compose(cyc(2, {{1, 2}}), cyc(2, {{1, 2}})), Permutation::identity(2));
}

TEST(Compose, MatchesS3MultiplicationTable) {
  const std::vector<Permutation> group = algperm::enumerate(3);
  std::map<std::pair<std::vector<int>, std::vector<int>>, std::vector<int>> table;
  for (const auto& p : group)
    for (const auto& q : group) table[{images_of(p), images_of(q)}] = raw_compose(images_of(p), images_of(q));
  for (const auto& p : group)
    for (const auto& q : group) EXPECT_EQ(images_of(algperm::compose(p, q)), (table[{images_of(p), images_of(q)}]));
  const Permutation pq = algperm::compose(cyc(3, {{1, 2}}), cyc(3, {{2, 3}}));
  EXPECT_EQ(images_of(pq), (std::vector<int>{2, 3, 1}));
  EXPECT_EQ(pq, cyc(3, {{1, 2, 3}}));
}

TEST(Commutator, ElementWithItself) {
  const Permutation r = algperm::rotation(5);
  EXPECT_TRUE(algperm::commutator(r, r).is_identity());
}

TEST(Commutator, TranspositionAndThreeCycle) {
  const Permutation b = cyc(3, {{1, 2}}), r = cyc(3, {{1, 2, 3}});
  const auto bi = images_of(b), ri = images_of(r);
  const auto brute = raw_compose(raw_compose(raw_compose(bi, ri), raw_inverse(bi)), raw_inverse(ri));
  EXPECT_EQ(images_of(algperm::commutator(b, r)), brute);
  EXPECT_EQ(algperm::commutator(b, r), r);
}

TEST(Commutator, PowersOfRotationCommute) {
  const Permutation r = algperm::rotation(5);
  Permutation beta = Permutation::identity(5);
  for (int k = 0; k < 5; ++k, beta = beta * r) EXPECT_TRUE(algperm::commutator(beta, r).is_identity()) << k;
}

TEST(CycleCount, Examples) {
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(algperm::cycle_count(Permutation::identity(n)), n);
  EXPECT_EQ(algperm::cycle_count(cyc(3, {{1, 2, 3}})), 1);
  const Permutation p = cyc(6, {{1, 2}, {3, 4, 5}});
  EXPECT_EQ(algperm::cycle_count(p), raw_orbits(images_of(p)));
  EXPECT_EQ(algperm::cycle_count(p), 3);
}

TEST(Sign, Examples) {
  EXPECT_EQ(algperm::sign(Permutation::identity(4)), 1);
  for (int n = 2; n <= 6; ++n)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        std::vector<int> im(n);
        for (int k = 0; k < n; ++k) im[k] = k + 1;
        std::swap(im[i - 1], im[j - 1]);
        EXPECT_EQ(algperm::sign(Permutation(im)), -1);
      }
  for (int n = 1; n <= 9; ++n) EXPECT_EQ(algperm::sign(algperm::rotation(n)), n % 2 ? 1 : -1) << n;
}

TEST(Rotation, Examples) {
  EXPECT_TRUE(algperm::rotation(1).is_identity());
  EXPECT_EQ(algperm::rotation(3), cyc(3, {{1, 2, 3}}));
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(algperm::cycle_count(algperm::rotation(n)), 1);
}

TEST(BlockEmbed, Examples) {
  for (int n = 1; n <= 4; ++n)
    EXPECT_EQ(algperm::block_embed(Permutation::identity(n), Permutation::identity(n)), Permutation::identity(2 * n));
  const Permutation r = algperm::rotation(3);
  EXPECT_EQ(algperm::cycle_count(algperm::block_embed(r, r)), 2);
  EXPECT_EQ(algperm::block_embed(cyc(2, {{1, 2}}), Permutation::identity(2)), cyc(4, {{1, 2}}));
}

TEST(WInvolution, Examples) {
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(algperm::w_involution(n, 0), Permutation::identity(2 * n));
  EXPECT_EQ(algperm::w_involution(2, 2), cyc(4, {{1, 3}, {2, 4}}));
  for (int n = 1; n <= 5; ++n)
    for (int k = 0; k <= n; ++k) {
      const Permutation w = algperm::w_involution(n, k);
      EXPECT_TRUE((w * w).is_identity()) << n << ' ' << k;
    }
  EXPECT_THROW(algperm::w_involution(2, 3), algperm::InvalidInput);
}

TEST(Enumerate, Sizes) {
  const auto s3 = algperm::enumerate(3);
  EXPECT_EQ(s3.size(), 6u);
  EXPECT_EQ(std::set<Permutation>(s3.begin(), s3.end()).size(), 6u);
  const auto s1 = algperm::enumerate(1);
  ASSERT_EQ(s1.size(), 1u);
  EXPECT_TRUE(s1.front().is_identity());
}

TEST(Enumerate, CapIsEnforced) {
  EXPECT_THROW(algperm::enumerate(5, 4), algperm::ResourceLimit);
  EXPECT_EQ(algperm::enumerate(4, 4).size(), 24u);
}

TEST(SampleUniform, FrequenciesWithinFiveSigma) {
  const auto s4 = algperm::enumerate(4);
  std::map<Permutation, int> counts;
  algperm::RngStream stream(7, {1});
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++counts[algperm::sample_uniform(4, stream)];
  const double p = 1.0 / 24.0;
  const double se = std::sqrt(p * (1 - p) / draws);
  for (const auto& q : s4) EXPECT_NEAR(counts[q] / static_cast<double>(draws), p, 5 * se) << q.to_string();
}

TEST(SampleUniform, Reproducible) {
  algperm::RngStream a(11, {3, 4}), b(11, {3, 4});
  for (int i = 0; i < 50; ++i) EXPECT_EQ(algperm::sample_uniform(7, a), algperm::sample_uniform(7, b));
}

TEST(ConjugacyClass, Examples) {
  EXPECT_EQ(algperm::conjugacy_class_of(Permutation::identity(4)), (Partition{1, 1, 1, 1}));
  EXPECT_EQ(algperm::conjugacy_class_of(algperm::rotation(5)), Partition{5});
  const Permutation r = algperm::rotation(3);
  EXPECT_EQ(algperm::conjugacy_class_of(algperm::block_embed(r, r)), (Partition{3, 3}));
}

TEST(PermgroupProperty, ConjugationPreservesCycleCount) {
  for (int n = 1; n <= 5; ++n) {
    const auto g = algperm::enumerate(n);
    for (const auto& p : g)
      for (const auto& q : g) ASSERT_EQ(algperm::cycle_count(algperm::conjugate(p, q)), algperm::cycle_count(p));
  }
}

TEST(PermgroupProperty, ConjugateIsInverseTimesPTimesQ) {
  const auto g = algperm::enumerate(4);
  for (const auto& p : g)
    for (const auto& q : g)
      ASSERT_EQ(images_of(algperm::conjugate(p, q)),
                raw_compose(raw_compose(raw_inverse(images_of(q)), images_of(p)), images_of(q)));
}

TEST(PermgroupProperty, SignIsHomomorphism) {
  for (int n = 1; n <= 5; ++n) {
    const auto g = algperm::enumerate(n);
    for (const auto& p : g)
      for (const auto& q : g) ASSERT_EQ(algperm::sign(p * q), algperm::sign(p) * algperm::sign(q));
  }
}

TEST(PermgroupProperty, CommutatorsClosedUnderConjugationByRotation) {
  for (int n = 1; n <= 6; ++n) {
    const Permutation r = algperm::rotation(n);
    std::map<Permutation, int> multiset, conjugated;
    for (const auto& beta : algperm::enumerate(n)) {
      const Permutation c = algperm::commutator(beta, r);
      ++multiset[c];
      ++conjugated[algperm::conjugate(c, r)];
    }
    EXPECT_EQ(multiset, conjugated) << n;
  }
}

TEST(PermgroupProperty, BlockEmbedCycleTypeIsUnion) {
  for (int n = 1; n <= 4; ++n) {
    const auto g = algperm::enumerate(n);
    for (const auto& p : g)
      for (const auto& q : g) {
        std::vector<int> parts = algperm::cycle_type(p).parts();
        const Partition more = algperm::cycle_type(q);
        parts.insert(parts.end(), more.parts().begin(), more.parts().end());
        ASSERT_EQ(algperm::cycle_type(algperm::block_embed(p, q)), Partition::from_composition(parts));
      }
  }
}

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation({1, 1, 2}), algperm::InvalidInput);
  EXPECT_THROW(Permutation(std::vector<int>{}), algperm::InvalidInput);
  EXPECT_THROW(algperm::compose(Permutation::identity(2), Permutation::identity(3)), algperm::InvalidInput);
}

}  // namespace
