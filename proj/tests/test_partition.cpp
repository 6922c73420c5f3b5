#include <doctest.h>

#include <random>
#include <set>

#include "bunkbed/errors.hpp"
#include "bunkbed/partition.hpp"

using namespace bunkbed;

namespace {

SetPartition random_partition(std::mt19937_64& rng, const std::vector<int>& ground) {
  std::vector<int> labels;
  for (std::size_t i = 0; i < ground.size(); ++i) labels.push_back(static_cast<int>(rng() % ground.size()));
  return SetPartition::from_labels(ground, labels);
}

bool restricted_growth(const SetPartition& p) {
  int top = -1;
  for (auto b : p.rgs()) {
    if (b > top + 1) return false;
    top = std::max(top, static_cast<int>(b));
  }
  return true;
}

// Connectivity oracle for join: union of both block relations, closed transitively by repeated sweeps.
SetPartition join_oracle(const SetPartition& x, const SetPartition& y) {
  const auto& g = x.ground();
  std::vector<int> label(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) label[i] = static_cast<int>(i);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        bool linked = x.same_block(g[i], g[j]) || y.same_block(g[i], g[j]);
        if (linked && label[i] != label[j]) {
          int m = std::min(label[i], label[j]);
          label[i] = label[j] = m;
          changed = true;
        }
      }
    }
  }
  return SetPartition::from_labels(g, label);
}

}  // namespace

TEST_CASE("canonicalize examples") {
  std::vector<int> abc{10, 11, 12};
  auto p = SetPartition::canonicalize(abc, {{10}, {11, 12}});
  CHECK(p.rgs() == std::vector<std::uint8_t>{0, 1, 1});
  CHECK(SetPartition::canonicalize(abc, {{12, 11}, {10}}) == p);
  CHECK(SetPartition::canonicalize(abc, {{10, 11, 12}}).rgs() == std::vector<std::uint8_t>{0, 0, 0});
  CHECK_THROWS(SetPartition::canonicalize(abc, {{10}, {11}}));
  CHECK_THROWS(SetPartition::canonicalize(abc, {{10, 11}, {11, 12}}));
}

TEST_CASE("join examples") {
  std::vector<int> abc{0, 1, 2};
  auto a_bc = SetPartition::canonicalize(abc, {{0}, {1, 2}});
  auto ab_c = SetPartition::canonicalize(abc, {{0, 1}, {2}});
  CHECK(join(a_bc, ab_c) == SetPartition::single_block(abc));
  CHECK(join(SetPartition::singletons(abc), SetPartition::singletons(abc)) == SetPartition::singletons(abc));
  CHECK_THROWS(join(a_bc, SetPartition::singletons({0, 1, 3})));
}

TEST_CASE("join lattice laws on random partitions") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    int k = 1 + static_cast<int>(rng() % 6);
    std::vector<int> ground;
    for (int i = 0; i < k; ++i) ground.push_back(3 * i + 1);
    auto x = random_partition(rng, ground), y = random_partition(rng, ground), z = random_partition(rng, ground);
    CHECK(restricted_growth(x));
    CHECK(join(x, y) == join(y, x));
    CHECK(join(join(x, y), z) == join(x, join(y, z)));
    CHECK(join(x, x) == x);
    CHECK(join(x, SetPartition::singletons(ground)) == x);
    CHECK(join(x, y) == join_oracle(x, y));
    CHECK(SetPartition::from_code(ground, x.code()) == x);
  }
}

TEST_CASE("enumerate gives Bell many distinct canonical partitions") {
  CHECK(enumerate_partitions(1).size() == 1);
  CHECK(enumerate_partitions(3).size() == 5);
  CHECK(enumerate_partitions(4).size() == 15);
  const std::uint64_t bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
  for (int k = 1; k <= 8; ++k) {
    auto all = enumerate_partitions(k);
    CHECK(all.size() == bell[k]);
    CHECK(bell_number(k) == bell[k]);
    std::set<std::uint64_t> codes;
    for (const auto& p : all) {
      CHECK(restricted_growth(p));
      codes.insert(p.code());
    }
    CHECK(codes.size() == all.size());
  }
  CHECK(bell_number(12) == 4213597);
  CHECK_THROWS_AS(enumerate_partitions(guards().partition_size + 1), GuardError);
}

TEST_CASE("eliminate examples") {
  std::vector<int> abc{0, 1, 2};
  auto e1 = eliminate(SetPartition::canonicalize(abc, {{0}, {1, 2}}), 0);
  CHECK(e1.closed);
  CHECK(e1.rest == SetPartition::single_block({1, 2}));
  auto e2 = eliminate(SetPartition::canonicalize(abc, {{0, 1}, {2}}), 1);
  CHECK_FALSE(e2.closed);
  CHECK(e2.rest == SetPartition::singletons({0, 2}));
  auto e3 = eliminate(SetPartition::singletons({5}), 5);
  CHECK(e3.closed);
  CHECK(e3.rest.size() == 0);
  CHECK_THROWS(eliminate(SetPartition::singletons({5}), 6));
}

TEST_CASE("eliminate round trip") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    int k = 2 + static_cast<int>(rng() % 5);
    std::vector<int> ground;
    for (int i = 0; i < k; ++i) ground.push_back(i);
    auto pi = random_partition(rng, ground);
    int e = ground[rng() % k];
    auto el = eliminate(pi, e);
    std::vector<int> rest_ground;
    for (int v : ground) {
      if (v != e) rest_ground.push_back(v);
    }
    CHECK(el.rest == pi.restrict_to(rest_ground));
    bool singleton = true;
    for (int v : ground) singleton = singleton && (v == e || !pi.same_block(v, e));
    CHECK(el.closed == singleton);
    // put e back as a singleton and join with pi's own blocks: recovers pi
    std::vector<int> labels;
    for (int v : ground) labels.push_back(v == e ? 100 : el.rest.block_of(v));
    CHECK(join(SetPartition::from_labels(ground, labels), pi) == pi);
  }
}

TEST_CASE("packed helpers agree with SetPartition") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    int k = 1 + static_cast<int>(rng() % 10);
    std::vector<int> ground(k);
    for (int i = 0; i < k; ++i) ground[i] = i;
    auto pi = random_partition(rng, ground);
    packed::Rgs rgs{};
    packed::decode(pi.code(), k, rgs);
    for (int i = 0; i < k; ++i) CHECK(rgs[i] == pi.rgs()[i]);
    CHECK(packed::block_count(pi.code(), k) == pi.block_count());
    std::uint8_t shuffled[kMaxPackedElements];
    for (int i = 0; i < k; ++i) shuffled[i] = static_cast<std::uint8_t>(7 - pi.rgs()[i]);
    CHECK(packed::encode_labels(shuffled, k) == pi.code());
  }
}

TEST_CASE("text form") {
  auto p = SetPartition::canonicalize({0, 1, 2}, {{0}, {1, 2}});
  CHECK(p.to_string() == "0|12");
  CHECK(p.to_string({"a", "b", "c"}) == "a|bc");
}
