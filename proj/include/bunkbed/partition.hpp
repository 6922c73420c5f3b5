#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace bunkbed {

inline constexpr int kMaxPackedElements = 16;

// Set partition of an ordered ground set, stored as a restricted-growth string.
class SetPartition {
 public:
  SetPartition() = default;

  static SetPartition canonicalize(const std::vector<int>& ground, const std::vector<std::vector<int>>& groups);
  // labels[i] is an arbitrary block tag for ground[i].
  static SetPartition from_labels(const std::vector<int>& ground, const std::vector<int>& labels);
  static SetPartition from_code(const std::vector<int>& ground, std::uint64_t code);
  static SetPartition singletons(const std::vector<int>& ground);
  static SetPartition single_block(const std::vector<int>& ground);

  const std::vector<int>& ground() const { return ground_; }
  const std::vector<std::uint8_t>& rgs() const { return rgs_; }
  std::size_t size() const { return ground_.size(); }
  int block_count() const { return blocks_; }
  int position_of(int element) const;  // -1 when absent
  int block_of(int element) const;
  bool same_block(int a, int b) const;
  std::vector<std::vector<int>> blocks() const;

  // 4 bits per element; needs size() <= 16.
  std::uint64_t code() const;
  // Elements not in `sub` are dropped; sub must be a subset of the ground.
  SetPartition restrict_to(const std::vector<int>& sub) const;

  // "0|12": positions within the ground; elements joined by ',' once positions reach 10.
  std::string to_string() const;
  // Same notation with ground labels substituted.
  std::string to_string(const std::vector<std::string>& names) const;

  friend bool operator==(const SetPartition& a, const SetPartition& b) {
    return a.ground_ == b.ground_ && a.rgs_ == b.rgs_;
  }
  friend bool operator<(const SetPartition& a, const SetPartition& b) {
    return a.ground_ != b.ground_ ? a.ground_ < b.ground_ : a.rgs_ < b.rgs_;
  }

 private:
  std::vector<int> ground_;
  std::vector<std::uint8_t> rgs_;
  int blocks_ = 0;
};

SetPartition join(const SetPartition& x, const SetPartition& y);

struct Elimination {
  SetPartition rest;
  bool closed = false;
};
Elimination eliminate(const SetPartition& x, int element);

std::vector<SetPartition> enumerate_partitions(int k);
std::vector<SetPartition> enumerate_partitions(const std::vector<int>& ground);
std::uint64_t bell_number(int k);

// Packed helpers for hot loops: a code is an RGS with 4 bits per position.
namespace packed {
using Rgs = std::array<std::uint8_t, kMaxPackedElements>;
void decode(std::uint64_t code, int k, Rgs& out);
// Relabels arbitrary labels into restricted-growth form; returns the code.
std::uint64_t encode_labels(const std::uint8_t* labels, int k);
int block_count(std::uint64_t code, int k);
}  // namespace packed

}  // namespace bunkbed
