#include "bunkbed/partition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "bunkbed/errors.hpp"

namespace bunkbed {

namespace packed {

void decode(std::uint64_t code, int k, Rgs& out) {
  for (int i = 0; i < k; ++i) out[i] = static_cast<std::uint8_t>((code >> (4 * i)) & 0xF);
}

std::uint64_t encode_labels(const std::uint8_t* labels, int k) {
  std::uint8_t remap[256];
  std::fill(std::begin(remap), std::end(remap), 0xFF);
  std::uint8_t next = 0;
  std::uint64_t code = 0;
  for (int i = 0; i < k; ++i) {
    std::uint8_t& r = remap[labels[i]];
    if (r == 0xFF) r = next++;
    code |= static_cast<std::uint64_t>(r) << (4 * i);
  }
  return code;
}

int block_count(std::uint64_t code, int k) {
  int m = -1;
  for (int i = 0; i < k; ++i) m = std::max(m, static_cast<int>((code >> (4 * i)) & 0xF));
  return m + 1;
}

}  // namespace packed

namespace {

void check_distinct(const std::vector<int>& ground) {
  std::vector<int> s = ground;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("ground has repeated elements");
}

}  // namespace

SetPartition SetPartition::from_labels(const std::vector<int>& ground, const std::vector<int>& labels) {
  if (labels.size() != ground.size()) throw std::invalid_argument("label count differs from ground size");
  SetPartition p;
  p.ground_ = ground;
  p.rgs_.resize(ground.size());
  std::vector<std::pair<int, int>> seen;  // label -> block
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& s) { return s.first == labels[i]; });
    int b;
    if (it == seen.end()) {
      b = static_cast<int>(seen.size());
      seen.emplace_back(labels[i], b);
    } else {
      b = it->second;
    }
    if (b > 255) throw std::invalid_argument("too many blocks");
    p.rgs_[i] = static_cast<std::uint8_t>(b);
  }
  p.blocks_ = static_cast<int>(seen.size());
  return p;
}

SetPartition SetPartition::canonicalize(const std::vector<int>& ground, const std::vector<std::vector<int>>& groups) {
  check_distinct(ground);
  std::vector<int> label(ground.size(), -1);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int e : groups[g]) {
      auto it = std::find(ground.begin(), ground.end(), e);
      if (it == ground.end()) throw std::invalid_argument("group element " + std::to_string(e) + " is not in the ground");
      auto i = static_cast<std::size_t>(it - ground.begin());
      if (label[i] != -1) throw std::invalid_argument("element " + std::to_string(e) + " appears in two groups");
      label[i] = static_cast<int>(g);
    }
  }
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (label[i] == -1) throw std::invalid_argument("element " + std::to_string(ground[i]) + " is missing from the grouping");
  }
  return from_labels(ground, label);
}

SetPartition SetPartition::from_code(const std::vector<int>& ground, std::uint64_t code) {
  int k = static_cast<int>(ground.size());
  if (k > kMaxPackedElements) throw std::invalid_argument("packed partitions hold at most 16 elements");
  std::vector<int> labels(ground.size());
  for (int i = 0; i < k; ++i) labels[i] = static_cast<int>((code >> (4 * i)) & 0xF);
  return from_labels(ground, labels);
}

SetPartition SetPartition::singletons(const std::vector<int>& ground) {
  std::vector<int> labels(ground.size());
  std::iota(labels.begin(), labels.end(), 0);
  return from_labels(ground, labels);
}

SetPartition SetPartition::single_block(const std::vector<int>& ground) {
  return from_labels(ground, std::vector<int>(ground.size(), 0));
}

int SetPartition::position_of(int element) const {
  auto it = std::find(ground_.begin(), ground_.end(), element);
  return it == ground_.end() ? -1 : static_cast<int>(it - ground_.begin());
}

int SetPartition::block_of(int element) const {
  int i = position_of(element);
  if (i < 0) throw std::invalid_argument("element " + std::to_string(element) + " is not in the ground");
  return rgs_[i];
}

bool SetPartition::same_block(int a, int b) const { return block_of(a) == block_of(b); }

std::vector<std::vector<int>> SetPartition::blocks() const {
  std::vector<std::vector<int>> out(blocks_);
  for (std::size_t i = 0; i < ground_.size(); ++i) out[rgs_[i]].push_back(ground_[i]);
  return out;
}

std::uint64_t SetPartition::code() const {
  if (ground_.size() > kMaxPackedElements) throw std::invalid_argument("packed partitions hold at most 16 elements");
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < rgs_.size(); ++i) c |= static_cast<std::uint64_t>(rgs_[i]) << (4 * i);
  return c;
}

SetPartition SetPartition::restrict_to(const std::vector<int>& sub) const {
  std::vector<int> labels;
  labels.reserve(sub.size());
  for (int e : sub) labels.push_back(block_of(e));
  return from_labels(sub, labels);
}

std::string SetPartition::to_string() const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < ground_.size(); ++i) names.push_back(std::to_string(i));
  return to_string(names);
}

std::string SetPartition::to_string(const std::vector<std::string>& names) const {
  if (names.size() != ground_.size()) throw std::invalid_argument("name count differs from ground size");
  bool wide = std::any_of(names.begin(), names.end(), [](const std::string& s) { return s.size() != 1; });
  std::string out;
  auto bl = blocks();
  for (std::size_t b = 0; b < bl.size(); ++b) {
    if (b > 0) out += '|';
    bool first = true;
    for (std::size_t i = 0; i < ground_.size(); ++i) {
      if (rgs_[i] != b) continue;
      if (!first && wide) out += ',';
      out += names[i];
      first = false;
    }
  }
  return out;
}

SetPartition join(const SetPartition& x, const SetPartition& y) {
  if (x.ground() != y.ground()) throw std::invalid_argument("join of partitions over different grounds");
  std::size_t k = x.size();
  // Union-find over positions; the first position of each block acts as anchor.
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  for (const SetPartition* p : {&x, &y}) {
    std::vector<int> anchor(p->block_count(), -1);
    for (std::size_t i = 0; i < k; ++i) {
      int b = p->rgs()[i];
      if (anchor[b] < 0) {
        anchor[b] = static_cast<int>(i);
      } else {
        int ra = find(anchor[b]), rb = find(static_cast<int>(i));
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }
  std::vector<int> labels(k);
  for (std::size_t i = 0; i < k; ++i) labels[i] = find(static_cast<int>(i));
  return SetPartition::from_labels(x.ground(), labels);
}

Elimination eliminate(const SetPartition& x, int element) {
  int pos = x.position_of(element);
  if (pos < 0) throw std::invalid_argument("cannot eliminate " + std::to_string(element) + ": not in the ground");
  int b = x.rgs()[pos];
  bool closed = true;
  std::vector<int> ground, labels;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (static_cast<int>(i) == pos) continue;
    if (x.rgs()[i] == b) closed = false;
    ground.push_back(x.ground()[i]);
    labels.push_back(x.rgs()[i]);
  }
  return {SetPartition::from_labels(ground, labels), closed};
}

std::uint64_t bell_number(int k) {
  if (k < 0) throw std::invalid_argument("negative Bell index");
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (int i = 0; i < k; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

std::vector<SetPartition> enumerate_partitions(const std::vector<int>& ground) {
  int k = static_cast<int>(ground.size());
  if (k > guards().partition_size) {
    throw GuardError("enumerating partitions of " + std::to_string(k) + " elements needs Bell(" + std::to_string(k) +
                     ") = " + std::to_string(bell_number(k)) + " tables; limit is k <= " +
                     std::to_string(guards().partition_size));
  }
  std::vector<SetPartition> out;
  if (k == 0) {
    out.push_back(SetPartition::singletons(ground));
    return out;
  }
  std::vector<int> a(k, 0), mx(k, 0);  // mx[i] = max of a[0..i-1]
  while (true) {
    out.push_back(SetPartition::from_labels(ground, a));
    int i = k - 1;
    while (i > 0 && a[i] == mx[i] + 1) --i;
    if (i == 0) break;
    ++a[i];
    for (int j = i + 1; j < k; ++j) {
      a[j] = 0;
      mx[j] = std::max(mx[j - 1], a[j - 1]);
    }
  }
  return out;
}

std::vector<SetPartition> enumerate_partitions(int k) {
  if (k < 1) throw std::invalid_argument("partition enumeration needs k >= 1");
  std::vector<int> ground(k);
  std::iota(ground.begin(), ground.end(), 0);
  return enumerate_partitions(ground);
}

}  // namespace bunkbed
