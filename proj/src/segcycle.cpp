#include "linkoid/segcycle.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace linkoid {

namespace {

void check_label(int label, int size) {
  if (label < 1 || label > size) {
    throw std::out_of_range("endpoint label " + std::to_string(label) + " outside 1.." +
                            std::to_string(size));
  }
}

void check_same_size(const Pairing& j, const Pairing& hl) {
  if (j.label_count() != hl.label_count()) {
    throw std::invalid_argument("pairings act on different label sets");
  }
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Pairing::Pairing(std::vector<int> image) : image_(std::move(image)) {
  const int size = label_count();
  if (size % 2 != 0) throw std::invalid_argument("pairing on an odd number of labels");
  for (int a = 1; a <= size; ++a) {
    const int b = (*this)(a);
    check_label(b, size);
    if (b == a) throw std::invalid_argument("pairing fixes label " + std::to_string(a));
    if ((*this)(b) != a) throw std::invalid_argument("pairing is not an involution");
  }
}

Pairing Pairing::from_pairs(int n, std::span<const std::pair<int, int>> pairs) {
  if (n < 0) throw std::invalid_argument("negative pairing size");
  std::vector<int> image(static_cast<std::size_t>(2 * n), 0);
  for (const auto& [a, b] : pairs) {
    check_label(a, 2 * n);
    check_label(b, 2 * n);
    if (image[a - 1] != 0 || image[b - 1] != 0) {
      throw std::invalid_argument("label paired twice");
    }
    image[a - 1] = b;
    image[b - 1] = a;
  }
  if (std::find(image.begin(), image.end(), 0) != image.end()) {
    throw std::invalid_argument("pairing leaves a label unpaired");
  }
  return Pairing(std::move(image));
}

Pairing Pairing::parse(const std::string& cycles) {
  std::vector<std::pair<int, int>> pairs;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < cycles.size() && std::isspace(static_cast<unsigned char>(cycles[i]))) ++i;
  };
  int max_label = 0;
  skip_space();
  while (i < cycles.size()) {
    if (cycles[i] != '(') throw std::invalid_argument("expected '(' in cycle notation: " + cycles);
    ++i;
    std::vector<int> members;
    while (true) {
      skip_space();
      if (i >= cycles.size()) throw std::invalid_argument("unterminated cycle: " + cycles);
      if (cycles[i] == ')') {
        ++i;
        break;
      }
      std::size_t used = 0;
      int value = 0;
      try {
        value = std::stoi(cycles.substr(i), &used);
      } catch (const std::logic_error&) {
        throw std::invalid_argument("bad label in cycle notation: " + cycles);
      }
      i += used;
      members.push_back(value);
      if (i < cycles.size() && cycles[i] == ',') ++i;
    }
    if (members.size() != 2) throw std::invalid_argument("pairing cycles must be 2-cycles: " + cycles);
    pairs.emplace_back(members[0], members[1]);
    max_label = std::max({max_label, members[0], members[1]});
    skip_space();
  }
  if (static_cast<std::size_t>(max_label) != 2 * pairs.size()) {
    throw std::invalid_argument("pairing does not cover 1..2n: " + cycles);
  }
  return from_pairs(static_cast<int>(pairs.size()), pairs);
}

std::vector<std::pair<int, int>> Pairing::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 1; a <= label_count(); ++a) {
    const int b = (*this)(a);
    if (a < b) out.emplace_back(a, b);
  }
  return out;
}

std::string Pairing::to_string() const {
  std::ostringstream out;
  for (const auto& [a, b] : pairs()) out << '(' << a << ' ' << b << ')';
  return out.str();
}

Pairing head_leg_pairing(int n) {
  if (n <= 0) throw std::invalid_argument("head-leg pairing needs n >= 1");
  std::vector<int> image(static_cast<std::size_t>(2 * n));
  for (int i = 1; i <= n; ++i) {
    image[2 * i - 2] = 2 * i;
    image[2 * i - 1] = 2 * i - 1;
  }
  return Pairing(std::move(image));
}

std::vector<int> orbit(int label, const Pairing& j, const Pairing& hl) {
  check_same_size(j, hl);
  check_label(label, j.label_count());
  std::vector<int> out;
  int x = label;
  do {
    out.push_back(x);
    x = hl(j(x));
  } while (x != label);
  std::sort(out.begin(), out.end());
  return out;
}

SegmentCyclePartition segment_cycles(const Pairing& j, const Pairing& hl) {
  check_same_size(j, hl);
  const int size = j.label_count();
  UnionFind uf(static_cast<std::size_t>(size) + 1);
  for (int a = 1; a <= size; ++a) {
    uf.unite(a, j(a));
    uf.unite(a, hl(a));
  }
  std::vector<std::vector<int>> by_root(static_cast<std::size_t>(size) + 1);
  for (int a = 1; a <= size; ++a) by_root[uf.find(a)].push_back(a);
  SegmentCyclePartition out;
  for (auto& cls : by_root) {
    if (!cls.empty()) out.classes.push_back(std::move(cls));
  }
  // Roots are class minima, so classes come out ordered by smallest label.
  return out;
}

int cycle_count(const Pairing& j, const Pairing& hl) {
  return static_cast<int>(segment_cycles(j, hl).size());
}

int count_segment_cycles(std::span<const int> image) {
  // Each label has exactly one J-edge and one HL-edge, so the classes are the
  // cycles of an alternating walk.
  constexpr int kMaxLabels = 128;
  const int size = static_cast<int>(image.size());
  bool seen_small[kMaxLabels] = {};
  std::vector<bool> seen_large;
  if (size > kMaxLabels) seen_large.assign(static_cast<std::size_t>(size), false);
  auto seen = [&](int a) -> bool { return size > kMaxLabels ? seen_large[a - 1] : seen_small[a - 1]; };
  auto mark = [&](int a) {
    if (size > kMaxLabels) {
      seen_large[a - 1] = true;
    } else {
      seen_small[a - 1] = true;
    }
  };
  int count = 0;
  for (int a = 1; a <= size; ++a) {
    if (seen(a)) continue;
    ++count;
    int x = a;
    do {
      mark(x);
      const int y = image[x - 1];
      mark(y);
      x = (y % 2 == 0) ? y - 1 : y + 1;
    } while (x != a);
  }
  return count;
}

std::vector<int> decorated_circle(int label, const Pairing& j, const Pairing& hl) {
  check_same_size(j, hl);
  check_label(label, j.label_count());
  std::vector<int> out;
  int x = label;
  do {
    out.push_back(x);
    const int y = j(x);
    out.push_back(y);
    x = hl(y);
  } while (x != label);
  return out;
}

}  // namespace linkoid
