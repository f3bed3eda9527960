#include "pidpp/configuration.hpp"

#include "pidpp/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>

namespace pidpp {

namespace {

std::vector<int> pick(const std::vector<int>& items, std::uint32_t mask) {
  std::vector<int> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (mask >> i & 1U) out.push_back(items[i]);
  }
  return out;
}

std::vector<int> minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(const std::vector<int>& sorted, int v) { return std::binary_search(sorted.begin(), sorted.end(), v); }

void write_set(std::ostream& out, const std::vector<int>& s) {
  out << '{';
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
  out << '}';
}

}  // namespace

std::string to_string(const Configuration& c) {
  std::ostringstream out;
  out << "O1=";
  write_set(out, c.o1);
  out << " O2=";
  write_set(out, c.o2);
  out << " F1=";
  write_set(out, c.f1);
  out << " F2=";
  write_set(out, c.f2);
  out << " tau={";
  for (std::size_t i = 0; i < c.tau.size(); ++i) out << (i ? "," : "") << c.tau[i].first << "->" << c.tau[i].second;
  out << "} nu=" << c.nu;
  return out.str();
}

std::vector<Configuration> enumerate_configurations(const std::vector<int>& bag) {
  std::vector<int> sorted = bag;
  std::sort(sorted.begin(), sorted.end());
  const std::uint32_t full = 1U << sorted.size();
  std::vector<Configuration> out;
  for (std::uint32_t m1 = 0; m1 < full; ++m1) {
    for (std::uint32_t m2 = 0; m2 < full; ++m2) {
      if (std::popcount(m1) != std::popcount(m2)) continue;
      // Submasks of m1 and m2 in increasing order.
      for (std::uint32_t g1 = 0;; g1 = (g1 - m1) & m1) {
        for (std::uint32_t g2 = 0;; g2 = (g2 - m2) & m2) {
          if (std::popcount(g1) == std::popcount(g2)) {
            Configuration c;
            c.o1 = pick(sorted, m1);
            c.o2 = pick(sorted, m2);
            c.f1 = pick(sorted, g1);
            c.f2 = pick(sorted, g2);
            std::vector<int> dom = minus(c.o1, c.f1);
            std::vector<int> img = minus(c.o2, c.f2);
            do {
              c.tau.clear();
              for (std::size_t i = 0; i < dom.size(); ++i) c.tau.emplace_back(dom[i], img[i]);
              for (int nu = 0; nu < 2; ++nu) {
                c.nu = nu;
                out.push_back(c);
              }
            } while (std::next_permutation(img.begin(), img.end()));
          }
          if (g2 == m2) break;
        }
        if (g1 == m1) break;
      }
    }
  }
  return out;
}

int inversion_parity(const Bijection& sigma, const std::vector<int>& order) {
  std::map<int, int> rank;
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> ranked;
  for (auto [a, b] : sigma) ranked.emplace_back(rank.at(a), rank.at(b));
  std::sort(ranked.begin(), ranked.end());
  int inv = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    for (std::size_t j = i + 1; j < ranked.size(); ++j) inv ^= ranked[i].second > ranked[j].second;
  }
  return inv;
}

Configuration configuration_of(const Bijection& sigma, const std::vector<int>& forgotten,
                               const std::vector<int>& order) {
  std::set<int> s_set(forgotten.begin(), forgotten.end());
  Configuration c;
  for (auto [a, b] : sigma) {
    const bool a_bag = !s_set.count(a);
    const bool b_bag = !s_set.count(b);
    if (a_bag) c.o1.push_back(a);
    if (b_bag) c.o2.push_back(b);
    if (a_bag && !b_bag) c.f1.push_back(a);
    if (!a_bag && b_bag) c.f2.push_back(b);
    if (a_bag && b_bag) c.tau.emplace_back(a, b);
  }
  std::sort(c.o1.begin(), c.o1.end());
  std::sort(c.o2.begin(), c.o2.end());
  std::sort(c.f1.begin(), c.f1.end());
  std::sort(c.f2.begin(), c.f2.end());
  std::sort(c.tau.begin(), c.tau.end());
  c.nu = inversion_parity(sigma, order);
  return c;
}

ParityDelta reorder_delta(const Configuration& c, const std::vector<int>& from, const std::vector<int>& to,
                          std::size_t forgotten_count) {
  if (from.size() != to.size() || !std::is_permutation(from.begin(), from.end(), to.begin())) {
    throw InvalidArgument("orderings must list the same vertices");
  }
  if (forgotten_count > from.size() ||
      !std::equal(from.begin(), from.begin() + static_cast<long>(forgotten_count), to.begin())) {
    throw InvalidArgument("orderings disagree on V_t \\ X_t");
  }
  const std::set<int> head(from.begin(), from.begin() + static_cast<long>(forgotten_count));
  for (const auto* part : {&c.o1, &c.o2}) {
    for (int v : *part) {
      if (head.count(v)) throw InvalidArgument("configuration vertex outside the bag");
    }
  }
  std::vector<int> cur = from;
  std::map<int, int> target;
  for (std::size_t i = 0; i < to.size(); ++i) target[to[i]] = static_cast<int>(i);
  int delta = 0;
  int swaps = 0;
  for (std::size_t pass = 0; pass < cur.size(); ++pass) {
    for (std::size_t i = forgotten_count; i + 1 < cur.size(); ++i) {
      if (target[cur[i]] > target[cur[i + 1]]) {
        const int v = cur[i], w = cur[i + 1];
        const bool both1 = contains(c.o1, v) && contains(c.o1, w);
        const bool both2 = contains(c.o2, v) && contains(c.o2, w);
        delta ^= static_cast<int>(both1 != both2);
        std::swap(cur[i], cur[i + 1]);
        ++swaps;
      }
    }
  }
  return {delta, swaps == 0 ? "identity" : "transpositions:" + std::to_string(swaps)};
}

}  // namespace pidpp
