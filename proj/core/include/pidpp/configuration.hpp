#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace pidpp {

// Summary of how a partial bijection crosses a bag. All vertex lists are sorted.
// tau maps O1 \ F1 onto O2 \ F2 and is stored as (preimage, image) pairs sorted by preimage.
struct Configuration {
  std::vector<int> o1, o2, f1, f2;
  std::vector<std::pair<int, int>> tau;
  int nu = 0;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

std::string to_string(const Configuration& c);

// Every configuration over the bag exactly once, ordered by (O1, O2, F1, F2, tau, nu)
// with subsets enumerated by bitmask over the sorted bag.
std::vector<Configuration> enumerate_configurations(const std::vector<int>& bag);

// Bijection as (preimage, image) pairs.
using Bijection = std::vector<std::pair<int, int>>;

// Inversions of sigma under the ordering (earlier in `order` means smaller), mod 2.
int inversion_parity(const Bijection& sigma, const std::vector<int>& order);

// The unique configuration a bijection S ⊎ O1 -> S ⊎ O2 is consistent with, where the
// bag is the set of vertices of `order` outside `forgotten`.
Configuration configuration_of(const Bijection& sigma, const std::vector<int>& forgotten,
                               const std::vector<int>& order);

struct ParityDelta {
  int value = 0;
  std::string case_tag;
};

// Parity change of the inversion number of any bijection consistent with C when the
// ordering of V_t changes from `from` to `to`. Both orderings list the same vertices
// and share their first `forgotten_count` entries (V_t \ X_t). Evaluated by bubbling
// `from` into `to` one adjacent transposition at a time. Throws InvalidArgument otherwise.
ParityDelta reorder_delta(const Configuration& c, const std::vector<int>& from, const std::vector<int>& to,
                          std::size_t forgotten_count);

}  // namespace pidpp
