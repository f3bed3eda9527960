#pragma once

#include "pidpp/matrix.hpp"
#include "pidpp/rank_fpt.hpp"
#include "pidpp/treedecomp.hpp"
#include "pidpp/treewidth_fpt.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace pidpp {

enum class Strategy { brute, rank, treewidth, automatic };

const char* to_string(Strategy s);
// Accepts brute, rank, treewidth, auto. Throws InvalidArgument.
Strategy parse_strategy(const std::string& name);

struct OracleLimits {
  std::size_t auto_brute_max_n = 16;
  std::size_t auto_rank_max = 6;
  int auto_width_max = 8;
  std::size_t brute_cap = 0;  // 0: brute_cap()
  RankOptions rank;
  TreewidthOptions treewidth;
};

// Exact Z_m with a strategy fixed by the first tuple it sees. Later tuples must have
// ranks and nonzero patterns dominated by that tuple (the cached decomposition is reused).
class NormalizerOracle {
 public:
  explicit NormalizerOracle(Strategy strategy = Strategy::automatic, OracleLimits limits = {});

  // Resolves `automatic` and prepares the strategy for tuples shaped like t.
  // Throws BudgetExceeded with guidance when no strategy applies.
  void configure(const MatrixTuple& t);
  bool configured() const { return resolved_.has_value(); }

  // Configures on first use.
  Rational z(const MatrixTuple& t);

  Strategy requested() const { return requested_; }
  // Resolved strategy; throws if not configured.
  Strategy strategy() const;
  // Heuristic width of the cached decomposition (treewidth strategy), -1 otherwise.
  int width() const { return width_; }
  // Largest rank found while configuring (rank strategy), 0 otherwise.
  std::size_t max_rank() const { return max_rank_; }
  std::uint64_t calls() const { return calls_; }
  const OracleLimits& limits() const { return limits_; }

 private:
  Strategy requested_;
  OracleLimits limits_;
  std::optional<Strategy> resolved_;
  std::optional<NiceTreeDecomposition> ntd_;
  int width_ = -1;
  std::size_t max_rank_ = 0;
  std::uint64_t calls_ = 0;
};

}  // namespace pidpp
