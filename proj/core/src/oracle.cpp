#include "pidpp/oracle.hpp"

#include "pidpp/brute.hpp"
#include "pidpp/errors.hpp"
#include "pidpp/linalg.hpp"

#include <algorithm>

namespace pidpp {

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::brute:
      return "brute";
    case Strategy::rank:
      return "rank";
    case Strategy::treewidth:
      return "treewidth";
    case Strategy::automatic:
      return "auto";
  }
  return "?";
}

Strategy parse_strategy(const std::string& name) {
  if (name == "brute") return Strategy::brute;
  if (name == "rank") return Strategy::rank;
  if (name == "treewidth") return Strategy::treewidth;
  if (name == "auto") return Strategy::automatic;
  throw InvalidArgument("unknown algorithm '" + name + "' (expected brute, rank, treewidth or auto)");
}

NormalizerOracle::NormalizerOracle(Strategy strategy, OracleLimits limits)
    : requested_(strategy), limits_(std::move(limits)) {}

namespace {

// Largest rank when every matrix is symmetric PSD, nullopt otherwise.
std::optional<std::size_t> psd_max_rank(const MatrixTuple& t) {
  std::size_t r = 0;
  for (const auto& a : t) {
    try {
      r = std::max(r, ldl_factor(a).rank);
    } catch (const NotPsdError&) {
      return std::nullopt;
    }
  }
  return r;
}

}  // namespace

void NormalizerOracle::configure(const MatrixTuple& t) {
  Strategy s = requested_;
  std::optional<NiceTreeDecomposition> ntd;
  if (s == Strategy::automatic) {
    const std::size_t brute_limit = std::min(limits_.auto_brute_max_n, limits_.brute_cap ? limits_.brute_cap : brute_cap());
    std::optional<std::size_t> r;
    if (t.n() <= brute_limit) {
      s = Strategy::brute;
    } else if ((r = psd_max_rank(t)) && *r <= limits_.auto_rank_max) {
      s = Strategy::rank;
    } else {
      ntd = make_nice(decompose(sparsity_union(t)));
      if (ntd->width() > limits_.auto_width_max) {
        throw BudgetExceeded("no algorithm applies: n = " + std::to_string(t.n()) + " exceeds " +
                             std::to_string(brute_limit) + ", " +
                             (r ? "max rank " + std::to_string(*r) + " exceeds " + std::to_string(limits_.auto_rank_max)
                                : std::string("a matrix is not symmetric PSD")) +
                             ", heuristic width " + std::to_string(ntd->width()) + " exceeds " +
                             std::to_string(limits_.auto_width_max) +
                             "; choose an algorithm explicitly to override the limits");
      }
      s = Strategy::treewidth;
    }
  }
  if (s == Strategy::rank) {
    auto r = psd_max_rank(t);
    if (!r) throw NotPsdError("rank algorithm needs symmetric PSD matrices");
    max_rank_ = *r;
  }
  if (s == Strategy::treewidth) {
    if (!ntd) ntd = make_nice(decompose(sparsity_union(t)));
    width_ = ntd->width();
    ntd_ = std::move(ntd);
  }
  resolved_ = s;
}

Strategy NormalizerOracle::strategy() const {
  if (!resolved_) throw InvalidArgument("oracle not configured");
  return *resolved_;
}

Rational NormalizerOracle::z(const MatrixTuple& t) {
  if (!resolved_) configure(t);
  ++calls_;
  switch (*resolved_) {
    case Strategy::brute:
      return z_m_brute(t, limits_.brute_cap ? limits_.brute_cap : brute_cap());
    case Strategy::rank:
      return zm_rank(t, limits_.rank);
    case Strategy::treewidth:
      return zm_treewidth(t, *ntd_, limits_.treewidth);
    case Strategy::automatic:
      break;
  }
  throw InvalidArgument("oracle not configured");
}

}  // namespace pidpp
