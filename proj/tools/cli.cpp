#include "cli.hpp"

#include "pidpp/brute.hpp"
#include "pidpp/errors.hpp"
#include "pidpp/fixtures.hpp"
#include "pidpp/inference.hpp"
#include "pidpp/linalg.hpp"
#include "pidpp/matrix_io.hpp"
#include "pidpp/oracle.hpp"
#include "pidpp/treedecomp.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace pidpp::cli {

namespace {

using json = nlohmann::ordered_json;

struct Settings {
  bool json = false;
  std::string algo = "auto";
  std::uint64_t rank_budget = RankOptions{}.budget;
  std::size_t max_keys = TreewidthOptions{}.max_keys;
  std::vector<std::string> inputs;
  std::optional<std::size_t> size;
  std::string exponent;
  unsigned long long seed = kDefaultSeed;
  std::size_t count = 1;
  std::size_t trials = 1;
  bool verify = false;
  // gen
  std::string out_prefix;
  std::string groups;
  std::size_t gen_n = 10;
  std::size_t bandwidth = 2;
  std::optional<std::size_t> rank_cap;
  // tw
  bool exact = false;
  bool print = false;
  bool nice = false;
  std::string check;
};

// Errors that stem from the command line or input files rather than the computation.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

MatrixTuple load_tuple(const Settings& s) {
  if (s.inputs.empty()) throw UsageError("at least one matrix file is required");
  std::vector<Matrix> ms;
  for (const auto& path : s.inputs) ms.push_back(parse_matrix(read_file(path)));
  return MatrixTuple(std::move(ms));
}

OracleLimits limits(const Settings& s) {
  OracleLimits l;
  l.rank.budget = s.rank_budget;
  l.treewidth.max_keys = s.max_keys;
  return l;
}

std::string subset_text(const std::vector<int>& subset) {
  std::string text = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) text += (i ? "," : "") + std::to_string(subset[i]);
  return text + "}";
}

json oracle_meta(const NormalizerOracle& o) {
  json meta;
  meta["strategy"] = to_string(o.strategy());
  if (o.width() >= 0) meta["width"] = o.width();
  if (o.strategy() == Strategy::rank) meta["max_rank"] = o.max_rank();
  meta["oracle_calls"] = o.calls();
  return meta;
}

Rational parse_exponent(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const ParseError&) {
    throw UsageError("invalid exponent '" + text + "'");
  }
}

json edpp_json(const EdppEstimate& e) {
  json j;
  j["lo"] = to_string(e.interval.lo);
  j["hi"] = to_string(e.interval.hi);
  j["exact"] = e.exact;
  j["branch"] = e.branch;
  j["lambda"] = to_string(e.lambda);
  j["lambda_star"] = to_string(e.lambda_star);
  j["z_floor"] = to_string(e.z_floor);
  j["z_ceil"] = to_string(e.z_ceil);
  if (e.bits) j["bits"] = e.bits;
  return j;
}

std::string interval_text(const RationalInterval& r) {
  return r.exact() ? to_string(r.lo) : "[" + to_string(r.lo) + ", " + to_string(r.hi) + "]";
}

json cmd_normalize(const Settings& s, std::ostream& out) {
  MatrixTuple t = load_tuple(s);
  json j;
  j["n"] = t.n();
  j["m"] = t.m();
  if (!s.exponent.empty()) {
    if (t.m() != 1) throw UsageError("--exponent takes a single matrix");
    if (s.size) throw UsageError("--exponent and --size are exclusive");
    EdppEstimate e = edpp_fractional(t[0], parse_exponent(s.exponent), limits(s), parse_strategy(s.algo));
    out << interval_text(e.interval) << '\n';
    j["exponent"] = s.exponent;
    j["result"] = edpp_json(e);
    return j;
  }
  NormalizerOracle oracle(parse_strategy(s.algo), limits(s));
  Rational value;
  if (s.size) {
    if (*s.size > t.n()) {
      value = 0;
      oracle.configure(t);
    } else {
      value = z_mk_all(t, oracle)[*s.size];
    }
    j["size"] = *s.size;
  } else {
    value = oracle.z(t);
  }
  out << to_string(value) << '\n';
  j["algorithm"] = oracle_meta(oracle);
  j["value"] = to_string(value);
  return j;
}

json cmd_sample(const Settings& s, std::ostream& out) {
  MatrixTuple t = load_tuple(s);
  NormalizerOracle oracle(parse_strategy(s.algo), limits(s));
  Sampler sampler(t, oracle);
  std::mt19937_64 rng(s.seed);
  json draws = json::array();
  for (std::size_t k = 0; k < s.count; ++k) {
    std::vector<int> subset = sampler.sample(rng);
    out << subset_text(subset) << '\n';
    draws.push_back(subset);
  }
  json j;
  j["n"] = t.n();
  j["m"] = t.m();
  j["seed"] = s.seed;
  j["algorithm"] = oracle_meta(oracle);
  j["samples"] = draws;
  return j;
}

json cmd_map(const Settings& s, std::ostream& out) {
  MatrixTuple t = load_tuple(s);
  if (t.m() != 1) throw UsageError("map takes a single matrix");
  MapEstimate e = map_inference(t[0], s.seed, s.trials, s.verify, limits(s), parse_strategy(s.algo));
  out << subset_text(e.subset) << ' ' << to_string(e.value) << '\n';
  json j;
  j["n"] = t.n();
  j["seed"] = s.seed;
  j["subset"] = e.subset;
  j["value"] = to_string(e.value);
  j["exponent"] = e.certificate.exponent;
  j["draws"] = e.certificate.draws;
  if (e.certificate.optimum) {
    j["optimum"] = to_string(*e.certificate.optimum);
    j["within_bound"] = *e.certificate.within_bound;
    out << "optimum " << to_string(*e.certificate.optimum) << " within_bound "
        << (*e.certificate.within_bound ? "yes" : "no") << '\n';
  }
  return j;
}

json cmd_edpp(const Settings& s, std::ostream& out) {
  MatrixTuple t = load_tuple(s);
  if (t.m() != 1) throw UsageError("edpp takes a single matrix");
  if (s.exponent.empty()) throw UsageError("edpp needs --exponent");
  EdppEstimate e = edpp_fractional(t[0], parse_exponent(s.exponent), limits(s), parse_strategy(s.algo));
  out << interval_text(e.interval) << '\n';
  json j;
  j["n"] = t.n();
  j["exponent"] = s.exponent;
  j["result"] = edpp_json(e);
  return j;
}

void emit_matrices(const Settings& s, const std::vector<std::pair<std::string, Matrix>>& named, std::ostream& out,
                   json& j) {
  j["matrices"] = json::array();
  for (std::size_t i = 0; i < named.size(); ++i) {
    const auto& [name, m] = named[i];
    if (!s.out_prefix.empty()) {
      const std::string path = s.out_prefix + "_" + name + ".mat";
      std::ofstream f(path);
      if (!f) throw UsageError("cannot write " + path);
      f << format_matrix_text(m);
      j["matrices"].push_back(path);
      if (!s.json) out << path << '\n';
    } else {
      if (!s.json) out << (i ? "\n" : "") << "# " << name << '\n' << format_matrix_text(m);
      j["matrices"].push_back(json::parse(format_matrix_json(m)));
    }
  }
}

std::vector<std::vector<int>> parse_groups(const std::string& text) {
  std::vector<std::vector<int>> groups;
  std::stringstream whole(text);
  std::string part;
  while (std::getline(whole, part, ';')) {
    std::vector<int> g;
    std::stringstream ps(part);
    std::string tok;
    while (std::getline(ps, tok, ',')) {
      try {
        std::size_t used = 0;
        g.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw UsageError("invalid group member '" + tok + "'");
      }
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

json cmd_gen(const std::string& kind, const Settings& s, std::ostream& out) {
  json j;
  j["kind"] = kind;
  std::vector<std::pair<std::string, Matrix>> named;
  if (kind == "matching") {
    if (s.inputs.size() != 1) throw UsageError("gen matching takes one bipartite graph file");
    auto [a, b] = matching_matrices(parse_bipartite_graph(read_file(s.inputs[0])));
    named = {{"A", a}, {"B", b}};
  } else if (kind == "hampath") {
    if (s.inputs.size() != 1) throw UsageError("gen hampath takes one directed graph file");
    MatrixTuple t = hamiltonian_gadget(parse_directed_graph(read_file(s.inputs[0])));
    named = {{"A", t[0]}, {"B", t[1]}, {"C", t[2]}};
  } else if (kind == "partition") {
    if (s.groups.empty()) throw UsageError("gen partition needs --groups, e.g. 0,1;2,3");
    auto groups = parse_groups(s.groups);
    std::size_t n = 0;
    for (const auto& g : groups) n += g.size();
    named = {{"B", partition_matrix(groups, n)}};
  } else if (kind == "banded") {
    named = {{"A", banded_random(s.gen_n, s.bandwidth, s.rank_cap, s.seed)}};
    j["seed"] = s.seed;
  } else {
    throw UsageError("unknown generator '" + kind + "'");
  }
  emit_matrices(s, named, out, j);
  return j;
}

json cmd_tw(const Settings& s, std::ostream& out) {
  MatrixTuple t = load_tuple(s);
  const SparsityGraph g = sparsity_union(t);
  json j;
  j["n"] = t.n();
  j["edges"] = g.edge_count();
  if (!s.check.empty()) {
    TreeDecomposition td = parse_decomposition(read_file(s.check), t.n());
    ValidationReport r = validate(g, td);
    out << (r.ok ? "valid" : "invalid: " + r.violation + " (" + r.detail + ")") << '\n';
    if (r.ok) out << "width " << td.width() << '\n';
    j["valid"] = r.ok;
    if (!r.ok) {
      j["violation"] = r.violation;
      j["detail"] = r.detail;
    } else {
      j["width"] = td.width();
    }
    return j;
  }
  TreeDecomposition td = decompose(g, s.exact ? DecomposeMode::exact : DecomposeMode::heuristic);
  NiceTreeDecomposition ntd = make_nice(td);
  out << "width " << td.width() << '\n' << "bags " << td.node_count() << '\n';
  out << "nice_nodes " << ntd.nodes.size() << '\n' << "joins " << ntd.join_count() << '\n';
  if (s.print) out << (s.nice ? format_decomposition(ntd) : format_decomposition(td));
  j["mode"] = s.exact ? "exact" : "heuristic";
  j["width"] = td.width();
  j["bags"] = td.node_count();
  j["nice_nodes"] = ntd.nodes.size();
  j["joins"] = ntd.join_count();
  if (s.print) j["decomposition"] = s.nice ? format_decomposition(ntd) : format_decomposition(td);
  return j;
}

void add_common(CLI::App* sub, Settings& s, bool with_algo) {
  if (with_algo) {
    sub->add_option("--algo", s.algo, "brute, rank, treewidth or auto")
        ->check(CLI::IsMember({"brute", "rank", "treewidth", "auto"}));
    sub->add_option("--rank-budget", s.rank_budget, "limit on inner programs of the rank algorithm");
    sub->add_option("--max-keys", s.max_keys, "limit on live keys per treewidth table");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Exact inference for products of determinantal point processes", "pidpp"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", s.json, "machine-readable output");

  auto* normalize = app.add_subcommand("normalize", "normalizing constant Z_m, Z_{m,k} or Z^p");
  add_common(normalize, s, true);
  normalize->add_option("files", s.inputs, "matrix files, one per factor")->required();
  normalize->add_option("--size", s.size, "fixed subset size k");
  normalize->add_option("--exponent", s.exponent, "E-DPP exponent p (single matrix)");

  auto* sample = app.add_subcommand("sample", "exact samples");
  add_common(sample, s, true);
  sample->add_option("files", s.inputs, "matrix files, one per factor")->required();
  sample->add_option("--count", s.count, "number of draws");
  sample->add_option("--seed", s.seed, "generator seed");

  auto* map = app.add_subcommand("map", "approximate MAP by E-DPP sampling");
  add_common(map, s, true);
  map->add_option("file", s.inputs, "PSD matrix file")->required();
  map->add_option("--seed", s.seed, "generator seed");
  map->add_option("--trials", s.trials, "number of draws (best kept)");
  map->add_flag("--verify", s.verify, "compare with the exhaustive optimum");

  auto* edpp = app.add_subcommand("edpp", "E-DPP normalizer for a fractional exponent");
  add_common(edpp, s, true);
  edpp->add_option("file", s.inputs, "matrix file")->required();
  edpp->add_option("--exponent", s.exponent, "exponent p > 1")->required();

  auto* gen = app.add_subcommand("gen", "fixture generators");
  std::string gen_kind;
  gen->add_option("kind", gen_kind, "matching, hampath, partition or banded")
      ->required()
      ->check(CLI::IsMember({"matching", "hampath", "partition", "banded"}));
  gen->add_option("graph", s.inputs, "graph file (matching, hampath)");
  gen->add_option("--out", s.out_prefix, "write PREFIX_<name>.mat instead of stdout");
  gen->add_option("--groups", s.groups, "partition groups, e.g. 0,1;2,3");
  gen->add_option("--n", s.gen_n, "order of the banded matrix");
  gen->add_option("--bandwidth", s.bandwidth, "bandwidth of the banded matrix");
  gen->add_option("--rank", s.rank_cap, "rank cap of the banded matrix");
  gen->add_option("--seed", s.seed, "generator seed");

  auto* tw = app.add_subcommand("tw", "tree decomposition of the sparsity union");
  tw->add_option("files", s.inputs, "matrix files")->required();
  tw->add_flag("--exact", s.exact, "optimal decomposition (n <= 20)");
  tw->add_flag("--print", s.print, "print the decomposition");
  tw->add_flag("--nice", s.nice, "print the nice decomposition");
  tw->add_option("--check", s.check, "validate a decomposition file instead");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  std::ostringstream text;
  json result;
  std::string command;
  try {
    if (normalize->parsed()) {
      command = "normalize";
      result = cmd_normalize(s, text);
    } else if (sample->parsed()) {
      command = "sample";
      result = cmd_sample(s, text);
    } else if (map->parsed()) {
      command = "map";
      result = cmd_map(s, text);
    } else if (edpp->parsed()) {
      command = "edpp";
      result = cmd_edpp(s, text);
    } else if (gen->parsed()) {
      command = "gen";
      result = cmd_gen(gen_kind, s, text);
    } else {
      command = "tw";
      result = cmd_tw(s, text);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "computation error: " << e.what() << '\n';
    return kExitComputation;
  }
  if (s.json) {
    json j;
    j["command"] = command;
    for (auto& [key, value] : result.items()) j[key] = value;
    j["wall_time_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out << j.dump(2) << '\n';
  } else {
    out << text.str();
  }
  return kExitOk;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace pidpp::cli
