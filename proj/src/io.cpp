#include "maxcover/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "maxcover/errors.hpp"
#include "maxcover/oracle.hpp"
#include "maxcover/random.hpp"
#include "maxcover/solvers.hpp"
#include "maxcover/sparse_pds.hpp"
#include "maxcover/triangle.hpp"

namespace mkc {

namespace {

// Splits text into (line number, tokens) with comments and blank lines dropped.
std::vector<std::pair<int, std::vector<std::string>>> tokenize(const std::string& text) {
  std::vector<std::pair<int, std::vector<std::string>>> out;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (!toks.empty()) out.emplace_back(no, std::move(toks));
  }
  return out;
}

template <class T>
T to_number(const std::string& s, int line, const char* what) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(line, std::string("bad ") + what + " '" + s + "'");
  return v;
}

std::string join(const std::vector<Id>& xs) {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(xs[i]);
  }
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

// Ordered key/value report printed as `key=value` (structured) or `key: value`.
class Report {
 public:
  template <class T>
  void add(const std::string& k, const T& v) {
    std::ostringstream ss;
    ss << v;
    rows_.emplace_back(k, ss.str());
  }
  void print(std::ostream& out, bool structured) const {
    for (const auto& [k, v] : rows_) out << k << (structured ? "=" : ": ") << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

void add_result(Report& r, const SolveResult& res) {
  r.add("value", res.value);
  r.add("witness", join(res.witness));
  r.add("regime", res.stats.regime.empty() ? "-" : res.stats.regime);
  r.add("unions", res.stats.unions);
  r.add("triangles", res.stats.triangles);
  r.add("bundles", res.stats.bundles);
  r.add("ops", res.stats.ops);
  r.add("depth", res.stats.depth);
}

const std::vector<std::string> kCoverAlgos = {"auto", "oracle", "mm", "large-universe", "intermediate",
                                              "small-universe"};
const std::vector<std::string> kAllAlgos = {"auto",   "oracle",     "mm",         "large-universe", "intermediate",
                                            "small-universe", "sparse", "pds2-table", "pds2-sparse"};

bool is_cover_algo(const std::string& a) {
  return std::find(kCoverAlgos.begin(), kCoverAlgos.end(), a) != kCoverAlgos.end();
}

SolveResult run_cover_algo(const std::string& algo, const CoverInstance& inst, int k, const SolverOptions& opt) {
  if (algo == "auto") return max_k_cover(inst, k, opt);
  if (algo == "oracle") return brute_force(inst, k);
  if (algo == "mm") return mm_baseline(inst, k, opt.budget);
  if (algo == "large-universe") return solve_large_universe(inst, k, opt);
  if (algo == "intermediate") return solve_intermediate(inst, k, opt);
  if (algo == "small-universe") return solve_small_universe(inst, k, opt);
  throw InputError("algorithm '" + algo + "' does not apply to set families");
}

SolveResult run_pds_algo(const std::string& algo, const PdsGraph& g, int k, const SolverOptions& opt) {
  if (algo == "auto" || algo == "sparse") return pds_sparse(g, k, opt);
  if (algo == "oracle") return brute_force_pds(g, k);
  if (algo == "pds2-table" || algo == "pds2-sparse") {
    if (k != 2) throw InputError(algo + " needs --k 2");
    return algo == "pds2-table" ? pds2_table(g) : pds2_sparse(g, opt.omega);
  }
  return run_cover_algo(algo, pds_to_cover(g), k, opt);
}

// Value, witness shape and witness coverage against the oracle value.
std::string check_against(const SolveResult& r, std::int64_t want, int k, int n, std::int64_t witness_value) {
  std::ostringstream why;
  if (r.value != want) why << "value " << r.value << " != oracle " << want;
  else if (static_cast<int>(r.witness.size()) > k) why << "witness larger than k";
  else if (std::adjacent_find(r.witness.begin(), r.witness.end()) != r.witness.end()) why << "repeated witness id";
  else if (!r.witness.empty() && (r.witness.front() < 0 || r.witness.back() >= n)) why << "witness id out of range";
  else if (witness_value != r.value) why << "witness covers " << witness_value << ", reported " << r.value;
  return why.str();
}

struct SuiteResult {
  std::string name;
  int trials = 0;
  int mismatches = 0;
  std::vector<std::string> notes;  // first few mismatch descriptions, in trial order
};

template <class Trial>
SuiteResult run_suite(const std::string& name, int trials, Trial&& trial) {
  std::vector<std::string> fails(trials);
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < trials; ++t) {
    try {
      fails[t] = trial(t);
    } catch (const ResourceError& e) {
      fails[t] = std::string("resource: ") + e.what();
    } catch (const std::exception& e) {
      fails[t] = std::string("exception: ") + e.what();
    }
  }
  SuiteResult r;
  r.name = name;
  r.trials = trials;
  for (int t = 0; t < trials; ++t) {
    if (fails[t].empty()) continue;
    ++r.mismatches;
    if (r.notes.size() < 5) r.notes.push_back("trial " + std::to_string(t) + ": " + fails[t]);
  }
  return r;
}

Rng trial_rng(std::uint64_t seed, int suite, int t) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(suite), static_cast<std::uint32_t>(t)};
  return Rng(seq);
}

int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

struct Env {
  double omega = kDefaultOmega;
  std::int64_t budget = kDefaultBudget;
};

Env read_env() {
  Env e;
  if (const char* s = std::getenv("MKC_OMEGA")) {
    char* end = nullptr;
    e.omega = std::strtod(s, &end);
    if (end == s || *end) throw InputError("MKC_OMEGA is not a number");
  }
  if (const char* s = std::getenv("MKC_BUDGET")) {
    char* end = nullptr;
    e.budget = std::strtoll(s, &end, 10);
    if (end == s || *end) throw InputError("MKC_BUDGET is not an integer");
  }
  return e;
}

SolverOptions make_options(double omega, std::int64_t budget) {
  if (!(omega >= 2.0 && omega <= 3.0)) throw InputError("omega must lie in [2, 3]");
  if (budget <= 0) throw InputError("budget must be positive");
  SolverOptions o;
  o.omega = omega;
  o.budget = budget;
  return o;
}

}  // namespace

CoverInstance parse_set_family(const std::string& text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "missing 'cover <n> <u>' header");
  const auto& [hl, head] = lines.front();
  if (head.size() != 3 || head[0] != "cover") throw ParseError(hl, "expected 'cover <n> <u>'");
  const int n = to_number<int>(head[1], hl, "set count");
  const int u = to_number<int>(head[2], hl, "universe size");
  if (n < 0 || u < 0) throw ParseError(hl, "negative size");
  std::vector<std::vector<Id>> sets(n);
  std::vector<char> seen(n, 0);
  for (size_t li = 1; li < lines.size(); ++li) {
    const auto& [no, toks] = lines[li];
    const std::string& tag = toks[0];
    if (tag.size() < 3 || tag.front() != 'S' || tag.back() != ':') throw ParseError(no, "expected 'S<i>:'");
    const int i = to_number<int>(tag.substr(1, tag.size() - 2), no, "set index");
    if (i < 0 || i >= n) throw ParseError(no, "set index " + std::to_string(i) + " out of range");
    if (seen[i]) throw ParseError(no, "set " + std::to_string(i) + " listed twice");
    seen[i] = 1;
    for (size_t t = 1; t < toks.size(); ++t) {
      const Id y = to_number<Id>(toks[t], no, "element id");
      if (y < 0 || y >= u) throw ParseError(no, "element " + toks[t] + " out of range");
      sets[i].push_back(y);
    }
    std::vector<Id> sorted = sets[i];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ParseError(no, "duplicate element in set " + std::to_string(i));
  }
  return CoverInstance::from_sets(u, sets);
}

PdsGraph parse_edge_list(const std::string& text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "missing 'graph <n>' header");
  const auto& [hl, head] = lines.front();
  if (head.size() != 2 || head[0] != "graph") throw ParseError(hl, "expected 'graph <n>'");
  const int n = to_number<int>(head[1], hl, "vertex count");
  if (n < 0) throw ParseError(hl, "negative size");
  std::vector<std::pair<Id, Id>> edges;
  for (size_t li = 1; li < lines.size(); ++li) {
    const auto& [no, toks] = lines[li];
    if (toks.size() != 2) throw ParseError(no, "expected 'u v'");
    const Id a = to_number<Id>(toks[0], no, "vertex id");
    const Id b = to_number<Id>(toks[1], no, "vertex id");
    if (a < 0 || a >= n || b < 0 || b >= n) throw ParseError(no, "vertex id out of range");
    if (a == b) throw ParseError(no, "self-loop at " + toks[0]);
    edges.emplace_back(a, b);
  }
  return PdsGraph::from_edges(n, edges);
}

std::string emit_set_family(const CoverInstance& inst, const std::string& comment) {
  std::ostringstream out;
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "cover " << inst.n() << ' ' << inst.u() << '\n';
  for (Id i = 0; i < inst.n(); ++i) {
    out << 'S' << i << ':';
    for (Id y : inst.set(i)) out << ' ' << y;
    out << '\n';
  }
  return out.str();
}

std::string emit_edge_list(const PdsGraph& g, const std::string& comment) {
  std::ostringstream out;
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "graph " << g.n() << '\n';
  for (const auto& [a, b] : g.edge_list()) out << a << ' ' << b << '\n';
  return out.str();
}

std::string emit_certificate(const KhOvInstance& inst, const ReductionOutput& r, std::uint64_t seed) {
  std::ostringstream out;
  out << "# reduction certificate\n";
  out << "kind=" << r.kind << "\nseed=" << seed << "\nk=" << r.k << "\nh=" << r.h << "\nsign=" << r.sign
      << "\nt=" << r.t << "\nsize=" << inst.size << "\ndim=" << inst.d << "\nbase_dim=" << inst.base_dim << '\n';
  const auto& v = r.inventory;
  out << "inventory.s=" << v.s << "\ninventory.group_size=" << v.group_size << "\ninventory.d_prime=" << v.d_prime
      << "\ninventory.d_blocks=" << v.d_blocks << "\ninventory.p_sets=" << v.p_sets
      << "\ninventory.p_size=" << v.p_size << "\ninventory.x_count=" << v.x_count
      << "\ninventory.y_count=" << v.y_count << "\ninventory.padding=" << v.padding
      << "\ninventory.edge_bound=" << v.edge_bound << '\n';
  for (const auto& a : inst.active) {
    out << "active";
    for (int i : a) out << ' ' << i;
    out << '\n';
  }
  for (int i = 0; i < inst.k; ++i)
    for (int x = 0; x < inst.size; ++x) {
      out << "vector " << i << ' ' << x << ' ';
      if (inst.d == 0) out << '-';
      for (auto e : inst.vectors[i][x]) out << static_cast<char>('0' + e);
      out << '\n';
    }
  for (int i = 0; i < r.k; ++i)
    for (size_t x = 0; x < r.vertex_of[i].size(); ++x) out << "map " << i << ' ' << x << ' ' << r.vertex_of[i][x] << '\n';
  return out.str();
}

Certificate parse_certificate(const std::string& text) {
  Certificate c;
  std::map<std::string, std::pair<int, std::string>> kv;
  std::vector<std::vector<int>> active;
  struct Row {
    int line, fam, idx;
    std::string val;
  };
  std::vector<Row> vec_rows, map_rows;
  for (const auto& [no, toks] : tokenize(text)) {
    if (toks[0] == "active") {
      std::vector<int> a;
      for (size_t t = 1; t < toks.size(); ++t) a.push_back(to_number<int>(toks[t], no, "active index"));
      active.push_back(std::move(a));
    } else if (toks[0] == "vector" || toks[0] == "map") {
      if (toks.size() != 4) throw ParseError(no, "expected '" + toks[0] + " <family> <index> <value>'");
      Row r{no, to_number<int>(toks[1], no, "family"), to_number<int>(toks[2], no, "index"), toks[3]};
      (toks[0] == "vector" ? vec_rows : map_rows).push_back(std::move(r));
    } else {
      if (toks.size() != 1) throw ParseError(no, "expected key=value");
      const auto eq = toks[0].find('=');
      if (eq == std::string::npos) throw ParseError(no, "expected key=value");
      kv[toks[0].substr(0, eq)] = {no, toks[0].substr(eq + 1)};
    }
  }
  auto need = [&](const std::string& key) -> const std::pair<int, std::string>& {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError(0, "certificate lacks '" + key + "'");
    return it->second;
  };
  c.kind = need("kind").second;
  if (c.kind != "cover" && c.kind != "pds") throw ParseError(need("kind").first, "kind must be cover or pds");
  c.k = to_number<int>(need("k").second, need("k").first, "k");
  c.h = to_number<int>(need("h").second, need("h").first, "h");
  c.sign = to_number<int>(need("sign").second, need("sign").first, "sign");
  c.t = to_number<std::int64_t>(need("t").second, need("t").first, "t");
  c.seed = to_number<std::uint64_t>(need("seed").second, need("seed").first, "seed");
  const int size = to_number<int>(need("size").second, need("size").first, "size");
  const int dim = to_number<int>(need("dim").second, need("dim").first, "dim");
  const int base = to_number<int>(need("base_dim").second, need("base_dim").first, "base_dim");
  if (c.k < 1 || size < 0 || dim < 0 || (c.sign != 1 && c.sign != -1)) throw ParseError(0, "bad certificate header");
  if (static_cast<int>(active.size()) != dim) throw ParseError(0, "active line count differs from dim");

  std::vector<std::vector<std::vector<std::uint8_t>>> vecs(c.k, std::vector<std::vector<std::uint8_t>>(size));
  std::vector<std::vector<char>> got(c.k, std::vector<char>(size, 0));
  for (const auto& r : vec_rows) {
    if (r.fam < 0 || r.fam >= c.k || r.idx < 0 || r.idx >= size) throw ParseError(r.line, "vector index out of range");
    if (got[r.fam][r.idx]) throw ParseError(r.line, "vector listed twice");
    got[r.fam][r.idx] = 1;
    const std::string bits = r.val == "-" ? "" : r.val;
    if (static_cast<int>(bits.size()) != dim) throw ParseError(r.line, "vector length differs from dim");
    for (char ch : bits) {
      if (ch != '0' && ch != '1') throw ParseError(r.line, "vector entries must be 0 or 1");
      vecs[r.fam][r.idx].push_back(static_cast<std::uint8_t>(ch - '0'));
    }
  }
  for (auto& g : got)
    for (char x : g)
      if (!x) throw ParseError(0, "certificate misses a vector");
  c.vertex_of.assign(c.k, std::vector<Id>(size, -1));
  for (const auto& r : map_rows) {
    if (r.fam < 0 || r.fam >= c.k || r.idx < 0 || r.idx >= size) throw ParseError(r.line, "map index out of range");
    c.vertex_of[r.fam][r.idx] = to_number<Id>(r.val, r.line, "vertex id");
  }
  for (auto& f : c.vertex_of)
    for (Id x : f)
      if (x < 0) throw ParseError(0, "certificate misses a mapping");
  c.source = KhOvInstance::make(c.k, c.h, std::move(vecs), std::move(active));
  c.source.base_dim = base;
  return c;
}

namespace {

struct Cli {
  Cli(std::ostream& o, std::ostream& e) : out(o), err(e) {}
  std::ostream& out;
  std::ostream& err;
  Env env;
  int k = 2;
  std::string algo = "auto";
  double omega = kDefaultOmega;
  std::int64_t budget = kDefaultBudget;
  std::string format = "human";
  std::string file;

  bool structured() const { return format == "structured"; }
};

void add_solver_flags(CLI::App* sub, Cli& c, const std::vector<std::string>& algos) {
  sub->add_option("--k", c.k, "solution size")->check(CLI::PositiveNumber);
  sub->add_option("--algo", c.algo, "algorithm")->check(CLI::IsMember(algos));
  sub->add_option("--omega", c.omega, "matrix multiplication exponent (tuning only)");
  sub->add_option("--budget", c.budget, "memory budget in matrix entries");
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"human", "structured"}));
}

int cmd_solve(Cli& c, bool graph) {
  const auto opt = make_options(c.omega, c.budget);
  const std::string text = read_file(c.file);
  Report r;
  r.add("command", graph ? "solve-pds" : "solve-cover");
  r.add("algo", c.algo);
  r.add("k", c.k);
  SolveResult res;
  if (graph) {
    const auto g = parse_edge_list(text);
    r.add("n", g.n());
    r.add("m", g.m());
    r.add("max_degree", g.max_degree());
    res = run_pds_algo(c.algo, g, c.k, opt);
  } else {
    const auto inst = parse_set_family(text);
    r.add("n", inst.n());
    r.add("u", inst.u());
    r.add("max_set_size", inst.max_set_size());
    r.add("max_frequency", inst.max_frequency());
    res = run_cover_algo(c.algo, inst, c.k, opt);
  }
  add_result(r, res);
  r.print(c.out, c.structured());
  return kExitOk;
}

struct VerifyArgs {
  int k = 0;
  int trials = 100;
  int n = 12;
  int u = 12;
  int pds2_n = 100;
  std::uint64_t seed = 1;
};

int cmd_verify(Cli& c, const VerifyArgs& v) {
  const auto opt = make_options(c.omega, c.budget);
  if (v.trials < 0 || v.n < 2 || v.u < 1 || v.pds2_n < 2) throw InputError("infeasible verify sizes");
  auto k_of = [&](int t) { return v.k > 0 ? v.k : 2 + t % 3; };
  std::vector<SuiteResult> suites;

  const bool cover_suite = c.algo == "auto" || c.algo == "oracle" || (is_cover_algo(c.algo));
  const bool pds_suite = c.algo == "auto" || c.algo == "oracle" || c.algo == "sparse";
  const bool pds2_suite = (c.algo == "auto" && (v.k == 0 || v.k == 2)) || c.algo == "pds2-table" || c.algo == "pds2-sparse";
  if ((c.algo == "pds2-table" || c.algo == "pds2-sparse") && v.k != 0 && v.k != 2)
    throw InputError(c.algo + " needs --k 2");

  if (cover_suite) {
    std::vector<std::string> algos;
    if (c.algo == "auto") algos = {"auto", "large-universe", "intermediate", "small-universe", "mm"};
    else algos = {c.algo};
    suites.push_back(run_suite("cover", v.trials, [&](int t) -> std::string {
      Rng rng = trial_rng(v.seed, 1, t);
      const int n = pick(rng, 2, v.n), u = pick(rng, 1, v.u), k = k_of(t);
      const auto inst = random_cover(rng, n, u, 0.1 + 0.1 * pick(rng, 0, 5));
      const auto want = brute_force_serial(inst, k).value;
      for (const auto& a : algos) {
        const auto res = a == "oracle" ? brute_force(inst, k) : run_cover_algo(a, inst, k, opt);
        auto why = check_against(res, want, k, inst.n(), coverage_value(inst, res.witness));
        if (!why.empty()) return a + ": " + why;
      }
      return {};
    }));
  }
  if (c.algo == "auto") {
    // Triangle search against the unpruned scan: weight and tie-broken index.
    suites.push_back(run_suite("triangle", v.trials, [&](int t) -> std::string {
      Rng rng = trial_rng(v.seed, 4, t);
      const int n = pick(rng, 1, v.n), u = pick(rng, 1, v.u);
      const auto inst = random_cover(rng, n, u, 0.1 + 0.1 * pick(rng, 0, 5));
      const int k = pick(rng, 1, std::min(n, 6));
      std::vector<char> mask(u);
      for (auto& m : mask) m = pick(rng, 0, 3) != 0;
      std::vector<Id> xs(n);
      std::iota(xs.begin(), xs.end(), Id{0});
      const auto g = build_tripartite(inst, xs, mask, k, opt.budget);
      const auto want = max_weight_triangle_exhaustive(g);
      for (const auto& got : {max_weight_triangle(g), max_weight_triangle_serial(g)}) {
        std::ostringstream why;
        if (got.weight != want.weight) why << "weight " << got.weight << " != reference " << want.weight;
        else if (got.index != want.index) why << "tie-break picked a non-minimal index";
        if (!why.str().empty()) return why.str();
      }
      return {};
    }));
  }
  if (pds_suite) {
    std::vector<std::string> algos;
    if (c.algo == "auto") algos = {"dispatch", "sparse"};
    else algos = {c.algo};
    suites.push_back(run_suite("pds", v.trials, [&](int t) -> std::string {
      Rng rng = trial_rng(v.seed, 2, t);
      const int n = pick(rng, 2, v.n), k = k_of(t);
      const auto g = random_graph(rng, n, 0.1 + 0.1 * pick(rng, 0, 5));
      const auto want = brute_force_pds(g, k).value;
      for (const auto& a : algos) {
        SolveResult res;
        if (a == "dispatch") res = partial_k_dominating_set(g, k, opt);
        else if (a == "oracle") res = brute_force(pds_to_cover(g), k);
        else res = run_pds_algo(a, g, k, opt);
        auto why = check_against(res, want, k, g.n(), closed_coverage(g, res.witness));
        if (!why.empty()) return a + ": " + why;
      }
      return {};
    }));
  }
  if (pds2_suite) {
    std::vector<std::string> algos;
    if (c.algo == "auto") algos = {"pds2-table", "pds2-sparse"};
    else algos = {c.algo};
    suites.push_back(run_suite("pds2", v.trials, [&](int t) -> std::string {
      Rng rng = trial_rng(v.seed, 3, t);
      const int n = pick(rng, 2, v.pds2_n);
      const int deg = pick(rng, 1, std::max(1, n / 4));
      const auto g = random_bounded_degree_graph(rng, n, deg);
      const auto want = brute_force_pds(g, 2).value;
      for (const auto& a : algos) {
        const auto res = run_pds_algo(a, g, 2, opt);
        auto why = check_against(res, want, 2, g.n(), closed_coverage(g, res.witness));
        if (!why.empty()) return a + ": " + why;
      }
      return {};
    }));
  }

  Report r;
  r.add("command", "verify");
  r.add("algo", c.algo);
  r.add("seed", v.seed);
  int bad = 0;
  for (const auto& s : suites) {
    r.add(s.name + ".trials", s.trials);
    r.add(s.name + ".mismatches", s.mismatches);
    bad += s.mismatches;
    for (const auto& note : s.notes) c.err << s.name << ' ' << note << '\n';
  }
  r.add("status", bad == 0 ? "pass" : "fail");
  r.print(c.out, c.structured());
  return bad == 0 ? kExitOk : kExitMismatch;
}

int cmd_verify_certificate(Cli& c, const std::string& inst_path, const std::string& cert_path) {
  const auto cert = parse_certificate(read_file(cert_path));
  const std::string text = read_file(inst_path);
  ReductionOutput out;
  out.kind = cert.kind;
  out.k = cert.k;
  out.h = cert.h;
  out.sign = cert.sign;
  out.t = cert.t;
  out.vertex_of = cert.vertex_of;
  int limit = 0;
  if (cert.kind == "pds") {
    out.graph = parse_edge_list(text);
    limit = out.graph.n();
  } else {
    out.cover = parse_set_family(text);
    limit = out.cover.n();
  }
  std::set<Id> ids;
  for (const auto& f : out.vertex_of)
    for (Id x : f) {
      if (x >= limit) throw InputError("certificate maps to a missing vertex");
      ids.insert(x);
    }
  if (static_cast<int>(ids.size()) != cert.k * cert.source.size) throw InputError("certificate mapping is not injective");
  const auto chk = verify_reduction(cert.source, out);
  Report r;
  r.add("command", "verify-certificate");
  r.add("kind", cert.kind);
  r.add("k", cert.k);
  r.add("h", cert.h);
  r.add("t", cert.t);
  r.add("sign", cert.sign);
  r.add("graph_opt", chk.graph_opt);
  r.add("khov_best", chk.khov_best);
  r.add("equivalence", chk.equivalence ? "yes" : "no");
  r.add("per_choice", chk.per_choice ? "yes" : "no");
  r.add("confined", chk.confined ? "yes" : "no");
  r.add("status", chk.ok() ? "pass" : "fail");
  r.print(c.out, c.structured());
  return chk.ok() ? kExitOk : kExitMismatch;
}

struct GenArgs {
  int n = 10;
  int u = 10;
  double p = 0.3;
  int max_degree = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string kind = "cover";
  int k = 2;
  int h = 2;
  int size = 3;
  int dim = 3;
  int multiplier = 1;
  int delta = 0;
  std::int64_t sparse_m = 0;
};

void emit_or_write(Cli& c, const std::string& path, const std::string& text) {
  if (path.empty()) c.out << text;
  else write_file(path, text);
}

int cmd_gen(Cli& c, const std::string& what, const GenArgs& a) {
  Rng rng(a.seed);
  if (what == "random-cover") {
    if (a.n < 0 || a.u < 0 || a.p < 0 || a.p > 1) throw InputError("infeasible sizes");
    const auto inst = random_cover(rng, a.n, a.u, a.p);
    std::ostringstream tag;
    tag << "random-cover seed=" << a.seed << " n=" << a.n << " u=" << a.u << " p=" << a.p;
    emit_or_write(c, a.out, emit_set_family(inst, tag.str()));
    return kExitOk;
  }
  if (what == "random-graph") {
    if (a.n < 0 || a.p < 0 || a.p > 1 || a.max_degree < 0) throw InputError("infeasible sizes");
    const auto g = a.max_degree > 0 ? random_bounded_degree_graph(rng, a.n, a.max_degree) : random_graph(rng, a.n, a.p);
    std::ostringstream tag;
    tag << "random-graph seed=" << a.seed << " n=" << a.n;
    if (a.max_degree > 0) tag << " max_degree=" << a.max_degree;
    else tag << " p=" << a.p;
    emit_or_write(c, a.out, emit_edge_list(g, tag.str()));
    return kExitOk;
  }
  // reduction
  if (a.out.empty()) throw InputError("gen reduction needs --out PREFIX");
  if (a.h < 2 || a.h > a.k || a.size < 1 || a.dim < 0) throw InputError("need 2 <= h <= k, size >= 1, dim >= 0");
  const auto raw = random_khov(rng, a.k, a.h, a.size, a.dim, a.p);
  const auto inst = regularize_full(raw);
  ReductionOutput red;
  ReductionParams params;
  params.multiplier = a.multiplier;
  params.delta_f = a.delta;
  if (a.kind == "cover") red = reduce_to_cover(inst, params);
  else if (a.sparse_m > 0) red = reduce_to_pds_sparse(inst, a.sparse_m, 0, a.multiplier);
  else red = reduce_to_pds(inst, params);
  std::ostringstream tag;
  tag << "reduction kind=" << a.kind << " seed=" << a.seed << " k=" << a.k << " h=" << a.h;
  const std::string inst_path = a.out + (a.kind == "cover" ? ".cover" : ".graph");
  write_file(inst_path, a.kind == "cover" ? emit_set_family(red.cover, tag.str()) : emit_edge_list(red.graph, tag.str()));
  write_file(a.out + ".cert", emit_certificate(inst, red, a.seed));
  Report r;
  r.add("command", "gen reduction");
  r.add("seed", a.seed);
  r.add("instance", inst_path);
  r.add("certificate", a.out + ".cert");
  r.add("t", red.t);
  r.add("sign", red.sign);
  r.add("x_count", red.inventory.x_count);
  r.add("y_count", red.inventory.y_count);
  r.print(c.out, c.structured());
  return kExitOk;
}

struct BenchArgs {
  int n = 10;
  int u = 10;
  double p = 0.3;
  int trials = 3;
  std::uint64_t seed = 1;
  bool graph = false;
};

int cmd_bench(Cli& c, const BenchArgs& b) {
  const auto opt = make_options(c.omega, c.budget);
  if (b.n < 1 || b.u < 1 || b.trials < 1 || b.p < 0 || b.p > 1) throw InputError("infeasible bench sizes");
  const bool graph = b.graph || !is_cover_algo(c.algo);
  Report r;
  r.add("command", "bench");
  r.add("algo", c.algo);
  r.add("k", c.k);
  r.add("seed", b.seed);
  r.add("input", graph ? "graph" : "cover");
  r.print(c.out, true);
  c.out << "trial,n,u,m,value,regime,unions,triangles,bundles,ops,seconds\n";
  Rng rng(b.seed);
  for (int t = 0; t < b.trials; ++t) {
    SolveResult res;
    int n = b.n, u = b.u;
    std::int64_t m = 0;
    const auto start = std::chrono::steady_clock::now();
    if (graph) {
      const auto g = random_graph(rng, b.n, b.p);
      u = g.n();
      m = g.m();
      res = run_pds_algo(c.algo, g, c.k, opt);
    } else {
      const auto inst = random_cover(rng, b.n, b.u, b.p);
      m = inst.m();
      res = run_cover_algo(c.algo, inst, c.k, opt);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.out << t << ',' << n << ',' << u << ',' << m << ',' << res.value << ','
          << (res.stats.regime.empty() ? "-" : res.stats.regime) << ',' << res.stats.unions << ','
          << res.stats.triangles << ',' << res.stats.bundles << ',' << res.stats.ops << ',' << secs << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli c(out, err);
  try {
    c.env = read_env();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  c.omega = c.env.omega;
  c.budget = c.env.budget;

  CLI::App app{"exact Max k-Cover and Partial k-Dominating Set solvers", "maxcover"};
  app.require_subcommand(1);

  auto* solve_cover = app.add_subcommand("solve-cover", "solve Max k-Cover on a set family file");
  add_solver_flags(solve_cover, c, kCoverAlgos);
  solve_cover->add_option("file", c.file, "set family")->required();
  auto* solve_pds = app.add_subcommand("solve-pds", "solve Partial k-Dominating Set on an edge list");
  add_solver_flags(solve_pds, c, kAllAlgos);
  solve_pds->add_option("file", c.file, "edge list")->required();

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);
  auto* gen_cover = gen->add_subcommand("random-cover", "random set family");
  auto* gen_graph = gen->add_subcommand("random-graph", "random graph");
  auto* gen_red = gen->add_subcommand("reduction", "reduction instance with certificate");
  gen_red->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  for (auto* g : {gen_cover, gen_graph, gen_red}) {
    g->add_option("--seed", ga.seed, "random seed");
    g->add_option("--out", ga.out, "output file (reduction: path prefix)");
    g->add_option("--p", ga.p, "entry probability");
  }
  gen_cover->add_option("--n", ga.n, "sets");
  gen_cover->add_option("--u", ga.u, "universe size");
  gen_graph->add_option("--n", ga.n, "vertices");
  gen_graph->add_option("--max-degree", ga.max_degree, "bounded-degree generator when positive");
  gen_red->add_option("--kind", ga.kind, "cover or pds")->check(CLI::IsMember({"cover", "pds"}));
  gen_red->add_option("--k", ga.k, "families");
  gen_red->add_option("--h", ga.h, "active indices per coordinate");
  gen_red->add_option("--size", ga.size, "vectors per family");
  gen_red->add_option("--dim", ga.dim, "dimension before regularization");
  gen_red->add_option("--multiplier", ga.multiplier, "gadget multiplier (>= 1)");
  gen_red->add_option("--delta", ga.delta, "degree parameter (0: two groups per family)");
  gen_red->add_option("--sparse-m", ga.sparse_m, "pds only: derive the degree parameter from this edge budget");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "compare solvers against the oracles on random suites");
  add_solver_flags(verify, c, kAllAlgos);
  verify->add_option("--trials", va.trials, "trials per suite");
  verify->add_option("--n", va.n, "max sets / vertices");
  verify->add_option("--u", va.u, "max universe size");
  verify->add_option("--pds2-n", va.pds2_n, "max vertices in the k = 2 suite");
  verify->add_option("--seed", va.seed, "random seed");
  // --k defaults to cycling through 2, 3, 4 for verify.
  verify->get_option("--k")->default_str("cycle 2..4");

  std::string cert_inst, cert_file;
  auto* vcert = app.add_subcommand("verify-certificate", "check a reduction certificate by exhaustive search");
  vcert->add_option("instance", cert_inst, "instance file")->required();
  vcert->add_option("certificate", cert_file, "certificate file")->required();
  vcert->add_option("--format", c.format, "output format")->check(CLI::IsMember({"human", "structured"}));

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "time a solver on random inputs; CSV output");
  add_solver_flags(bench, c, kAllAlgos);
  bench->add_option("--n", ba.n, "sets / vertices");
  bench->add_option("--u", ba.u, "universe size");
  bench->add_option("--p", ba.p, "entry / edge probability");
  bench->add_option("--trials", ba.trials, "instances");
  bench->add_option("--seed", ba.seed, "random seed");
  bench->add_flag("--graph", ba.graph, "use graphs with cover algorithms (via the closed-neighborhood lift)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cover) return cmd_solve(c, false);
    if (*solve_pds) return cmd_solve(c, true);
    if (*verify) {
      va.k = verify->count("--k") ? c.k : 0;
      return cmd_verify(c, va);
    }
    if (*vcert) return cmd_verify_certificate(c, cert_inst, cert_file);
    if (*bench) return cmd_bench(c, ba);
    if (*gen_cover) return cmd_gen(c, "random-cover", ga);
    if (*gen_graph) return cmd_gen(c, "random-graph", ga);
    if (*gen_red) return cmd_gen(c, "reduction", ga);
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvariantError& e) {
    err << "internal check failed: " << e.what() << '\n';
    return kExitMismatch;
  }
  return kExitUsage;
}

}  // namespace mkc
