#include "tprod/expander.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tprod/mat.hpp"

namespace tprod {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

double compute_lambda(const std::vector<std::vector<int>>& adjacency, int d) {
  const int n = static_cast<int>(adjacency.size());
  if (n == 1) return 0.0;
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = static_cast<double>(adjacency[i][j]) / d;
  const HermitianEigen e = hermitian_eigen(a);
  return std::max(std::abs(e.values[1]), std::abs(e.values[n - 1]));
}

}  // namespace

RegularGraph make_graph(std::vector<std::vector<int>> adjacency) {
  const int n = static_cast<int>(adjacency.size());
  require(n >= 1, "make_graph: need at least one vertex");
  int d = -1;
  for (int i = 0; i < n; ++i) {
    require(static_cast<int>(adjacency[i].size()) == n, "make_graph: adjacency must be square");
    int row = 0;
    for (int j = 0; j < n; ++j) {
      require(adjacency[i][j] >= 0, "make_graph: adjacency entries must be nonnegative");
      require(adjacency[i][j] == adjacency[j][i], "make_graph: adjacency must be symmetric");
      row += adjacency[i][j];
    }
    if (d < 0) d = row;
    require(row == d, "make_graph: all row sums must equal the degree");
  }
  require(d >= 1, "make_graph: degree must be positive");
  RegularGraph g;
  g.n = n;
  g.d = d;
  g.adjacency = std::move(adjacency);
  g.lambda = compute_lambda(g.adjacency, d);
  return g;
}

RegularGraph gen_complete(int n) {
  require(n >= 2, "gen_complete: n must be >= 2");
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 1));
  for (int i = 0; i < n; ++i) a[i][i] = 0;
  return make_graph(std::move(a));
}

RegularGraph gen_cycle(int n) {
  require(n >= 2, "gen_cycle: n must be >= 2");
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    a[i][j] += 1;
    a[j][i] += 1;
  }
  return make_graph(std::move(a));
}

RegularGraph gen_random_regular(int n, int d, std::uint64_t seed) {
  require(n >= 2, "gen_random_regular: n must be >= 2");
  require(d >= 2, "gen_random_regular: d must be >= 2");
  if (d % 2 == 1 && (static_cast<long long>(n) * d) % 2 == 1)
    throw std::invalid_argument("gen_random_regular: n*d must be even");
  Rng rng(seed);
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  if (d % 2 == 0) {
    // sum of d/2 random permutation matrices plus their transposes
    std::vector<int> perm(n);
    for (int half = 0; half < d / 2; ++half) {
      for (int i = 0; i < n; ++i) perm[i] = i;
      rng.shuffle(perm.begin(), perm.end());
      for (int u = 0; u < n; ++u) {
        a[u][perm[u]] += 1;
        a[perm[u]][u] += 1;
      }
    }
  } else {
    // configuration model: pair up d stubs per vertex
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v)
      for (int s = 0; s < d; ++s) stubs.push_back(v);
    rng.shuffle(stubs.begin(), stubs.end());
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      const int u = stubs[i], v = stubs[i + 1];
      a[u][v] += 1;
      a[v][u] += 1;
    }
  }
  return make_graph(std::move(a));
}

double second_eigenvalue(const RegularGraph& g) { return compute_lambda(g.adjacency, g.d); }

std::vector<int> sample_walk_vertices(const RegularGraph& g, int kappa, Rng& rng) {
  require(kappa >= 1, "sample_walk: kappa must be >= 1");
  std::vector<int> walk(kappa);
  walk[0] = rng.index(g.n);
  for (int j = 1; j < kappa; ++j) {
    const int u = walk[j - 1];
    int pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.d)));
    int v = 0;
    while (pick >= g.adjacency[u][v]) {
      pick -= g.adjacency[u][v];
      ++v;
    }
    walk[j] = v;
  }
  return walk;
}

WalkSample sample_walk(const RegularGraph& g, int kappa, std::uint64_t seed) {
  Rng rng(seed);
  WalkSample w;
  w.seed = seed;
  w.vertices = sample_walk_vertices(g, kappa, rng);
  return w;
}

double walk_probability(const RegularGraph& g, const std::vector<int>& walk) {
  require(!walk.empty(), "walk_probability: walk must be nonempty");
  double p = 1.0 / g.n;
  for (std::size_t j = 0; j + 1 < walk.size(); ++j)
    p *= static_cast<double>(g.adjacency[walk[j]][walk[j + 1]]) / g.d;
  return p;
}

void write_graph(std::ostream& os, const RegularGraph& g) {
  os << g.n << ' ' << g.d << '\n';
  for (int u = 0; u < g.n; ++u)
    for (int v = u; v < g.n; ++v)
      if (g.adjacency[u][v] > 0) os << u << ' ' << v << ' ' << g.adjacency[u][v] << '\n';
}

RegularGraph read_graph(std::istream& is) {
  int n = 0, d = 0;
  if (!(is >> n >> d)) throw std::invalid_argument("read_graph: bad header");
  require(n >= 1 && d >= 1, "read_graph: bad header values");
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  int u, v, mult;
  while (is >> u >> v >> mult) {
    require(u >= 0 && u < n && v >= 0 && v < n, "read_graph: vertex out of range");
    require(mult > 0, "read_graph: multiplicity must be positive");
    a[u][v] += mult;
    if (u != v) a[v][u] += mult;
  }
  RegularGraph g = make_graph(std::move(a));
  require(g.d == d, "read_graph: degree mismatch with header");
  return g;
}

RegularGraph parse_graph_spec(const std::string& spec) {
  const auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = s.find(':', start);
      if (pos == std::string::npos) {
        parts.push_back(s.substr(start));
        break;
      }
      parts.push_back(s.substr(start, pos - start));
      start = pos + 1;
    }
    return parts;
  };
  const std::vector<std::string> parts = split(spec);
  const auto as_int = [&](const std::string& s, const char* what) {
    try {
      std::size_t used = 0;
      const long v = std::stol(s, &used);
      if (used != s.size()) throw std::invalid_argument(what);
      return static_cast<int>(v);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("parse_graph_spec: bad integer in ") + what);
    }
  };
  if (parts[0] == "complete" && parts.size() == 2) return gen_complete(as_int(parts[1], "complete:n"));
  if (parts[0] == "cycle" && parts.size() == 2) return gen_cycle(as_int(parts[1], "cycle:n"));
  if (parts[0] == "random" && parts.size() == 4) {
    const int n = as_int(parts[1], "random:n");
    const int d = as_int(parts[2], "random:d");
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(parts[3]);
    } catch (const std::exception&) {
      throw std::invalid_argument("parse_graph_spec: bad seed in random:n:d:seed");
    }
    return gen_random_regular(n, d, seed);
  }
  if (parts[0] == "file" && parts.size() >= 2) {
    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("parse_graph_spec: cannot open file " + path);
    return read_graph(in);
  }
  throw std::invalid_argument(
      "parse_graph_spec: expected complete:n | cycle:n | random:n:d:seed | file:path");
}

}  // namespace tprod
