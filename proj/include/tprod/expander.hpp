#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tprod/rng.hpp"

namespace tprod {

// Regular multigraph (self-loops and parallel edges allowed) with a dense
// integer adjacency matrix.  A self-loop at v counts 2 in adjacency[v][v].
struct RegularGraph {
  int n = 0;  // vertices
  int d = 0;  // degree (constant row sum)
  std::vector<std::vector<int>> adjacency;
  double lambda = 0.0;  // cached second-largest eigenvalue magnitude of A/d
};

// Validates symmetry/regularity and caches the spectral gap.
RegularGraph make_graph(std::vector<std::vector<int>> adjacency);

RegularGraph gen_complete(int n);
RegularGraph gen_cycle(int n);
// d even: sum of d/2 random permutations plus their transposes; d odd:
// configuration model (requires n*d even).
RegularGraph gen_random_regular(int n, int d, std::uint64_t seed);

// max(|mu_2|, |mu_n|) over the spectrum 1 = mu_1 >= ... >= mu_n of A/d.
double second_eigenvalue(const RegularGraph& g);

struct WalkSample {
  std::vector<int> vertices;
  std::uint64_t seed = 0;
};

// Stationary walk: uniform start, then uniformly chosen incident edge ends
// (multiplicity respected).
WalkSample sample_walk(const RegularGraph& g, int kappa, std::uint64_t seed);
std::vector<int> sample_walk_vertices(const RegularGraph& g, int kappa, Rng& rng);

// (1/n) * prod_j adjacency[v_j][v_{j+1}] / d
double walk_probability(const RegularGraph& g, const std::vector<int>& walk);

// Edge-list format: header "n d", then one "u v mult" line per unordered
// pair with mult > 0 (u <= v; a self-loop line carries adjacency[v][v]).
void write_graph(std::ostream& os, const RegularGraph& g);
RegularGraph read_graph(std::istream& is);

// Accepts complete:n | cycle:n | random:n:d:seed | file:path.
RegularGraph parse_graph_spec(const std::string& spec);

}  // namespace tprod
