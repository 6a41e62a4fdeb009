#include "railplan/transport_lp.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace railplan {

namespace {

constexpr std::int64_t kNoCost = std::numeric_limits<std::int64_t>::min();

struct Tableau {
  int m = 0;
  int n = 0;
  std::vector<std::vector<std::int64_t>> cost;  // big-M substituted
  std::vector<std::vector<int>> flow;
  std::vector<std::vector<bool>> basic;

  // Bipartite basis graph: nodes 0..m-1 are rows, m..m+n-1 are columns. The
  // basis always holds m + n - 1 cells forming a spanning tree.
  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<size_t>(m + n));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        if (basic[static_cast<size_t>(i)][static_cast<size_t>(j)]) {
          adj[static_cast<size_t>(i)].push_back(m + j);
          adj[static_cast<size_t>(m + j)].push_back(i);
        }
      }
    }
    return adj;
  }
};

void northwest_corner(Tableau& t, std::vector<int> supply, std::vector<int> demand) {
  int i = 0;
  int j = 0;
  while (true) {
    const int q = std::min(supply[static_cast<size_t>(i)], demand[static_cast<size_t>(j)]);
    t.flow[static_cast<size_t>(i)][static_cast<size_t>(j)] = q;
    t.basic[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
    supply[static_cast<size_t>(i)] -= q;
    demand[static_cast<size_t>(j)] -= q;
    if (i == t.m - 1 && j == t.n - 1) break;
    if (supply[static_cast<size_t>(i)] == 0 && i < t.m - 1) {
      ++i;
    } else if (j < t.n - 1) {
      ++j;
    } else {
      ++i;
    }
  }
}

// Potentials from the basis tree: u[row] + v[col] = cost on basic cells.
void compute_potentials(const Tableau& t, std::vector<std::int64_t>& u,
                        std::vector<std::int64_t>& v) {
  const auto adj = t.adjacency();
  std::vector<std::int64_t> value(static_cast<size_t>(t.m + t.n), 0);
  std::vector<bool> done(static_cast<size_t>(t.m + t.n), false);
  std::queue<int> queue;
  queue.push(0);
  done[0] = true;
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop();
    for (int next : adj[static_cast<size_t>(node)]) {
      if (done[static_cast<size_t>(next)]) continue;
      const int row = node < t.m ? node : next;
      const int col = node < t.m ? next - t.m : node - t.m;
      const std::int64_t c = t.cost[static_cast<size_t>(row)][static_cast<size_t>(col)];
      value[static_cast<size_t>(next)] = c - value[static_cast<size_t>(node)];
      done[static_cast<size_t>(next)] = true;
      queue.push(next);
    }
  }
  u.assign(static_cast<size_t>(t.m), 0);
  v.assign(static_cast<size_t>(t.n), 0);
  for (int i = 0; i < t.m; ++i) u[static_cast<size_t>(i)] = value[static_cast<size_t>(i)];
  for (int j = 0; j < t.n; ++j) v[static_cast<size_t>(j)] = value[static_cast<size_t>(t.m + j)];
}

// Unique row->column path through the basis tree; returned as node sequence.
std::vector<int> basis_path(const Tableau& t, int from_row, int to_col_node) {
  const auto adj = t.adjacency();
  std::vector<int> parent(static_cast<size_t>(t.m + t.n), -2);
  std::queue<int> queue;
  queue.push(from_row);
  parent[static_cast<size_t>(from_row)] = -1;
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop();
    if (node == to_col_node) break;
    for (int next : adj[static_cast<size_t>(node)]) {
      if (parent[static_cast<size_t>(next)] != -2) continue;
      parent[static_cast<size_t>(next)] = node;
      queue.push(next);
    }
  }
  std::vector<int> path;
  for (int cur = to_col_node; cur != -1; cur = parent[static_cast<size_t>(cur)]) {
    if (cur == -2) throw std::logic_error("transportation basis is not connected");
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;  // from_row .. to_col_node
}

}  // namespace

TransportSolution solve_transportation(const TransportInstance& instance) {
  const int m = static_cast<int>(instance.supply.size());
  const int n = static_cast<int>(instance.demand.size());

  const std::int64_t total_supply =
      std::accumulate(instance.supply.begin(), instance.supply.end(), std::int64_t{0});
  const std::int64_t total_demand =
      std::accumulate(instance.demand.begin(), instance.demand.end(), std::int64_t{0});
  if (total_supply != total_demand) {
    throw std::invalid_argument("transportation instance is not balanced");
  }
  for (int s : instance.supply) {
    if (s < 0) throw std::invalid_argument("negative supply");
  }
  for (int d : instance.demand) {
    if (d < 0) throw std::invalid_argument("negative demand");
  }

  TransportSolution solution;
  solution.flow.assign(static_cast<size_t>(m), std::vector<int>(static_cast<size_t>(n), 0));
  if (m == 0 || n == 0 || total_supply == 0) return solution;

  std::int64_t max_finite = 0;
  for (const auto& row : instance.cost) {
    for (const auto& c : row) {
      if (c) max_finite = std::max(max_finite, static_cast<std::int64_t>(*c));
    }
  }
  const std::int64_t big_m = (1 + max_finite) * total_supply;

  Tableau t;
  t.m = m;
  t.n = n;
  t.cost.assign(static_cast<size_t>(m), std::vector<std::int64_t>(static_cast<size_t>(n), 0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& c = instance.cost[static_cast<size_t>(i)][static_cast<size_t>(j)];
      t.cost[static_cast<size_t>(i)][static_cast<size_t>(j)] = c ? *c : big_m;
    }
  }
  t.flow = solution.flow;
  t.basic.assign(static_cast<size_t>(m), std::vector<bool>(static_cast<size_t>(n), false));
  northwest_corner(t, instance.supply, instance.demand);

  std::vector<std::int64_t> u, v;
  int pivots = 0;
  constexpr int kBlandAfter = 1000;
  constexpr int kPivotCap = 200000;
  while (true) {
    compute_potentials(t, u, v);

    int enter_row = -1;
    int enter_col = -1;
    std::int64_t best_reduced = 0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        if (t.basic[static_cast<size_t>(i)][static_cast<size_t>(j)]) continue;
        const std::int64_t reduced = t.cost[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                                     u[static_cast<size_t>(i)] - v[static_cast<size_t>(j)];
        if (reduced >= 0) continue;
        if (pivots >= kBlandAfter) {  // Bland: first eligible in row-major order
          enter_row = i;
          enter_col = j;
          break;
        }
        // Most negative wins; the row-major scan keeps the smallest (row,
        // column) among ties.
        if (reduced < best_reduced) {
          best_reduced = reduced;
          enter_row = i;
          enter_col = j;
        }
      }
      if (enter_row != -1 && pivots >= kBlandAfter) break;
    }
    if (enter_row == -1) break;

    // Cycle: entering cell plus the unique basis path between its row and
    // column. Signs alternate, entering is +.
    const auto path = basis_path(t, enter_row, m + enter_col);
    std::vector<std::pair<int, int>> minus_cells;
    std::vector<std::pair<int, int>> plus_cells{{enter_row, enter_col}};
    for (size_t k = 0; k + 1 < path.size(); ++k) {
      const int a = path[k];
      const int b = path[k + 1];
      const int row = a < m ? a : b;
      const int col = a < m ? b - m : a - m;
      if (k % 2 == 0) {
        minus_cells.emplace_back(row, col);
      } else {
        plus_cells.emplace_back(row, col);
      }
    }

    int theta = std::numeric_limits<int>::max();
    std::pair<int, int> leaving{-1, -1};
    for (const auto& cell : minus_cells) {
      const int f = t.flow[static_cast<size_t>(cell.first)][static_cast<size_t>(cell.second)];
      if (f < theta || (f == theta && cell < leaving)) {
        theta = f;
        leaving = cell;
      }
    }
    for (const auto& cell : plus_cells) {
      t.flow[static_cast<size_t>(cell.first)][static_cast<size_t>(cell.second)] += theta;
    }
    for (const auto& cell : minus_cells) {
      t.flow[static_cast<size_t>(cell.first)][static_cast<size_t>(cell.second)] -= theta;
    }
    t.basic[static_cast<size_t>(leaving.first)][static_cast<size_t>(leaving.second)] = false;
    t.basic[static_cast<size_t>(enter_row)][static_cast<size_t>(enter_col)] = true;

    if (++pivots > kPivotCap) {
      throw std::runtime_error("transportation simplex did not terminate");
    }
  }

  solution.flow = t.flow;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const int f = t.flow[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (f == 0) continue;
      const auto& c = instance.cost[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (c) {
        solution.objective += static_cast<std::int64_t>(*c) * f;
      } else if (solution.blocked_origins.empty() ||
                 solution.blocked_origins.back() != instance.origin_ids[static_cast<size_t>(i)]) {
        solution.blocked_origins.push_back(instance.origin_ids[static_cast<size_t>(i)]);
      }
    }
  }
  return solution;
}

bool verify_optimality(const TransportInstance& instance, const TransportSolution& solution) {
  const int m = static_cast<int>(instance.supply.size());
  const int n = static_cast<int>(instance.demand.size());
  if (static_cast<int>(solution.flow.size()) != m) return false;
  for (const auto& row : solution.flow) {
    if (static_cast<int>(row.size()) != n) return false;
  }

  for (int i = 0; i < m; ++i) {
    std::int64_t row_sum = 0;
    for (int j = 0; j < n; ++j) {
      const int f = solution.flow[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (f < 0) return false;
      if (f > 0 && !instance.cost[static_cast<size_t>(i)][static_cast<size_t>(j)]) return false;
      row_sum += f;
    }
    if (row_sum != instance.supply[static_cast<size_t>(i)]) return false;
  }
  for (int j = 0; j < n; ++j) {
    std::int64_t col_sum = 0;
    for (int i = 0; i < m; ++i) col_sum += solution.flow[static_cast<size_t>(i)][static_cast<size_t>(j)];
    if (col_sum != instance.demand[static_cast<size_t>(j)]) return false;
  }

  // Complementary slackness. Propagate u/v over the positive-flow support;
  // each support component keeps one free shift, fixed afterwards by the
  // cross-component inequality system (difference constraints).
  const int nodes = m + n;
  std::vector<int> component(static_cast<size_t>(nodes), -1);
  std::vector<std::int64_t> value(static_cast<size_t>(nodes), 0);
  int component_count = 0;
  for (int start = 0; start < nodes; ++start) {
    if (component[static_cast<size_t>(start)] != -1) continue;
    const int comp = component_count++;
    std::queue<int> queue;
    queue.push(start);
    component[static_cast<size_t>(start)] = comp;
    value[static_cast<size_t>(start)] = 0;
    while (!queue.empty()) {
      const int node = queue.front();
      queue.pop();
      for (int other = 0; other < nodes; ++other) {
        const bool node_is_row = node < m;
        if (node_is_row == (other < m)) continue;
        const int row = node_is_row ? node : other;
        const int col = node_is_row ? other - m : node - m;
        if (solution.flow[static_cast<size_t>(row)][static_cast<size_t>(col)] <= 0) continue;
        const auto& c = instance.cost[static_cast<size_t>(row)][static_cast<size_t>(col)];
        const std::int64_t want = static_cast<std::int64_t>(*c) - value[static_cast<size_t>(node)];
        if (component[static_cast<size_t>(other)] == -1) {
          component[static_cast<size_t>(other)] = comp;
          value[static_cast<size_t>(other)] = want;
          queue.push(other);
        } else if (value[static_cast<size_t>(other)] != want) {
          return false;  // support equalities are inconsistent
        }
      }
    }
  }

  // u_i = value + shift(comp), v_j = value - shift(comp). Reachable cell
  // (i, j) requires shift(a) - shift(b) <= cost - value_i - value_j.
  struct Edge {
    int from;
    int to;
    std::int64_t weight;
  };
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& c = instance.cost[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (!c) continue;
      const int a = component[static_cast<size_t>(i)];
      const int b = component[static_cast<size_t>(m + j)];
      const std::int64_t slack = static_cast<std::int64_t>(*c) -
                                 value[static_cast<size_t>(i)] -
                                 value[static_cast<size_t>(m + j)];
      if (a == b) {
        if (slack < 0) return false;
      } else {
        edges.push_back({b, a, slack});
      }
    }
  }
  std::vector<std::int64_t> shift(static_cast<size_t>(component_count), 0);
  for (int pass = 0; pass < component_count; ++pass) {
    bool changed = false;
    for (const Edge& e : edges) {
      if (shift[static_cast<size_t>(e.from)] + e.weight < shift[static_cast<size_t>(e.to)]) {
        shift[static_cast<size_t>(e.to)] = shift[static_cast<size_t>(e.from)] + e.weight;
        changed = true;
      }
    }
    if (!changed) return true;
  }
  for (const Edge& e : edges) {
    if (shift[static_cast<size_t>(e.from)] + e.weight < shift[static_cast<size_t>(e.to)]) {
      return false;  // negative cycle: no feasible duals
    }
  }
  return true;
}

}  // namespace railplan
