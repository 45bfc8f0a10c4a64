#pragma once

#include <limits>
#include <map>
#include <queue>
#include <vector>

#include "edgeends/base.hpp"

namespace edgeends::detail {

// Residual flow network with paired arcs: the reverse of arc i is arc i^1.
// Undirected unit edges are modelled as one pair with residual capacity 1 on
// both sides, so opposite flows cancel automatically. Edmonds-Karp search;
// deterministic because arcs are scanned in insertion order.
class FlowNet {
 public:
  int add_node() {
    adj_.emplace_back();
    return static_cast<int>(adj_.size()) - 1;
  }

  // Adds the arc pair (u->v cap, v->u cap_back) and returns the index of the
  // forward arc.
  int add_arc(int u, int v, long long cap, long long cap_back = 0) {
    int idx = static_cast<int>(to_.size());
    to_.push_back(v);
    res_.push_back(cap);
    adj_[u].push_back(idx);
    to_.push_back(u);
    res_.push_back(cap_back);
    adj_[v].push_back(idx + 1);
    return idx;
  }

  long long residual(int arc) const { return res_[arc]; }

  // Net flow pushed through the forward arc of a pair created with
  // capacities (cap, cap_back).
  long long net_flow(int arc, long long cap) const { return cap - res_[arc]; }

  // Max flow from s to t, stopping once `limit` is reached.
  long long max_flow(int s, int t, long long limit = std::numeric_limits<long long>::max()) {
    long long total = 0;
    std::vector<int> parent_arc(adj_.size());
    while (total < limit) {
      std::fill(parent_arc.begin(), parent_arc.end(), -1);
      parent_arc[s] = -2;
      std::queue<int> q;
      q.push(s);
      while (!q.empty() && parent_arc[t] == -1) {
        int u = q.front();
        q.pop();
        for (int arc : adj_[u]) {
          if (res_[arc] > 0 && parent_arc[to_[arc]] == -1) {
            parent_arc[to_[arc]] = arc;
            q.push(to_[arc]);
          }
        }
      }
      if (parent_arc[t] == -1) break;
      long long push = limit - total;
      for (int v = t; v != s;) {
        int arc = parent_arc[v];
        push = std::min(push, res_[arc]);
        v = to_[arc ^ 1];
      }
      for (int v = t; v != s;) {
        int arc = parent_arc[v];
        res_[arc] -= push;
        res_[arc ^ 1] += push;
        v = to_[arc ^ 1];
      }
      total += push;
    }
    return total;
  }

  // Nodes reachable from s in the residual graph (the source-side-minimal
  // min cut after max_flow has run).
  std::vector<bool> residual_reachable(int s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::queue<int> q;
    seen[s] = true;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int arc : adj_[u]) {
        if (res_[arc] > 0 && !seen[to_[arc]]) {
          seen[to_[arc]] = true;
          q.push(to_[arc]);
        }
      }
    }
    return seen;
  }

  int node_count() const { return static_cast<int>(adj_.size()); }
  const std::vector<int>& arcs_from(int u) const { return adj_[u]; }
  int head(int arc) const { return to_[arc]; }

 private:
  std::vector<int> to_;
  std::vector<long long> res_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace edgeends::detail
