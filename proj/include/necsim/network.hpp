#ifndef NECSIM_NETWORK_HPP
#define NECSIM_NETWORK_HPP

#include <algorithm>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "necsim/matrix.hpp"

namespace necsim {

/// Directed acyclic network with unit-capacity edges. Parallel edges are
/// allowed. Acyclicity is verified at construction; the min-cut is
/// computed eagerly. Immutable after construction.
class Topology {
 public:
  Topology(int nodes, std::vector<std::pair<int, int>> edges, int source, int sink)
      : nodes_(nodes), edges_(std::move(edges)), source_(source), sink_(sink) {
    if (nodes < 2 || source < 0 || source >= nodes || sink < 0 || sink >= nodes ||
        source == sink)
      throw std::invalid_argument("Topology: bad node indices");
    in_edges_.assign(nodes_, {});
    out_edges_.assign(nodes_, {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      auto [u, v] = edges_[e];
      if (u < 0 || u >= nodes_ || v < 0 || v >= nodes_ || u == v)
        throw std::invalid_argument("Topology: bad edge");
      out_edges_[u].push_back(static_cast<int>(e));
      in_edges_[v].push_back(static_cast<int>(e));
    }
    topo_sort();
    min_cut_ = max_flow();
    mark_inert_edges();
  }

  static Topology parallel(int C) {
    if (C < 1) throw std::invalid_argument("parallel_edge_network: C >= 1");
    std::vector<std::pair<int, int>> edges(C, {0, 1});
    return Topology(2, edges, 0, 1);
  }

  // Classical 7-edge two-path butterfly (single sink), min-cut 2.
  static Topology butterfly() {
    return Topology(6,
                    {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {1, 5}, {2, 5}},
                    0, 5);
  }

  static Topology diamond() {
    return Topology(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, 0, 3);
  }

  /// "parallel:<C>", "butterfly", "diamond".
  static Topology by_name(const std::string& name) {
    if (name.rfind("parallel:", 0) == 0)
      return parallel(std::stoi(name.substr(9)));
    if (name == "butterfly") return butterfly();
    if (name == "diamond") return diamond();
    throw std::invalid_argument("Topology: unknown name '" + name + "'");
  }

  /// {nodes: N, edges: [[u,v],...], source: s, sink: t}
  static Topology from_json(const nlohmann::json& j) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges"))
      edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    return Topology(j.at("nodes").get<int>(), edges, j.at("source").get<int>(),
                    j.at("sink").get<int>());
  }

  nlohmann::json to_json() const {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [u, v] : edges_) edges.push_back({u, v});
    return nlohmann::json{
        {"nodes", nodes_}, {"edges", edges}, {"source", source_}, {"sink", sink_}};
  }

  int nodes() const { return nodes_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int source() const { return source_; }
  int sink() const { return sink_; }
  int min_cut() const { return min_cut_; }
  const std::vector<int>& in_edges(int v) const { return in_edges_[v]; }
  const std::vector<int>& out_edges(int v) const { return out_edges_[v]; }
  const std::vector<int>& edge_order() const { return edge_order_; }
  bool edge_inert(int e) const { return inert_[e]; }

  /// One set of edges forming a minimum cut (saturated edges crossing the
  /// residual-reachable node set).
  std::vector<int> min_cut_edges() const {
    std::vector<int> flow(edges_.size(), 0);
    run_max_flow(flow);
    std::vector<bool> reach(nodes_, false);
    std::deque<int> bfs{source_};
    reach[source_] = true;
    while (!bfs.empty()) {
      int u = bfs.front();
      bfs.pop_front();
      for (int e : out_edges_[u]) {
        int v = edges_[e].second;
        if (flow[e] == 0 && !reach[v]) {
          reach[v] = true;
          bfs.push_back(v);
        }
      }
      for (int e : in_edges_[u]) {
        int v = edges_[e].first;
        if (flow[e] == 1 && !reach[v]) {
          reach[v] = true;
          bfs.push_back(v);
        }
      }
    }
    std::vector<int> cut;
    for (std::size_t e = 0; e < edges_.size(); ++e)
      if (reach[edges_[e].first] && !reach[edges_[e].second])
        cut.push_back(static_cast<int>(e));
    return cut;
  }

 private:
  void topo_sort() {
    std::vector<int> indeg(nodes_, 0);
    for (auto [u, v] : edges_) ++indeg[v];
    std::deque<int> ready;
    for (int v = 0; v < nodes_; ++v)
      if (indeg[v] == 0) ready.push_back(v);
    std::vector<int> order;
    while (!ready.empty()) {
      int u = ready.front();
      ready.pop_front();
      order.push_back(u);
      for (int e : out_edges_[u])
        if (--indeg[edges_[e].second] == 0) ready.push_back(edges_[e].second);
    }
    if (order.size() != static_cast<std::size_t>(nodes_))
      throw std::invalid_argument("Topology: graph has a cycle");
    std::vector<int> pos(nodes_);
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    edge_order_.resize(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) edge_order_[e] = static_cast<int>(e);
    std::stable_sort(edge_order_.begin(), edge_order_.end(),
                     [&](int a, int b) { return pos[edges_[a].first] < pos[edges_[b].first]; });
  }

  int run_max_flow(std::vector<int>& flow) const {
    int total = 0;
    for (;;) {
      // BFS for an augmenting path over edge-residuals.
      std::vector<int> prev_edge(nodes_, -1), prev_dir(nodes_, 0);
      std::vector<bool> seen(nodes_, false);
      std::deque<int> bfs{source_};
      seen[source_] = true;
      while (!bfs.empty() && !seen[sink_]) {
        int u = bfs.front();
        bfs.pop_front();
        for (int e : out_edges_[u]) {
          int v = edges_[e].second;
          if (flow[e] == 0 && !seen[v]) {
            seen[v] = true;
            prev_edge[v] = e;
            prev_dir[v] = 1;
            bfs.push_back(v);
          }
        }
        for (int e : in_edges_[u]) {
          int v = edges_[e].first;
          if (flow[e] == 1 && !seen[v]) {
            seen[v] = true;
            prev_edge[v] = e;
            prev_dir[v] = -1;
            bfs.push_back(v);
          }
        }
      }
      if (!seen[sink_]) return total;
      int v = sink_;
      while (v != source_) {
        int e = prev_edge[v];
        if (prev_dir[v] == 1) {
          flow[e] = 1;
          v = edges_[e].first;
        } else {
          flow[e] = 0;
          v = edges_[e].second;
        }
      }
      ++total;
    }
  }

  int max_flow() const {
    std::vector<int> flow(edges_.size(), 0);
    return run_max_flow(flow);
  }

  void mark_inert_edges() {
    // An edge is inert if it lies on no source->sink path.
    std::vector<bool> from_src(nodes_, false), to_sink(nodes_, false);
    std::deque<int> bfs{source_};
    from_src[source_] = true;
    while (!bfs.empty()) {
      int u = bfs.front();
      bfs.pop_front();
      for (int e : out_edges_[u])
        if (!from_src[edges_[e].second]) {
          from_src[edges_[e].second] = true;
          bfs.push_back(edges_[e].second);
        }
    }
    bfs.push_back(sink_);
    to_sink[sink_] = true;
    while (!bfs.empty()) {
      int u = bfs.front();
      bfs.pop_front();
      for (int e : in_edges_[u])
        if (!to_sink[edges_[e].first]) {
          to_sink[edges_[e].first] = true;
          bfs.push_back(edges_[e].first);
        }
    }
    inert_.resize(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e)
      inert_[e] = !(from_src[edges_[e].first] && to_sink[edges_[e].second]);
  }

  int nodes_;
  std::vector<std::pair<int, int>> edges_;
  int source_, sink_;
  std::vector<std::vector<int>> in_edges_, out_edges_;
  std::vector<int> edge_order_;
  std::vector<bool> inert_;
  int min_cut_ = 0;
};

inline int min_cut(const Topology& t) { return t.min_cut(); }

enum class SourceCoding { Random, Identity };

/// Per-edge local coding rows. For an edge out of the source the row is
/// a coefficient vector against the C rows of X; elsewhere against the
/// tail node's in-edges in fixed order.
struct NetworkCode {
  const Topology* topology;
  const Field* field;
  int source_rows;  // row count of X; the min-cut unless overridden
  std::vector<std::vector<std::uint32_t>> local_rows;  // indexed by edge
};

/// Random linear network code: every local coefficient i.i.d. uniform.
/// With SourceCoding::Identity the j-th source out-edge instead carries
/// row j of X verbatim (rows repeat if the source out-degree exceeds C).
/// `source_rows` <= 0 means "use the min-cut".
inline NetworkCode sample_rlnc(const Topology& t, const Field& f, Rng& rng,
                               SourceCoding source_mode = SourceCoding::Random,
                               int source_rows = 0) {
  const int C = source_rows > 0 ? source_rows : t.min_cut();
  NetworkCode code{&t, &f, C, {}};
  code.local_rows.resize(t.edges().size());
  for (std::size_t e = 0; e < t.edges().size(); ++e) {
    const int u = t.edges()[e].first;
    const std::size_t width =
        u == t.source() ? static_cast<std::size_t>(C) : t.in_edges(u).size();
    std::vector<std::uint32_t> row(width, 0);
    if (u == t.source() && source_mode == SourceCoding::Identity) {
      std::size_t j = 0;
      const auto& outs = t.out_edges(u);
      while (j < outs.size() && outs[j] != static_cast<int>(e)) ++j;
      if (width > 0) row[j % width] = 1;
    } else {
      for (auto& c : row) c = f.sample(rng);
    }
    code.local_rows[e] = row;
  }
  return code;
}

/// Edges the adversary touches; the three lists are pairwise disjoint.
struct EdgeAssignment {
  std::vector<int> read_only, write_only, read_write;

  std::vector<int> read_edges() const {
    std::vector<int> r = read_only;
    r.insert(r.end(), read_write.begin(), read_write.end());
    return r;
  }
  std::vector<int> write_edges() const {
    std::vector<int> w = write_only;
    w.insert(w.end(), read_write.begin(), read_write.end());
    return w;
  }

  void validate(const Topology& t) const {
    std::vector<int> all = read_only;
    all.insert(all.end(), write_only.begin(), write_only.end());
    all.insert(all.end(), read_write.begin(), read_write.end());
    std::vector<int> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("EdgeAssignment: edge lists overlap");
    for (int e : all)
      if (e < 0 || e >= static_cast<int>(t.edges().size()))
        throw std::invalid_argument("EdgeAssignment: edge index out of range");
  }
};

struct TransferMatrices {
  Matrix t_ab;  // kept-sink-rows x C
  Matrix t_aj;  // z_r x C, rows in read-edge order (read-only then read-write)
  std::vector<std::vector<std::uint32_t>> edge_gvec;  // nominal global vector per edge
};

/// Global coding vectors of the unattacked network, and the induced
/// source-to-sink / source-to-adversary transforms.
inline TransferMatrices nominal_transfer(const NetworkCode& code,
                                         const EdgeAssignment& adv) {
  const Topology& t = *code.topology;
  const Field& f = *code.field;
  const int C = code.source_rows;
  std::vector<std::vector<std::uint32_t>> gvec(t.edges().size(),
                                               std::vector<std::uint32_t>(C, 0));
  for (int e : t.edge_order()) {
    const int u = t.edges()[e].first;
    const auto& row = code.local_rows[e];
    auto& g = gvec[e];
    if (u == t.source()) {
      g = row;
    } else {
      const auto& ins = t.in_edges(u);
      for (std::size_t k = 0; k < ins.size(); ++k) {
        if (row[k] == 0) continue;
        for (int j = 0; j < C; ++j)
          g[j] = f.add(g[j], f.mul(row[k], gvec[ins[k]][j]));
      }
    }
  }
  const auto& sink_in = t.in_edges(t.sink());
  const std::size_t kept = std::min<std::size_t>(sink_in.size(), C);
  Matrix t_ab(f, kept, C);
  for (std::size_t i = 0; i < kept; ++i)
    for (int j = 0; j < C; ++j) t_ab.set(i, j, gvec[sink_in[i]][j]);
  const auto reads = adv.read_edges();
  Matrix t_aj(f, reads.size(), C);
  for (std::size_t i = 0; i < reads.size(); ++i)
    for (int j = 0; j < C; ++j) t_aj.set(i, j, gvec[reads[i]][j]);
  return TransferMatrices{t_ab, t_aj, gvec};
}

struct TransmitResult {
  Matrix y;  // kept sink rows (first min(in-degree, C) in edge order)
  Matrix z;  // actual contents recorded on read edges, pre-overwrite
  TransferMatrices transfer;
};

/// Propagates packets in topological edge order. Read edges record their
/// content into Z before any overwrite of that edge; content on a read
/// edge downstream of a jammed edge reflects the post-jam upstream flow.
/// Write and read-write edges carry the supplied jam rows downstream.
inline TransmitResult transmit(const NetworkCode& code, const Matrix& X,
                               const EdgeAssignment& adv,
                               const std::optional<Matrix>& jam_rows) {
  const Topology& t = *code.topology;
  const Field& f = *code.field;
  const int C = code.source_rows;
  const std::size_t n = X.cols();
  if (X.field() != f) throw std::invalid_argument("transmit: field mismatch");
  if (static_cast<int>(X.rows()) != C)
    throw std::invalid_argument("transmit: X must have source_rows rows");
  const auto writes = adv.write_edges();
  if (jam_rows) {
    if (jam_rows->rows() != writes.size() || jam_rows->cols() != n)
      throw std::invalid_argument("transmit: jam_rows shape mismatch");
  }
  const auto reads = adv.read_edges();
  std::vector<int> write_slot(t.edges().size(), -1), read_slot(t.edges().size(), -1);
  for (std::size_t i = 0; i < writes.size(); ++i) write_slot[writes[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < reads.size(); ++i) read_slot[reads[i]] = static_cast<int>(i);

  std::vector<std::vector<std::uint32_t>> content(t.edges().size(),
                                                  std::vector<std::uint32_t>(n, 0));
  Matrix z(f, reads.size(), n);
  for (int e : t.edge_order()) {
    const int u = t.edges()[e].first;
    const auto& row = code.local_rows[e];
    auto& out = content[e];
    if (u == t.source()) {
      for (int k = 0; k < C; ++k) {
        if (row[k] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
          out[j] = f.add(out[j], f.mul(row[k], X.at(k, j)));
      }
    } else {
      const auto& ins = t.in_edges(u);
      for (std::size_t k = 0; k < ins.size(); ++k) {
        if (row[k] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
          out[j] = f.add(out[j], f.mul(row[k], content[ins[k]][j]));
      }
    }
    if (read_slot[e] >= 0)
      for (std::size_t j = 0; j < n; ++j) z.set(read_slot[e], j, out[j]);
    if (write_slot[e] >= 0 && jam_rows)
      for (std::size_t j = 0; j < n; ++j) out[j] = jam_rows->at(write_slot[e], j);
  }
  const auto& sink_in = t.in_edges(t.sink());
  const std::size_t kept = std::min<std::size_t>(sink_in.size(), C);
  Matrix y(f, kept, n);
  for (std::size_t i = 0; i < kept; ++i)
    for (std::size_t j = 0; j < n; ++j) y.set(i, j, content[sink_in[i]][j]);
  return TransmitResult{y, z, nominal_transfer(code, adv)};
}

}  // namespace necsim

#endif
