#include "gterrain/measures.hpp"

#include <algorithm>
#include <thread>

#include "gterrain/error.hpp"

namespace gterrain {

VertexField degree_field(const Graph& graph) {
  VertexField field{"degree", std::vector<double>(graph.vertex_count())};
  for (VertexId v = 0; v < graph.vertex_count(); ++v) field.values[v] = static_cast<double>(graph.degree(v));
  return field;
}

VertexField kcore_field(const Graph& graph) {
  // Bucket peeling (Batagelj-Zaversnik). Vertices of equal current degree
  // start in ascending id order.
  const std::size_t n = graph.vertex_count();
  std::vector<std::size_t> deg(n);
  std::size_t max_deg = 0;
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = graph.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  std::vector<std::size_t> bin(max_deg + 2, 0);
  for (VertexId v = 0; v < n; ++v) ++bin[deg[v]];
  std::size_t start = 0;
  for (std::size_t d = 0; d <= max_deg; ++d) {
    std::size_t count = bin[d];
    bin[d] = start;
    start += count;
  }
  std::vector<VertexId> order(n);
  std::vector<std::size_t> pos(n);
  for (VertexId v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    order[pos[v]] = v;
  }
  for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  if (!bin.empty()) bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    VertexId v = order[i];
    for (VertexId u : graph.neighbors(v)) {
      if (deg[u] > deg[v]) {
        std::size_t du = deg[u];
        std::size_t pu = pos[u];
        std::size_t pw = bin[du];
        VertexId w = order[pw];
        if (u != w) {
          order[pu] = w;
          pos[w] = pu;
          order[pw] = u;
          pos[u] = pw;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  VertexField field{"kcore", std::vector<double>(n)};
  for (VertexId v = 0; v < n; ++v) field.values[v] = static_cast<double>(deg[v]);
  return field;
}

std::vector<std::size_t> edge_support(const Graph& graph) {
  std::vector<std::size_t> support(graph.edge_count(), 0);
  std::vector<EdgeId> mark(graph.vertex_count(), 0);  // edge id + 1 of (u, w), 0 if unmarked
  for (VertexId u = 0; u < graph.vertex_count(); ++u) {
    auto nu = graph.neighbors(u);
    auto eu = graph.incident_edges(u);
    for (std::size_t i = 0; i < nu.size(); ++i) mark[nu[i]] = eu[i] + 1;
    // Each triangle u < v < w is found once from its lowest vertex.
    for (std::size_t i = 0; i < nu.size(); ++i) {
      VertexId v = nu[i];
      if (v <= u) continue;
      auto nv = graph.neighbors(v);
      auto ev = graph.incident_edges(v);
      for (std::size_t j = 0; j < nv.size(); ++j) {
        VertexId w = nv[j];
        if (w <= v || mark[w] == 0) continue;
        ++support[eu[i]];
        ++support[ev[j]];
        ++support[mark[w] - 1];
      }
    }
    for (VertexId w : nu) mark[w] = 0;
  }
  return support;
}

EdgeField ktruss_field(const Graph& graph) {
  const std::size_t m = graph.edge_count();
  std::vector<std::size_t> sup = edge_support(graph);
  std::size_t max_sup = 0;
  for (auto s : sup) max_sup = std::max(max_sup, s);

  std::vector<std::size_t> bin(max_sup + 2, 0);
  for (EdgeId e = 0; e < m; ++e) ++bin[sup[e]];
  std::size_t start = 0;
  for (std::size_t s = 0; s <= max_sup; ++s) {
    std::size_t count = bin[s];
    bin[s] = start;
    start += count;
  }
  std::vector<EdgeId> order(m);
  std::vector<std::size_t> pos(m);
  for (EdgeId e = 0; e < m; ++e) {
    pos[e] = bin[sup[e]]++;
    order[pos[e]] = e;
  }
  for (std::size_t s = max_sup; s > 0; --s) bin[s] = bin[s - 1];
  if (!bin.empty()) bin[0] = 0;

  std::vector<bool> alive(m, true);
  std::vector<EdgeId> mark(graph.vertex_count(), 0);

  auto demote = [&](EdgeId f, std::size_t floor) {
    if (sup[f] <= floor) return;
    std::size_t sf = sup[f];
    std::size_t pf = pos[f];
    std::size_t pw = bin[sf];
    EdgeId w = order[pw];
    if (f != w) {
      order[pf] = w;
      pos[w] = pf;
      order[pw] = f;
      pos[f] = pw;
    }
    ++bin[sf];
    --sup[f];
  };

  for (std::size_t i = 0; i < m; ++i) {
    EdgeId e = order[i];
    auto [u, v] = graph.edge(e);
    if (graph.degree(u) > graph.degree(v)) std::swap(u, v);
    auto nu = graph.neighbors(u);
    auto eu = graph.incident_edges(u);
    for (std::size_t k = 0; k < nu.size(); ++k)
      if (alive[eu[k]]) mark[nu[k]] = eu[k] + 1;
    auto nv = graph.neighbors(v);
    auto ev = graph.incident_edges(v);
    for (std::size_t k = 0; k < nv.size(); ++k) {
      VertexId w = nv[k];
      if (!alive[ev[k]] || w == u || mark[w] == 0) continue;
      demote(mark[w] - 1, sup[e]);
      demote(ev[k], sup[e]);
    }
    for (VertexId w : nu) mark[w] = 0;
    alive[e] = false;
  }

  EdgeField field{"ktruss", std::vector<double>(m)};
  for (EdgeId e = 0; e < m; ++e) field.values[e] = static_cast<double>(sup[e]);
  return field;
}

namespace {

// Single-source dependency accumulation; adds source contributions to `acc`.
// Path counts are long double: exact integers up to 2^64.
struct BrandesWorkspace {
  explicit BrandesWorkspace(std::size_t n) : dist(n, -1), sigma(n, 0), delta(n, 0) { stack.reserve(n); }
  std::vector<long> dist;
  std::vector<long double> sigma;
  std::vector<long double> delta;
  std::vector<VertexId> stack;
};

void accumulate_from(const Graph& graph, VertexId s, BrandesWorkspace& ws, std::vector<double>& acc) {
  ws.stack.clear();
  ws.dist[s] = 0;
  ws.sigma[s] = 1;
  ws.stack.push_back(s);
  for (std::size_t head = 0; head < ws.stack.size(); ++head) {
    VertexId v = ws.stack[head];
    for (VertexId w : graph.neighbors(v)) {
      if (ws.dist[w] < 0) {
        ws.dist[w] = ws.dist[v] + 1;
        ws.stack.push_back(w);
      }
      if (ws.dist[w] == ws.dist[v] + 1) ws.sigma[w] += ws.sigma[v];
    }
  }
  for (std::size_t i = ws.stack.size(); i-- > 0;) {
    VertexId w = ws.stack[i];
    for (VertexId v : graph.neighbors(w))
      if (ws.dist[v] == ws.dist[w] - 1) ws.delta[v] += ws.sigma[v] / ws.sigma[w] * (1.0L + ws.delta[w]);
    if (w != s) acc[w] += static_cast<double>(ws.delta[w]);
  }
  for (VertexId v : ws.stack) {
    ws.dist[v] = -1;
    ws.sigma[v] = 0;
    ws.delta[v] = 0;
  }
}

}  // namespace

VertexField betweenness_field(const Graph& graph, const BetweennessOptions& options) {
  const std::size_t n = graph.vertex_count();
  if (n > options.vertex_cap)
    throw Error(ErrorKind::cap_exceeded, "exact betweenness limited to " + std::to_string(options.vertex_cap) +
                                             " vertices; subsample the graph or raise the cap");

  // Sources are split into a fixed number of chunks whose partial sums are
  // reduced in chunk order, so results do not depend on the thread count.
  const std::size_t chunks = std::min<std::size_t>(64, std::max<std::size_t>(n, 1));
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));

  std::vector<double> total(n, 0.0);
  for (std::size_t wave = 0; wave < chunks; wave += threads) {
    const std::size_t in_wave = std::min<std::size_t>(threads, chunks - wave);
    std::vector<std::vector<double>> partial(in_wave, std::vector<double>(n, 0.0));
    auto work = [&](std::size_t slot) {
      const std::size_t chunk = wave + slot;
      const std::size_t begin = n * chunk / chunks, end = n * (chunk + 1) / chunks;
      BrandesWorkspace ws(n);
      for (std::size_t s = begin; s < end; ++s) accumulate_from(graph, static_cast<VertexId>(s), ws, partial[slot]);
    };
    if (in_wave == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t slot = 0; slot < in_wave; ++slot) pool.emplace_back(work, slot);
      for (auto& t : pool) t.join();
    }
    for (const auto& p : partial)
      for (std::size_t v = 0; v < n; ++v) total[v] += p[v];
  }

  double scale = 0.5;  // each unordered pair was counted from both ends
  if (options.normalized) scale = n > 2 ? 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2)) : 0.0;
  for (double& x : total) x *= scale;
  return VertexField{options.normalized ? "betweenness_normalized" : "betweenness", std::move(total)};
}

}  // namespace gterrain
