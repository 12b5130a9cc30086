#include "gterrain/service.hpp"

#include <httplib.h>

#include <algorithm>
#include <cmath>

#include "gterrain/error.hpp"
#include "text_util.hpp"

namespace gterrain {

using nlohmann::json;

struct Service::Server {
  httplib::Server http;
};

namespace {

Response json_response(const json& body, int status = 200) { return {status, body.dump(), "application/json"}; }

Response error_response(int status, std::string_view token, const std::string& message) {
  return json_response(json{{"error", std::string(token)}, {"message", message}}, status);
}

json member_labels(const ElementLabels& labels, const std::vector<std::uint32_t>& members) {
  json out = json::array();
  for (auto m : members) out.push_back(labels.label(m));
  return out;
}

}  // namespace

Service::Service(const Session& session, ServiceOptions options)
    : session_(session),
      options_(options),
      layout_slots_(std::make_unique<std::counting_semaphore<>>(
          static_cast<std::ptrdiff_t>(std::max<std::size_t>(1, options.layout_workers)))) {
  mesh_body_ = mesh_to_json(session_.mesh()).dump();
  tree_body_ = tree_to_json(session_.tree(), session_.labels()).dump();

  json fields = json::array();
  for (const auto& [name, coloring] : session_.colorings()) {
    json classes = json::array();
    for (auto c : coloring.classes) classes.push_back(to_string(c));
    fields.push_back(json{{"name", name},
                          {"domain", to_string(session_.kind())},
                          {"thresholds", coloring.thresholds},
                          {"classes", std::move(classes)}});
  }
  fields_body_ = json{{"scalar", session_.scalar_name()},
                      {"active", session_.active_coloring()},
                      {"fields", std::move(fields)}}
                     .dump();
}

Response Service::health() const {
  return json_response(json{{"status", "ok"},
                            {"kind", to_string(session_.kind())},
                            {"vertices", session_.graph().vertex_count()},
                            {"edges", session_.graph().edge_count()},
                            {"nodes", session_.tree().size()}});
}

Response Service::mesh() const { return {200, mesh_body_, "application/json"}; }
Response Service::tree() const { return {200, tree_body_, "application/json"}; }
Response Service::fields() const { return {200, fields_body_, "application/json"}; }

Response Service::cut(const Query& query) const {
  auto it = query.find("alpha");
  if (it == query.end()) return error_response(400, "invalid-argument", "missing alpha");
  auto alpha = detail::parse_number<double>(it->second);
  if (!alpha || std::isnan(*alpha)) return error_response(400, "invalid-argument", "malformed alpha '" + it->second + "'");

  const Cut c = cut_at_alpha(session_.tree(), *alpha);
  json components = json::array();
  for (const auto& comp : c.components)
    components.push_back(json{{"node", comp.root},
                              {"scalar", comp.scalar},
                              {"size", comp.members.size()},
                              {"members", member_labels(session_.labels(), comp.members)}});
  return json_response(json{{"alpha", *alpha}, {"components", std::move(components)}});
}

Response Service::peak(const Query& query) const {
  auto it = query.find("node");
  if (it == query.end()) return error_response(400, "invalid-argument", "missing node");
  const auto& layout = session_.layout();
  NodeId node = kNoNode;
  if (it->second == "root") {
    node = layout.root;
  } else {
    auto parsed = detail::parse_number<std::uint64_t>(it->second);
    if (!parsed) return error_response(400, "invalid-argument", "malformed node '" + it->second + "'");
    if (*parsed >= layout.size()) return error_response(404, "unknown-id", "unknown node " + it->second);
    node = static_cast<NodeId>(*parsed);
  }
  const Peak p = pick(session_.tree(), session_.mesh(), node);
  json out{{"node", p.node},
           {"synthetic", layout.is_synthetic(p.node)},
           {"alpha", p.alpha},
           {"area", p.area},
           {"size", p.members.size()},
           {"members", member_labels(session_.labels(), p.members)}};
  return json_response(out);
}

Response Service::layout2d(const std::string& body) const {
  json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded()) return error_response(400, "parse-error", "body is not valid JSON");
  const json* ids = &doc;
  if (doc.is_object()) {
    auto it = doc.find("vertices");
    if (it == doc.end()) return error_response(400, "invalid-argument", "missing 'vertices'");
    ids = &*it;
  }
  if (!ids->is_array()) return error_response(400, "invalid-argument", "'vertices' must be an array");
  if (ids->size() > options_.layout_vertex_cap)
    return error_response(413, "cap-exceeded",
                          "layout request of " + std::to_string(ids->size()) + " vertices exceeds the cap of " +
                              std::to_string(options_.layout_vertex_cap) + "; refine the selection");

  const Graph& g = session_.graph();
  std::vector<VertexId> dense;
  dense.reserve(ids->size());
  for (const auto& v : *ids) {
    if (!v.is_number_integer()) return error_response(400, "invalid-argument", "vertex ids must be integers");
    auto d = g.dense_id(v.get<OriginalId>());
    if (!d) return error_response(400, "unknown-id", "unknown vertex " + v.dump());
    dense.push_back(*d);
  }

  ForceLayoutOptions fl;
  fl.seed = options_.layout_seed;
  fl.vertex_cap = options_.layout_vertex_cap;
  std::vector<Point2> pos;
  {
    layout_slots_->acquire();
    struct Release {
      std::counting_semaphore<>& s;
      ~Release() { s.release(); }
    } release{*layout_slots_};
    try {
      pos = force_layout_2d(g, dense, fl);
    } catch (const Error& e) {
      return error_response(400, error_token(e.kind()), e.what());
    }
  }

  std::vector<VertexId> selected = dense;
  std::sort(selected.begin(), selected.end());
  json positions = json::array();
  for (std::size_t i = 0; i < dense.size(); ++i)
    positions.push_back(json{{"id", g.original_id(dense[i])}, {"x", pos[i].x}, {"y", pos[i].y}});
  json edges = json::array();
  for (VertexId v : dense)
    for (VertexId w : g.neighbors(v))
      if (w > v && std::binary_search(selected.begin(), selected.end(), w))
        edges.push_back({g.original_id(v), g.original_id(w)});
  return json_response(json{{"positions", std::move(positions)}, {"edges", std::move(edges)}});
}

Response Service::handle(const std::string& method, const std::string& path, const Query& query,
                         const std::string& body) const {
  try {
    if (method == "GET") {
      if (path == "/health") return health();
      if (path == "/mesh") return mesh();
      if (path == "/tree") return tree();
      if (path == "/fields") return fields();
      if (path == "/cut") return cut(query);
      if (path == "/peak") return peak(query);
    } else if (method == "POST" && path == "/layout2d") {
      return layout2d(body);
    }
    return error_response(404, "not-found", "no route " + method + " " + path);
  } catch (const Error& e) {
    return error_response(400, error_token(e.kind()), e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal-error", e.what());
  }
}

void Service::ensure_server() {
  if (server_) return;
  server_ = std::make_shared<Server>();
  auto& http = server_->http;
  const std::size_t threads = std::max<std::size_t>(1, options_.http_threads);
  http.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                            {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                            {"Access-Control-Allow-Headers", "Content-Type"}});

  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    Query query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    Response r = handle(req.method, req.path, query, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  for (const char* path : {"/health", "/mesh", "/tree", "/fields", "/cut", "/peak"}) http.Get(path, route);
  http.Post("/layout2d", route);
  http.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

bool Service::listen(const std::string& host, int port) {
  ensure_server();
  return server_->http.listen(host, port);
}

int Service::bind_any(const std::string& host) {
  ensure_server();
  return server_->http.bind_to_any_port(host);
}

bool Service::listen_after_bind() {
  ensure_server();
  return server_->http.listen_after_bind();
}

void Service::stop() {
  if (server_) server_->http.stop();
}

}  // namespace gterrain
