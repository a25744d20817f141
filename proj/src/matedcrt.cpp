#include "lqg/matedcrt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lqg/error.hpp"
#include "lqg/parallel.hpp"

namespace lqg {

namespace {

Point2 interpolate(const Path2D& path, double t) {
  const double x = t / path.dt;
  auto i = static_cast<std::size_t>(std::floor(x));
  if (i + 1 >= path.points.size()) return path.points.back();
  const double w = x - static_cast<double>(i);
  const auto& p = path.points[i];
  const auto& q = path.points[i + 1];
  return {p[0] + w * (q[0] - p[0]), p[1] + w * (q[1] - p[1])};
}

// Edges (a,b), a<b, of one coordinate; pairs with b = a+1 are left to the caller.
template <class Emit>
void stack_edges(const std::vector<double>& m, Emit&& emit) {
  std::vector<std::uint32_t> stack;  // cell values non-decreasing from bottom to top
  stack.reserve(64);
  for (std::uint32_t b = 0; b < m.size(); ++b) {
    const double mb = m[b];
    double between = std::numeric_limits<double>::infinity();
    for (std::size_t idx = stack.size(); idx-- > 0;) {
      const std::uint32_t a = stack[idx];
      const double ma = m[a];
      if (std::max(ma, mb) <= between && a + 1 != b) emit(a, b);
      between = std::min(between, ma);
      if (ma < mb) break;
    }
    while (!stack.empty() && m[stack.back()] > mb) stack.pop_back();
    stack.push_back(b);
  }
}

MatedCrtGraph assemble(std::size_t n, std::vector<std::pair<std::uint64_t, EdgeTag>>& keyed) {
  // key = a*n + b over 0-based cells; sorting puts L before R for the same pair.
  std::sort(keyed.begin(), keyed.end());
  MatedCrtGraph g;
  g.n = n;
  g.edges.reserve(keyed.size());
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i > 0 && keyed[i].first == keyed[i - 1].first) continue;
    const auto a = static_cast<std::uint32_t>(keyed[i].first / n);
    const auto b = static_cast<std::uint32_t>(keyed[i].first % n);
    g.edges.push_back({a + 1, b + 1, keyed[i].second});
  }
  return g;
}

void add_consecutive(std::size_t n, std::vector<std::pair<std::uint64_t, EdgeTag>>& keyed) {
  for (std::uint64_t a = 0; a + 1 < n; ++a) keyed.push_back({a * n + a + 1, EdgeTag::consecutive});
}

}  // namespace

CellPath make_cells(const Path2D& path, double cell_size) {
  path.validate();
  if (!(cell_size > 0.0)) throw InputError("make_cells: cell_size must be positive");
  if (cell_size < 10.0 * path.dt * (1.0 - 1e-12)) {
    throw InputError("make_cells: cell_size must be at least 10*dt of the path");
  }
  const auto n = static_cast<std::size_t>(std::floor(path.duration() / cell_size * (1.0 + 1e-12)));
  if (n < 1) throw InputError("make_cells: path shorter than one cell");
  CellPath c;
  c.n = n;
  c.l_min.resize(n);
  c.r_min.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lo = static_cast<double>(k) * cell_size;
    const double hi = static_cast<double>(k + 1) * cell_size;
    const Point2 p = interpolate(path, lo);
    const Point2 q = interpolate(path, hi);
    double l = std::min(p[0], q[0]);
    double r = std::min(p[1], q[1]);
    const auto i0 = static_cast<std::size_t>(std::ceil(lo / path.dt));
    const auto i1 = std::min(path.points.size() - 1, static_cast<std::size_t>(std::floor(hi / path.dt)));
    for (std::size_t i = i0; i <= i1; ++i) {
      l = std::min(l, path.points[i][0]);
      r = std::min(r, path.points[i][1]);
    }
    c.l_min[k] = l;
    c.r_min[k] = r;
  }
  return c;
}

std::string to_string(EdgeTag t) {
  switch (t) {
    case EdgeTag::consecutive: return "consecutive";
    case EdgeTag::L: return "L";
    case EdgeTag::R: return "R";
  }
  return "?";
}

EdgeTag edge_tag_from_string(const std::string& s) {
  if (s == "consecutive") return EdgeTag::consecutive;
  if (s == "L") return EdgeTag::L;
  if (s == "R") return EdgeTag::R;
  throw InputError("unknown edge tag '" + s + "'");
}

std::vector<std::size_t> MatedCrtGraph::degrees() const {
  std::vector<std::size_t> d(n, 0);
  for (const auto& e : edges) {
    ++d[e.a - 1];
    ++d[e.b - 1];
  }
  return d;
}

bool MatedCrtGraph::connected() const {
  if (n == 0) return false;
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  for (const auto& e : edges) {
    const auto ra = find(e.a - 1);
    const auto rb = find(e.b - 1);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

MatedCrtGraph build_brute(const CellPath& cells) {
  const std::size_t n = cells.n;
  std::vector<std::pair<std::uint64_t, EdgeTag>> keyed;
  add_consecutive(n, keyed);
  const std::vector<double>* coords[2] = {&cells.l_min, &cells.r_min};
  const EdgeTag tags[2] = {EdgeTag::L, EdgeTag::R};
  for (int w = 0; w < 2; ++w) {
    const auto& m = *coords[w];
    for (std::size_t a = 0; a < n; ++a) {
      double between = std::numeric_limits<double>::infinity();
      for (std::size_t b = a + 1; b < n; ++b) {
        if (b > a + 1 && std::max(m[a], m[b]) <= between) keyed.push_back({a * n + b, tags[w]});
        between = std::min(between, m[b]);
      }
    }
  }
  return assemble(n, keyed);
}

MatedCrtGraph build_fast(const CellPath& cells) {
  const std::size_t n = cells.n;
  std::vector<std::pair<std::uint64_t, EdgeTag>> keyed;
  keyed.reserve(4 * n);
  add_consecutive(n, keyed);
  stack_edges(cells.l_min, [&](std::uint64_t a, std::uint64_t b) { keyed.push_back({a * n + b, EdgeTag::L}); });
  stack_edges(cells.r_min, [&](std::uint64_t a, std::uint64_t b) { keyed.push_back({a * n + b, EdgeTag::R}); });
  return assemble(n, keyed);
}

MatedCrtGraph build_brute(const Path2D& path, double cell_size) { return build_brute(make_cells(path, cell_size)); }
MatedCrtGraph build_fast(const Path2D& path, double cell_size) { return build_fast(make_cells(path, cell_size)); }

std::vector<MatedCrtGraph> build_fast_batch(const std::vector<Path2D>& paths, double cell_size) {
  std::vector<MatedCrtGraph> out(paths.size());
  for_each_replica(paths.size(), true, [&](std::size_t i) { out[i] = build_fast(paths[i], cell_size); });
  return out;
}

void mark_boundary(const CellPath& cells, MatedCrtGraph& g) {
  if (g.n != cells.n) throw InputError("mark_boundary: graph and cells disagree on the cell count");
  g.boundary.assign(g.n, false);
  double running = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < g.n; ++k) {
    if (cells.r_min[k] < running) {
      g.boundary[k] = true;
      running = cells.r_min[k];
    }
  }
  if (g.n > 0) g.boundary[0] = true;
}

MatedCrtGraph mark_boundary(const Path2D& path, double cell_size, MatedCrtGraph g) {
  mark_boundary(make_cells(path, cell_size), g);
  return g;
}

void to_json(nlohmann::ordered_json& j, const MatedCrtGraph& g) {
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : g.edges) edges.push_back(nlohmann::ordered_json::array({e.a, e.b, to_string(e.tag)}));
  auto boundary = nlohmann::ordered_json::array();
  for (bool b : g.boundary) boundary.push_back(b);
  j = nlohmann::ordered_json{{"n", g.n}, {"edges", std::move(edges)}, {"boundary", std::move(boundary)}};
}

void from_json(const nlohmann::ordered_json& j, MatedCrtGraph& g) {
  try {
    g.n = j.at("n").get<std::size_t>();
    g.edges.clear();
    for (const auto& e : j.at("edges")) {
      Edge edge{e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>(), edge_tag_from_string(e.at(2))};
      if (!(edge.a >= 1 && edge.a < edge.b && edge.b <= g.n)) throw InputError("graph json: edge out of range");
      g.edges.push_back(edge);
    }
    g.boundary = j.at("boundary").get<std::vector<bool>>();
    if (!g.boundary.empty() && g.boundary.size() != g.n) throw InputError("graph json: boundary length differs from n");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("graph json: ") + e.what());
  }
}

std::string export_graph(const MatedCrtGraph& g, GraphFormat format) {
  if (format == GraphFormat::json) {
    nlohmann::ordered_json j = g;
    return j.dump() + "\n";
  }
  std::string out;
  out.reserve(g.edges.size() * 16);
  for (const auto& e : g.edges) {
    out += std::to_string(e.a);
    out += ',';
    out += std::to_string(e.b);
    out += ',';
    out += to_string(e.tag);
    out += '\n';
  }
  return out;
}

MatedCrtGraph import_graph_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("graph json: ") + e.what());
  }
  return j.get<MatedCrtGraph>();
}

std::map<std::size_t, std::size_t> degree_histogram(const MatedCrtGraph& g) {
  std::map<std::size_t, std::size_t> h;
  for (auto d : g.degrees()) ++h[d];
  return h;
}

}  // namespace lqg
