#pragma once

#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "lqg/path.hpp"

namespace lqg {

/// Per-cell minima of L and R. Cell k (1-based) covers path time [(k-1)s, ks] measured from the
/// first sample; its minimum includes the linearly interpolated values at the cell ends.
struct CellPath {
  std::size_t n = 0;
  std::vector<double> l_min;  // index k-1 for cell k
  std::vector<double> r_min;
};

/// Throws InputError for fewer than one full cell, or cell_size < 10*dt.
CellPath make_cells(const Path2D& path, double cell_size);

enum class EdgeTag : std::uint8_t { consecutive, L, R };

std::string to_string(EdgeTag t);
EdgeTag edge_tag_from_string(const std::string& s);

struct Edge {
  std::uint32_t a = 0;  // a < b, 1-based cells
  std::uint32_t b = 0;
  EdgeTag tag = EdgeTag::consecutive;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct MatedCrtGraph {
  std::size_t n = 0;
  std::vector<Edge> edges;     // sorted by (a, b), one entry per pair
  std::vector<bool> boundary;  // index k-1 for cell k; empty until mark_boundary

  std::vector<std::size_t> degrees() const;
  bool connected() const;

  friend bool operator==(const MatedCrtGraph&, const MatedCrtGraph&) = default;
};

/// Direct O(n^2) evaluation of the adjacency rule.
MatedCrtGraph build_brute(const CellPath& cells);
MatedCrtGraph build_brute(const Path2D& path, double cell_size);
/// Same graph via one monotone stack per coordinate; linear in n for continuous data.
MatedCrtGraph build_fast(const CellPath& cells);
MatedCrtGraph build_fast(const Path2D& path, double cell_size);
/// build_fast on each path, across OpenMP threads.
std::vector<MatedCrtGraph> build_fast_batch(const std::vector<Path2D>& paths, double cell_size);

/// Cell a is boundary iff its R-minimum is below every earlier cell's; cell 1 always is.
void mark_boundary(const CellPath& cells, MatedCrtGraph& g);
MatedCrtGraph mark_boundary(const Path2D& path, double cell_size, MatedCrtGraph g);

enum class GraphFormat { csv, json };

/// CSV: `a,b,tag` lines sorted by (a,b), no header. JSON: {n, edges: [[a,b,tag]...], boundary}.
std::string export_graph(const MatedCrtGraph& g, GraphFormat format);
MatedCrtGraph import_graph_json(const std::string& text);

/// degree -> number of cells with that degree.
std::map<std::size_t, std::size_t> degree_histogram(const MatedCrtGraph& g);

void to_json(nlohmann::ordered_json& j, const MatedCrtGraph& g);
void from_json(const nlohmann::ordered_json& j, MatedCrtGraph& g);

}  // namespace lqg
