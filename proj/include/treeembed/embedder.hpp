#ifndef TREEEMBED_EMBEDDER_HPP
#define TREEEMBED_EMBEDDER_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "treeembed/graph.hpp"
#include "treeembed/tree.hpp"

namespace treeembed {

inline constexpr Vertex kUnassigned = std::numeric_limits<Vertex>::max();

/// The four self-avoiding tree-indexed random walks.
///
///   A1  root uniform in V(G); children drawn from N(f(u)).
///   A2  root uniform in V(G); children drawn from the cap N_+(f(u)).
///   A3  warmup walk inside the cap, root at its endpoint; children from the cap.
///   A4  warmup walk in G, root at its endpoint; children from N(f(u)).
enum class Variant { A1, A2, A3, A4 };

std::string_view to_string(Variant v);
/// Accepts "a1".."a4" (either case). Throws std::invalid_argument.
Variant parse_variant(std::string_view s);

inline bool uses_cap(Variant v) { return v == Variant::A2 || v == Variant::A3; }
inline bool uses_warmup(Variant v) { return v == Variant::A3 || v == Variant::A4; }

struct EmbedParams {
  Variant variant = Variant::A1;
  /// Required for A2/A3, must be null otherwise. Not owned; must outlive the call.
  const NeighborCap* cap = nullptr;
  /// Number of warmup moves before the root is placed (A3/A4 only).
  std::size_t warmup_k = 0;
  std::uint64_t seed = 0;
  bool record_trace = false;
  /// Pins f(root) for A1/A2, or the walk's start vertex for A3/A4.
  std::optional<Vertex> start_vertex;
};

/// Throws std::invalid_argument on variant/field mismatch.
void validate(const EmbedParams& params, const Graph& g);

struct Embedding {
  std::vector<Vertex> assignment;  // tree vertex -> graph vertex or kUnassigned

  bool complete() const;
};

/// Per-run statistics. Only `success`, `failed_at` and `failed_available` are
/// filled unless EmbedParams::record_trace is set.
struct EmbedTrace {
  bool success = false;
  std::optional<TreeVertex> failed_at;
  /// Unoccupied candidates at f(failed_at) when the run stopped.
  std::size_t failed_available = 0;

  /// Tree vertices in placement order, and the number of unoccupied
  /// candidates each one was drawn from (|V(G)| for A1/A2's root; the
  /// endpoint of the walk counts 1 for A3/A4).
  std::vector<TreeVertex> placement_order;
  std::vector<std::size_t> available_choices;

  /// For each graph vertex v, the largest number of simultaneously occupied
  /// vertices in v's candidate set, not counting children of the tree vertex
  /// embedded at v. Only vertices with a positive maximum are listed,
  /// sorted by vertex.
  std::vector<std::pair<Vertex, std::size_t>> occupancy_max;
  /// max over occupancy_max, 0 when empty.
  std::size_t occupancy_peak = 0;

  /// Vertices visited by the warmup walk, start first, root image last.
  std::vector<Vertex> walk_prefix;
};

struct EmbedOutcome {
  Embedding embedding;  // partial on failure
  EmbedTrace trace;

  bool success() const { return trace.success; }
};

/// Runs one embedding attempt.
///
/// Tree vertices are processed in BFS order; the children of u are placed one
/// by one, each uniformly among the unoccupied vertices of u's candidate set.
/// The run fails at the first u with fewer unoccupied candidates than
/// children still to place. Pure function of (g, t, params).
///
/// Throws std::invalid_argument if |T| > |V(G)| or the parameters are
/// inconsistent; a probabilistic failure is reported through the trace.
EmbedOutcome embed(const Graph& g, const RootedTree& t, const EmbedParams& params);

/// True iff the map is injective and every tree edge lands on a graph edge.
/// Throws std::invalid_argument("embedding incomplete") on a partial map.
bool verify_embedding(const Graph& g, const RootedTree& t, const Embedding& e);

}  // namespace treeembed

#endif  // TREEEMBED_EMBEDDER_HPP
