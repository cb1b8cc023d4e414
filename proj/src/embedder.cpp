#include "treeembed/embedder.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

#include "treeembed/random.hpp"

namespace treeembed {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::A1: return "a1";
    case Variant::A2: return "a2";
    case Variant::A3: return "a3";
    case Variant::A4: return "a4";
  }
  return "?";
}

Variant parse_variant(std::string_view s) {
  std::string lower(s);
  for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "a1") return Variant::A1;
  if (lower == "a2") return Variant::A2;
  if (lower == "a3") return Variant::A3;
  if (lower == "a4") return Variant::A4;
  throw std::invalid_argument("unknown variant '" + std::string(s) + "' (expected a1..a4)");
}

void validate(const EmbedParams& params, const Graph& g) {
  const auto name = std::string(to_string(params.variant));
  if (uses_cap(params.variant)) {
    if (params.cap == nullptr) throw std::invalid_argument(name + " requires a neighbor cap");
    if (params.cap->vertex_count() != g.vertex_count())
      throw std::invalid_argument("neighbor cap was built for a different graph");
  } else if (params.cap != nullptr) {
    throw std::invalid_argument(name + " does not take a neighbor cap");
  }
  if (!uses_warmup(params.variant) && params.warmup_k != 0)
    throw std::invalid_argument(name + " does not take warmup moves");
  if (params.start_vertex && *params.start_vertex >= g.vertex_count())
    throw std::invalid_argument("start vertex out of range");
}

bool Embedding::complete() const {
  return std::none_of(assignment.begin(), assignment.end(), [](Vertex v) { return v == kUnassigned; });
}

namespace {

class Run {
 public:
  Run(const Graph& g, const RootedTree& t, const EmbedParams& params)
      : g_(g), t_(t), params_(params), rng_(params.seed), occupant_(g.vertex_count(), kNoParent) {
    out_.embedding.assignment.assign(t.vertex_count(), kUnassigned);
    if (params.record_trace) {
      count_.assign(g.vertex_count(), 0);
      peak_.assign(g.vertex_count(), 0);
      out_.trace.placement_order.reserve(t.vertex_count());
      out_.trace.available_choices.reserve(t.vertex_count());
    }
  }

  EmbedOutcome execute() {
    place_root();
    std::vector<Vertex> pool;
    for (TreeVertex u : t_.order()) {
      auto kids = t_.children(u);
      if (kids.empty()) continue;
      const Vertex host = out_.embedding.assignment[u];
      pool.clear();
      for (Vertex w : candidates(host))
        if (occupant_[w] == kNoParent) pool.push_back(w);
      for (std::size_t j = 0; j < kids.size(); ++j) {
        if (pool.size() < kids.size() - j) {
          out_.trace.failed_at = u;
          out_.trace.failed_available = pool.size();
          finish();
          return std::move(out_);
        }
        const std::size_t pick = rng_.below(pool.size());
        const Vertex w = pool[pick];
        const std::size_t available = pool.size();
        pool[pick] = pool.back();
        pool.pop_back();
        place(kids[j], w, available);
      }
    }
    out_.trace.success = true;
    finish();
    return std::move(out_);
  }

 private:
  std::span<const Vertex> candidates(Vertex v) const {
    return uses_cap(params_.variant) ? params_.cap->selected(v) : g_.neighbors(v);
  }
  // Vertices whose candidate set contains w.
  std::span<const Vertex> watchers(Vertex w) const {
    return uses_cap(params_.variant) ? params_.cap->selectors(w) : g_.neighbors(w);
  }

  void place_root() {
    const auto n = g_.vertex_count();
    Vertex v = params_.start_vertex ? *params_.start_vertex : static_cast<Vertex>(rng_.below(n));
    if (!uses_warmup(params_.variant)) {
      place(t_.root(), v, n);
      return;
    }
    // Warmup moves occupy nothing and may revisit vertices.
    if (params_.record_trace) out_.trace.walk_prefix.push_back(v);
    for (std::size_t i = 0; i < params_.warmup_k; ++i) {
      auto nb = candidates(v);
      if (nb.empty()) break;
      v = nb[rng_.below(nb.size())];
      if (params_.record_trace) out_.trace.walk_prefix.push_back(v);
    }
    place(t_.root(), v, 1);
  }

  void place(TreeVertex y, Vertex w, std::size_t available) {
    out_.embedding.assignment[y] = w;
    occupant_[w] = y;
    if (!params_.record_trace) return;
    out_.trace.placement_order.push_back(y);
    out_.trace.available_choices.push_back(available);
    const TreeVertex py = t_.parent(y);
    const Vertex parent_image = py == kNoParent ? kUnassigned : out_.embedding.assignment[py];
    for (Vertex v : watchers(w)) {
      if (v == parent_image) continue;  // y is a child of f^-1(v)
      if (++count_[v] > peak_[v]) {
        if (peak_[v] == 0) touched_.push_back(v);
        peak_[v] = count_[v];
      }
    }
  }

  void finish() {
    if (!params_.record_trace) return;
    std::sort(touched_.begin(), touched_.end());
    auto& occ = out_.trace.occupancy_max;
    occ.reserve(touched_.size());
    for (Vertex v : touched_) {
      occ.emplace_back(v, peak_[v]);
      out_.trace.occupancy_peak = std::max(out_.trace.occupancy_peak, std::size_t{peak_[v]});
    }
  }

  const Graph& g_;
  const RootedTree& t_;
  const EmbedParams& params_;
  Rng rng_;
  std::vector<TreeVertex> occupant_;
  std::vector<std::uint32_t> count_;
  std::vector<std::uint32_t> peak_;
  std::vector<Vertex> touched_;
  EmbedOutcome out_;
};

}  // namespace

EmbedOutcome embed(const Graph& g, const RootedTree& t, const EmbedParams& params) {
  validate(params, g);
  if (t.vertex_count() > g.vertex_count())
    throw std::invalid_argument("tree has more vertices than the host graph");
  return Run(g, t, params).execute();
}

bool verify_embedding(const Graph& g, const RootedTree& t, const Embedding& e) {
  if (e.assignment.size() != t.vertex_count() || !e.complete())
    throw std::invalid_argument("embedding incomplete");
  std::vector<char> used(g.vertex_count(), 0);
  for (Vertex v : e.assignment) {
    if (v >= g.vertex_count() || used[v]) return false;
    used[v] = 1;
  }
  for (TreeVertex u = 0; u < t.vertex_count(); ++u) {
    const TreeVertex p = t.parent(u);
    if (p != kNoParent && !g.has_edge(e.assignment[p], e.assignment[u])) return false;
  }
  return true;
}

}  // namespace treeembed
