#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "splitspan/buneman.hpp"
#include "splitspan/graph.hpp"
#include "splitspan/metric.hpp"
#include "splitspan/realizer.hpp"
#include "splitspan/splits.hpp"
#include "splitspan/tightspan.hpp"

namespace splitspan {

/// psi(v)(x) = d_G(v, x) on the vertices of a realisation. Throws
/// NotInTightSpan (v) if an image is not a tight point, InvariantViolation if
/// an edge is expanded or, with check_injective, two vertices share an image.
std::vector<TightPoint> psi(const WeightedGraph& g, const FiniteMetric& m,
                            bool check_injective = false);

/// Lambda^{-1} of each image, looked up among the Buneman vertices of s.
/// Throws NoPreimage (v) for an image that is not Lambda of a vertex.
std::vector<BunemanPoint> psi_prime(const std::vector<TightPoint>& images,
                                    const WeightedSplitSystem& s);

/// Whether psi maps every vertex of g onto Lambda of a Buneman vertex of s.
bool check_vertices_map_to_vertices(const WeightedGraph& g, const FiniteMetric& m,
                                    const WeightedSplitSystem& s);

/// lambda_A(psi'(v)) for every vertex.
std::vector<Rat> side_potential(const WeightedSplitSystem& s,
                                const std::vector<BunemanPoint>& images, SideIndex side);

struct EmbeddingCertificate {
  std::vector<TightPoint> psi_images;
  std::vector<BunemanPoint> psi_prime_images;  // empty unless a split system was supplied
  std::vector<std::size_t> psi_vertex;         // index of psi(v) in G_d
  std::vector<VertexPath> chosen_paths;        // per edge of G, in G_d indices
  WeightedGraph g_star;
  std::vector<std::size_t> g_star_origin;  // G_d index of each vertex of G*
  WeightedGraph suppressed;                // G* with degree-two non-images removed
  std::vector<std::size_t> witness;        // suppressed G* vertex -> vertex of G
};

/// Routes every edge {u, v} of g along a shortest psi(u)-psi(v) path of
/// G_d, trying paths in lexicographic order and backtracking until distinct
/// paths meet only in common endpoint images. Verifies that the union G*
/// realises m with l(G*) <= l(g) and that G* becomes isomorphic to g after
/// suppressing degree-two vertices outside psi(V). Throws NoPreimage if an
/// image is not a vertex of G_d, NoValidPathSystem if no routing works,
/// BudgetExceeded past max_steps routing steps, InvariantViolation if a check fails.
EmbeddingCertificate build_g_star(const WeightedGraph& g, const FiniteMetric& m,
                                  const TightSpanGraph& gd, std::size_t max_steps = 1'000'000);

struct TheoremCertificate {
  WeightedSplitSystem system;
  TightSpanGraph gd;
  RealisationSet optima;
  Realisation selected;
  EmbeddingCertificate embedding;
  std::vector<std::string> trace;  // one line per completed stage
};

/// decompose, two-compatibility, G_d via the Buneman complex, optimal
/// realisations, minimal path-saturated selection, psi and psi', vertex
/// images, G* and the final isomorphism. Errors keep their code and get the
/// failing stage prefixed to the message as "[stage] ". A non-exhaustive
/// search raises BudgetExceeded.
TheoremCertificate certify_theorem(const FiniteMetric& m, const SearchConfig& cfg = {});

}  // namespace splitspan
