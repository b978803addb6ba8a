#pragma once

#include <string>
#include <string_view>

#include "splitspan/buneman.hpp"
#include "splitspan/graph.hpp"
#include "splitspan/metric.hpp"
#include "splitspan/splits.hpp"
#include "splitspan/tightspan.hpp"

namespace splitspan {

// All parsers throw Error(Parse) with the offending line number in the
// message; text after '#' on any line is ignored.

/// n, then n labels, then the lower triangle row by row, either strictly
/// below the diagonal or including a zero diagonal (detected from the entry
/// count). Axiom violations are reported by validate_metric.
FiniteMetric parse_metric(std::string_view text);
std::string format_metric(const FiniteMetric& m);

/// One split per line: "a b | c d : w". An optional first line
/// "ground l1 l2 ..." fixes the point order; otherwise labels are numbered in
/// order of first appearance.
WeightedSplitSystem parse_splits(std::string_view text);
std::string format_splits(const WeightedSplitSystem& s);

/// Lines "terminal L", "aux N" and "edge N1 N2 w", vertices referenced by name.
WeightedGraph parse_graph(std::string_view text);
std::string format_graph(const WeightedGraph& g);

/// Terminals drawn as boxes, edges labelled with their weights.
std::string to_dot(const WeightedGraph& g, const std::string& name = "G");

/// Vertices labelled by their sign pattern, one character per split.
std::string buneman_dot(const WeightedSplitSystem& s, const BunemanSkeleton& k);

/// JSON dump of the vertex coordinates and the edge and quad lists.
std::string buneman_json(const WeightedSplitSystem& s, const BunemanSkeleton& k);

/// "(1,2,1/2)" style rendering of a point of the tight span.
std::string format_point(const TightPoint& f);

}  // namespace splitspan
