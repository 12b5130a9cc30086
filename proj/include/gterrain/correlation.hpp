#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gterrain/graph.hpp"

namespace gterrain {

struct LciResult {
  std::vector<double> values;        // one per vertex, in [-1, 1]
  std::size_t zero_variance = 0;     // vertices whose neighborhood is flat in either field
};

/// Local correlation index: population Pearson correlation of the two fields
/// over the hop-ball of each vertex (the vertex itself included). A
/// neighborhood on which either field is constant scores 0.
LciResult local_correlation(const Graph& graph, std::span<const double> field_a, std::span<const double> field_b,
                            int hops = 1);

/// Mean of the local indexes.
double global_correlation(std::span<const double> lci);

/// Negated local index; large where the fields disagree locally.
std::vector<double> outlier_scores(std::span<const double> lci);

struct CorrelationField {
  std::string field_a;
  std::string field_b;
  int hops = 1;
  std::vector<double> lci;
  double gci = 0.0;
  std::vector<double> outlier;
  std::size_t zero_variance = 0;
};

CorrelationField correlate(const Graph& graph, std::string name_a, std::span<const double> field_a,
                           std::string name_b, std::span<const double> field_b, int hops = 1);

}  // namespace gterrain
