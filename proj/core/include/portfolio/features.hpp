#pragma once

#include <string>
#include <vector>

#include "portfolio/graph.hpp"
#include "portfolio/linalg.hpp"
#include "portfolio/lp.hpp"

namespace portfolio {

// Fixed-length numeric representation with a versioned schema naming every
// position. A model refuses to predict on features from a different schema.
struct FeatureVector {
    Vector values;
    std::string schema_id;
};

struct FeatureSchema {
    std::string id;
    std::vector<std::string> names;

    std::size_t size() const { return names.size(); }
};

// Known schemas: lp_bag_v1 (52), lp_svd_k<k>_v1 (2+k*k+12),
// graph_svd_k<k>_v1 (2+k*k), graph_deg_q<q>_v1 (q+1).
const FeatureSchema& feature_schema(const std::string& id);  // throws SchemaUnknownError

std::string lp_bag_schema_id();
std::string lp_svd_schema_id(std::size_t k = 20);
std::string graph_svd_schema_id(std::size_t k = 20);
std::string graph_deg_schema_id(std::size_t q = 50);

// 52 features: m, n; degree stats of the variable-constraint graph; stats of
// A's nonzeros, b, c; stats of row-, column- and degree-normalized
// coefficients. Empty normalized sets contribute an all-zero block.
FeatureVector lp_bag_of_features(const LpInstance& lp);

// m, n, the k x k two-stage SVD compression of A (row-major), stats of b and c.
FeatureVector lp_svd_features(const LpInstance& lp, std::size_t k = 20);

// 1/n, density, and the k x k compression of the weighted adjacency matrix.
FeatureVector graph_svd_features(const WeightedGraph& g, std::size_t k = 20);

// 1/n plus q strided samples of the descending degree sequence divided by n.
FeatureVector degree_sequence_features(const WeightedGraph& g, std::size_t q = 50);

// The k x k block shared by both SVD feature schemas: compute U*Sigma of a,
// then U*Sigma of its transpose again. Preserves the top-k spectrum.
Matrix svd_compress(const Matrix& a, std::size_t k);

}  // namespace portfolio
