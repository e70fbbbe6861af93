#pragma once

#include "homsample/network.hpp"

namespace homsample {

// Eigendecomposition of B = diag(sqrt(alpha)) A diag(sqrt(alpha)) for symmetric A.
// Eigenvalues are sorted in decreasing order. Each eigenvector is signed so
// that <sqrt(alpha), v> > 0, or, when that product vanishes, so that its first
// nonzero coordinate is positive.
struct SpectralDecomposition {
    Matrix b;
    Vector eigenvalues;
    Matrix eigenvectors;  // columns
    Vector sqrt_alpha;
    std::size_t top_multiplicity;
    double tolerance;
};

SpectralDecomposition decompose(const Network& net, double tolerance = 1e-9);

// t(P_k, G) = sum_l lambda_l^{k-1} <sqrt(alpha), v_l>^2 (direct powers for asymmetric A).
double path_hom_density(const Network& net, std::size_t k);

// A^{P_k}(i,j) = [diag(sqrt a) B^{k-1} diag(sqrt a)](i,j) / t(P_k, G).
Network path_transform(const Network& net, std::size_t k);

// Both quantities by repeated multiplication, without an eigendecomposition.
double path_hom_density_direct(const Network& net, std::size_t k);
Matrix path_transform_direct(const Network& net, std::size_t k);

// Perron projection onto the top eigenspace, normalized to entry sum 1.
Network transitive_closure(const Network& net, double tolerance = 1e-9);

}  // namespace homsample
