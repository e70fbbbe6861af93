#include "homsample/spectral.hpp"

#include "homsample/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace homsample {

namespace {

void require_symmetric(const Network& net) {
    if (!net.is_symmetric()) throw ConfigError("spectral formulas require a symmetric weight matrix");
}

Matrix weighted_matrix(const Network& net) {
    const Vector root = net.alpha().cwiseSqrt();
    return root.asDiagonal() * net.dense() * root.asDiagonal();
}

}  // namespace

SpectralDecomposition decompose(const Network& net, double tolerance) {
    require_symmetric(net);
    SpectralDecomposition d;
    d.sqrt_alpha = net.alpha().cwiseSqrt();
    d.b = weighted_matrix(net);
    d.tolerance = tolerance;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(d.b);
    if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed");
    d.eigenvalues = solver.eigenvalues().reverse();
    d.eigenvectors = solver.eigenvectors().rowwise().reverse();

    const Eigen::Index n = d.b.rows();
    for (Eigen::Index l = 0; l < n; ++l) {
        auto v = d.eigenvectors.col(l);
        const double overlap = d.sqrt_alpha.dot(v);
        bool flip = overlap < 0.0;
        if (std::abs(overlap) <= 1e-12) {
            for (Eigen::Index i = 0; i < n; ++i)
                if (std::abs(v[i]) > 1e-12) {
                    flip = v[i] < 0.0;
                    break;
                }
        }
        if (flip) v = -v;
    }

    const double top = d.eigenvalues[0];
    d.top_multiplicity = 0;
    for (Eigen::Index l = 0; l < n; ++l)
        if (top - d.eigenvalues[l] <= tolerance * std::max(1.0, std::abs(top))) ++d.top_multiplicity;
    return d;
}

double path_hom_density_direct(const Network& net, std::size_t k) {
    if (k == 0) throw ConfigError("path motif needs k >= 1");
    const Vector root = net.alpha().cwiseSqrt();
    const Matrix b = weighted_matrix(net);
    Vector v = root;
    for (std::size_t s = 1; s < k; ++s) v = b * v;
    return root.dot(v);
}

Matrix path_transform_direct(const Network& net, std::size_t k) {
    if (k < 2) throw ConfigError("path transform needs k >= 2");
    const Vector root = net.alpha().cwiseSqrt();
    const Matrix b = weighted_matrix(net);
    Matrix power = b;
    for (std::size_t s = 2; s < k; ++s) power = (power * b).eval();
    Matrix result = root.asDiagonal() * power * root.asDiagonal();
    const double t = result.sum();
    if (!(t > 0.0)) throw NumericalError("t(P_k, G) = 0");
    return result / t;
}

double path_hom_density(const Network& net, std::size_t k) {
    if (k == 0) throw ConfigError("path motif needs k >= 1");
    if (!net.is_symmetric()) return path_hom_density_direct(net, k);
    const SpectralDecomposition d = decompose(net);
    double t = 0.0;
    for (Eigen::Index l = 0; l < d.eigenvalues.size(); ++l) {
        const double overlap = d.sqrt_alpha.dot(d.eigenvectors.col(l));
        t += std::pow(d.eigenvalues[l], static_cast<double>(k - 1)) * overlap * overlap;
    }
    return t;
}

Network path_transform(const Network& net, std::size_t k) {
    if (k < 2) throw ConfigError("path transform needs k >= 2");
    if (!net.is_symmetric()) return Network(path_transform_direct(net, k), net.alpha());
    const SpectralDecomposition d = decompose(net);
    const Eigen::Index n = d.b.rows();
    Vector scaled(n);
    double t = 0.0;
    for (Eigen::Index l = 0; l < n; ++l) {
        scaled[l] = std::pow(d.eigenvalues[l], static_cast<double>(k - 1));
        const double overlap = d.sqrt_alpha.dot(d.eigenvectors.col(l));
        t += scaled[l] * overlap * overlap;
    }
    if (!(t > 0.0)) throw NumericalError("t(P_k, G) = 0");
    const Matrix u = d.sqrt_alpha.asDiagonal() * d.eigenvectors;
    Matrix result = u * scaled.asDiagonal() * u.transpose() / t;
    // Entries of the exact transform are nonnegative; clear rounding residue.
    result = result.cwiseMax(0.0);
    return Network(result, net.alpha());
}

Network transitive_closure(const Network& net, double tolerance) {
    const SpectralDecomposition d = decompose(net, tolerance);
    const auto r = static_cast<Eigen::Index>(d.top_multiplicity);
    const Matrix top = d.eigenvectors.leftCols(r);
    const Vector overlaps = top.transpose() * d.sqrt_alpha;
    const double norm = overlaps.squaredNorm();
    if (!(norm > 0.0)) throw NumericalError("top eigenspace is orthogonal to sqrt(alpha)");
    const Matrix u = d.sqrt_alpha.asDiagonal() * top;
    Matrix closure = (u * u.transpose()) / norm;
    closure = closure.cwiseMax(0.0);
    return Network(closure, net.alpha());
}

}  // namespace homsample
