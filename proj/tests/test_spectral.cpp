#include "homsample/errors.hpp"
#include "homsample/exact.hpp"
#include "homsample/rng.hpp"
#include "homsample/spectral.hpp"

#include <doctest.h>

#include <cmath>

using namespace homsample;

namespace {

Network random_symmetric(std::size_t n, std::uint64_t seed, bool positive_diagonal = false) {
    Rng rng(seed);
    const auto m = static_cast<Eigen::Index>(n);
    Matrix a = Matrix::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i; j < m; ++j)
            if (rng.bernoulli(0.5) || j == i + 1) a(i, j) = a(j, i) = rng.uniform();
    if (positive_diagonal)
        for (Eigen::Index i = 0; i < m; ++i) a(i, i) = 0.1 + rng.uniform();
    Vector alpha(m);
    for (Eigen::Index i = 0; i < m; ++i) alpha[i] = 0.1 + rng.uniform();
    return Network(a, alpha / alpha.sum());
}

Network example_network(double eps, double s) {
    Matrix a(3, 3);
    a << 1, s, 0, s, 1, s, 0, s, 1;
    Vector alpha(3);
    alpha << (1 - eps) / 2, eps, (1 - eps) / 2;
    return Network(a, alpha);
}

}  // namespace

TEST_CASE("spectral path formulas match matrix powers") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const Network net = random_symmetric(40, seed);
        for (std::size_t k = 2; k <= 12; k += 5) {
            CHECK(std::abs(path_hom_density(net, k) - path_hom_density_direct(net, k)) < 1e-12);
            const Matrix diff = path_transform(net, k).dense() - path_transform_direct(net, k);
            CHECK(diff.cwiseAbs().maxCoeff() < 1e-9);
        }
    }
}

TEST_CASE("spectral path density equals the enumeration oracle on a small net") {
    const Network net = random_symmetric(5, 11);
    CHECK(path_hom_density(net, 4) == doctest::Approx(hom_density(path_motif(4), net)).epsilon(1e-12));
    const Matrix t = exact_motif_transform(path_motif(4), net).dense();
    CHECK((path_transform(net, 4).dense() - t).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("asymmetric networks use the direct computation") {
    Matrix a(2, 2);
    a << 0, 1, 0.5, 0;
    const Network net(a);
    CHECK(path_hom_density(net, 2) == doctest::Approx(0.375));
    CHECK_THROWS_AS(decompose(net), ConfigError);
    CHECK_THROWS_AS(path_transform(net, 1), ConfigError);
}

TEST_CASE("eigenvalues of the three-node example") {
    for (double eps : {0.01, 0.1})
        for (double s : {0.2, 0.5, 0.9}) {
            const auto d = decompose(example_network(eps, s));
            const double root = std::sqrt((3 * eps - 1) * (3 * eps - 1) + 16 * s * s * eps * (1 - eps));
            const double plus = 0.25 * ((eps + 1) + root), minus = 0.25 * ((eps + 1) - root);
            std::vector<double> expected{plus, (1 - eps) / 2, minus};
            std::sort(expected.rbegin(), expected.rend());
            for (int l = 0; l < 3; ++l) CHECK(std::abs(d.eigenvalues[l] - expected[static_cast<std::size_t>(l)]) < 1e-10);
        }
    // The printed variant with a minus under the root is complex at (0.1, 0.9).
    const double printed = (3 * 0.1 - 1) * (3 * 0.1 - 1) - 16 * 0.81 * 0.1 * 0.9;
    CHECK(printed < 0.0);
}

TEST_CASE("eigenvector signs and top multiplicity") {
    const auto d = decompose(random_symmetric(8, 3));
    for (Eigen::Index l = 0; l < 8; ++l) CHECK(d.sqrt_alpha.dot(d.eigenvectors.col(l)) >= -1e-12);
    CHECK(d.top_multiplicity == 1);
    Matrix two = Matrix::Zero(4, 4);
    two(0, 1) = two(1, 0) = two(2, 3) = two(3, 2) = 1;
    CHECK(decompose(Network(two)).top_multiplicity == 2);
}

TEST_CASE("transitive closure is the limit of path transforms") {
    const Network net = random_symmetric(6, 5, true);
    const Matrix closure = transitive_closure(net).dense();
    CHECK(closure.sum() == doctest::Approx(1.0));
    Eigen::JacobiSVD<Matrix> svd(closure);
    CHECK(svd.singularValues()[1] < 1e-12);
    CHECK((path_transform(net, 60).dense() - closure).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("closure of the three-node example has the Perron structure") {
    for (double eps : {0.01, 0.1}) {
        const Matrix c = transitive_closure(example_network(eps, 0.5)).dense();
        CHECK(c(0, 0) == doctest::Approx(c(2, 2)));
        CHECK(c(0, 1) == doctest::Approx(c(1, 2)));
        CHECK(c(0, 1) * c(0, 1) == doctest::Approx(c(0, 0) * c(1, 1)));
    }
}
