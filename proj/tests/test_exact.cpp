#include "homsample/errors.hpp"
#include "homsample/exact.hpp"
#include "homsample/generators.hpp"

#include <doctest.h>

#include <cmath>

using namespace homsample;

namespace {

Network k3() { return complete_graph(3); }

}  // namespace

TEST_CASE("homomorphism densities on complete graphs") {
    CHECK(hom_density(path_motif(2), complete_graph(2)) == doctest::Approx(0.5));
    CHECK(hom_density(cycle_motif(3), k3()) == doctest::Approx(6.0 / 27));
    CHECK(hom_density(singleton_motif(), k3()) == doctest::Approx(1.0));
    // Self-loop density is the alpha-weighted diagonal.
    CHECK(hom_density(self_loop_motif(), k3()) == 0.0);
    CHECK(hom_density(self_loop_motif(), complete_graph(3, true)) == doctest::Approx(1.0));
}

TEST_CASE("Gibbs weights use 0^0 = 1 and fractional exponents") {
    Matrix a(2, 2);
    a << 0.25, 1, 0, 0;
    const Network net(a);
    Matrix af(2, 2);
    af << 0, 0.5, 0, 0;
    const Motif half(af);
    const std::size_t x[] = {0, 0};
    CHECK(gibbs_weight(half, net, x) == doctest::Approx(0.5 * 0.25));
    const std::size_t y[] = {1, 0};
    CHECK(gibbs_weight(half, net, y) == 0.0);
    CHECK(edge_product(empty_motif(2), net, y) == 1.0);
}

TEST_CASE("exact law is normalized and enumerated in lexicographic order") {
    const auto pi = exact_pi(path_motif(3), k3());
    double total = 0.0;
    for (double p : pi.probabilities()) total += p;
    CHECK(total == doctest::Approx(1.0));
    CHECK(pi.support_size() == 12);
    const std::size_t x[] = {0, 1, 0};
    CHECK(pi.probability(x) == doctest::Approx(1.0 / 12));
    CHECK(pi.decode(pi.encode(x)) == VertexMap{0, 1, 0});
    CHECK(pi.marginal(0).sum() == doctest::Approx(1.0));

    std::vector<VertexMap> seen;
    for_each_homomorphism(path_motif(2), k3(), [&](std::span<const std::size_t> m, double) {
        seen.emplace_back(m.begin(), m.end());
    });
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    CHECK(seen.size() == 6);
}

TEST_CASE("oracle errors") {
    CHECK_THROWS_AS(exact_pi(path_motif(2), Network(Matrix::Zero(3, 3))), NumericalError);
    CHECK_THROWS_AS(hom_density(path_motif(5), complete_graph(50), 1e6), ConfigError);
    CHECK(exact_conditional_density(edge_on(2, 0, 1), path_motif(2), Network(Matrix::Zero(3, 3))) == 0.0);
}

TEST_CASE("conditional densities on the torus and complete graphs") {
    CHECK(exact_conditional_density(build_motif("H_3_0"), build_motif("F_3_0"), torus(5)) ==
          doctest::Approx(9.0 / 16).epsilon(1e-12));
    CHECK(exact_conditional_density(build_motif("H_1_0"), build_motif("F_1_0"), torus(5)) == doctest::Approx(1.0));
    // Triangle closure of a wedge in K_3: the two leaves coincide half the time.
    CHECK(exact_conditional_density(edge_on(3, 1, 2), wedge_motif(), k3()) == doctest::Approx(0.5));
    // Transitivity-ratio identity: t(C_3) / t(W_3) when H closes the wedge.
    const double ratio = hom_density(cycle_motif(3), torus(4)) / hom_density(wedge_motif(), torus(4));
    CHECK(exact_conditional_density(edge_on(3, 1, 2), wedge_motif(), torus(4)) == doctest::Approx(ratio));
}

TEST_CASE("CHD profile is a nonincreasing probability") {
    Matrix a(3, 3);
    a << 0.2, 0.9, 0.4, 0.9, 0.7, 0.3, 0.4, 0.3, 1.0;
    const Network net(a);
    const std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0};
    const auto p = exact_chd_profile(self_loop_motif(), singleton_motif(), net, grid);
    CHECK(p[0] == doctest::Approx(1.0));
    CHECK(p[1] == doctest::Approx(2.0 / 3));
    CHECK(p[3] == doctest::Approx(1.0 / 3));
    CHECK(p[4] == doctest::Approx(1.0 / 3));
    const auto q = exact_chd_profile(edge_on(3, 0, 2), path_motif(3), net, grid);
    for (std::size_t g = 1; g < q.size(); ++g) CHECK(q[g] <= q[g - 1] + 1e-15);
}

TEST_CASE("MACC pins motif edges and mirrors") {
    const Matrix m = exact_macc(path_motif(3), k3());
    CHECK(m(0, 1) == 1.0);
    CHECK(m(1, 2) == 1.0);
    CHECK(m(0, 2) == doctest::Approx(0.5));
    CHECK(m(2, 0) == m(0, 2));
    CHECK(m(0, 0) == 0.0);
    CHECK(exact_macc(path_motif(3), complete_graph(3, true))(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("motif transform is the law of the end points") {
    Matrix a(3, 3);
    a << 0, 1, 0.5, 1, 0, 0.2, 0.5, 0.2, 0;
    const Network net(a);
    const Matrix t = exact_motif_transform(path_motif(2), net).dense();
    CHECK(t.sum() == doctest::Approx(1.0));
    CHECK(t(0, 1) == doctest::Approx(a(0, 1) / a.sum()));
    const Matrix t3 = exact_motif_transform(path_motif(3), net).dense();
    const Matrix expected = a * a / (a * a).sum();
    CHECK((t3 - expected).cwiseAbs().maxCoeff() < 1e-14);
    // With H equal to the closing edge, mass sits where triangles exist.
    const Matrix closed = exact_motif_transform(edge_on(3, 0, 2), path_motif(3), net).dense();
    CHECK(closed.sum() == doctest::Approx(1.0));
    CHECK(closed(0, 0) == 0.0);
    CHECK_THROWS_AS(exact_motif_transform(singleton_motif(), net), ConfigError);
}

TEST_CASE("total variation") {
    const double p[] = {0.5, 0.5, 0.0}, q[] = {0.0, 0.5, 0.5};
    CHECK(tv_distance(p, q) == doctest::Approx(0.5));
    const auto a = exact_pi(path_motif(2), k3());
    CHECK(tv_distance(a, a) == 0.0);
    Matrix w(3, 3);
    w << 0, 1, 2, 1, 0, 1, 2, 1, 0;
    const auto b = exact_pi(path_motif(2), Network(w));
    CHECK(tv_distance(a, b) == doctest::Approx(tv_distance(b, a)));
    CHECK(tv_distance(a, b) > 0.0);
}
