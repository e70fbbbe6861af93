#include "homsample/errors.hpp"
#include "homsample/exact.hpp"
#include "homsample/graphon.hpp"

#include <doctest.h>

#include <cmath>

using namespace homsample;

namespace {

StepKernel kernel(const Matrix& values, const Vector& measures) { return StepKernel{values, measures}; }

Vector uniform(Eigen::Index m) { return Vector::Constant(m, 1.0 / static_cast<double>(m)); }

}  // namespace

TEST_CASE("step kernels from networks") {
    Matrix a(3, 3);
    const double eps = 0.1;
    a << 1, 0.5, 0, 0.5, 1, 0.5, 0, 0.5, 1;
    Vector alpha(3);
    alpha << (1 - eps) / 2, eps, (1 - eps) / 2;
    const StepKernel u = to_step_kernel(Network(a, alpha));
    CHECK(u.blocks() == 3);
    CHECK(u.measures[1] == doctest::Approx(eps));
    CHECK(to_step_kernel(Network(Matrix::Ones(1, 1))).blocks() == 1);
}

TEST_CASE("cut norm examples") {
    CHECK(cut_norm(kernel(Matrix::Constant(3, 3, 0.7), uniform(3))) == doctest::Approx(0.7));
    Matrix checker(2, 2);
    checker << 1, -1, -1, 1;
    CHECK(cut_norm(kernel(0.8 * checker, uniform(2))) == doctest::Approx(0.2));
    Rng rng(4);
    for (int t = 0; t < 50; ++t) {
        StepKernel u = random_step_kernel(5, rng);
        u.values.array() -= 0.5;
        CHECK(cut_norm(u) <= one_norm(u) + 1e-15);
    }
}

TEST_CASE("distances: identity, relabeling and ordering") {
    Rng rng(5);
    const StepKernel u = random_step_kernel(4, rng), w = random_step_kernel(4, rng);
    CHECK(cut_dist(u, u, true) == 0.0);
    CHECK(p_norm_dist(u, u, 2.0, true) == 0.0);
    const StepKernel v = permuted(u, {2, 0, 3, 1});
    CHECK(cut_dist(u, v, false) == doctest::Approx(0.0));
    CHECK(p_norm_dist(u, v, 1.0, false) < 1e-15);
    CHECK(p_norm_dist(u, w, 1.0, false) <= p_norm_dist(u, w, 1.0, true) + 1e-15);
    CHECK(cut_dist(u, w, true) <= p_norm_dist(u, w, 1.0, true) + 1e-15);
    CHECK(filtration_dist(u, u, false) == 0.0);
    CHECK_THROWS_AS(cut_dist(u, random_step_kernel(3, rng), false), ConfigError);
    CHECK_THROWS_AS(cut_norm(random_step_kernel(21, rng)), ConfigError);
}

TEST_CASE("labeled distances use the common refinement") {
    Vector m1(2), m2(3);
    m1 << 0.5, 0.5;
    m2 << 0.25, 0.5, 0.25;
    const StepKernel u = kernel(Matrix::Identity(2, 2), m1);
    const StepKernel w = kernel(Matrix::Zero(3, 3), m2);
    CHECK(p_norm_dist(u, w, 1.0, true) == doctest::Approx(0.5));
    const StepKernel d = difference(u, w);
    CHECK(d.blocks() == 4);
    CHECK(d.measures.sum() == doctest::Approx(1.0));
}

TEST_CASE("filtration distance on 0-1 kernels is one cut norm") {
    Matrix a(3, 3), b(3, 3);
    a << 1, 0, 1, 0, 1, 0, 1, 0, 0;
    b << 0, 1, 1, 1, 1, 0, 1, 0, 1;
    const StepKernel u = kernel(a, uniform(3)), w = kernel(b, uniform(3));
    CHECK(filtration_dist(u, w, true) == doctest::Approx(cut_dist(u, w, true)));
    Matrix over = a;
    over(0, 0) = 1.5;
    CHECK_THROWS_AS(filtration_dist(kernel(over, uniform(3)), w, true), ConfigError);
}

TEST_CASE("metric sandwich on random pairs") {
    Rng rng(6);
    for (int t = 0; t < 30; ++t) {
        const StepKernel u = random_step_kernel(4, rng), w = random_step_kernel(4, rng);
        const double cut = cut_dist(u, w, false), filt = filtration_dist(u, w, false), one = p_norm_dist(u, w, 1.0, false);
        CHECK(cut <= filt + 1e-12);
        CHECK(filt <= one + 1e-12);
    }
}

TEST_CASE("kernel homomorphism densities equal the network oracle") {
    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        const StepKernel u = random_step_kernel(4, rng);
        const Network net(u.values, u.measures);
        for (const char* name : {"P_3", "C_3", "S_3", "F_1_1"}) {
            const Motif f = build_motif(name);
            CHECK(std::abs(kernel_hom_density(f, u) - hom_density(f, net)) < 1e-10);
        }
        const Motif h = build_motif("H_1_1"), f = build_motif("F_1_1");
        CHECK(std::abs(kernel_conditional_density(h, f, u) - exact_conditional_density(h, f, net)) < 1e-10);
        const StepKernel t3 = kernel_motif_transform(path_motif(3), u);
        CHECK(one_norm(t3) == doctest::Approx(1.0));
    }
}

TEST_CASE("profile distance is exact") {
    // Self-loop profiles of two 2-block kernels: P(diagonal >= t).
    Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
    a.diagonal() << 0.2, 0.8;
    b.diagonal() << 0.6, 0.6;
    const StepKernel u = kernel(a, uniform(2)), w = kernel(b, uniform(2));
    // f_u = 1 on [0,.2], .5 on (.2,.8]; f_w = 1 on [0,.6].
    CHECK(kernel_profile_l1(self_loop_motif(), singleton_motif(), u, w) == doctest::Approx(0.4 * 0.5 + 0.2 * 0.5));
    CHECK(kernel_profile_l1(self_loop_motif(), singleton_motif(), u, u) == 0.0);
}

TEST_CASE("stability reports") {
    Rng rng(9);
    const StepKernel u = random_step_kernel(3, rng);
    const auto same = verify_stability(StabilityKind::Counting, u, u, empty_motif(3), path_motif(3));
    CHECK(same.lhs == 0.0);
    CHECK(same.holds);
    const StepKernel w = random_step_kernel(3, rng);
    CHECK(verify_stability(StabilityKind::Counting, u, w, empty_motif(3), path_motif(3)).holds);
    CHECK(verify_stability(StabilityKind::Profile, u, w, build_motif("H_1_1"), build_motif("F_1_1")).holds);
    // Hypothesis violations are errors.
    CHECK_THROWS_AS(verify_stability(StabilityKind::Conditional, u, w, edge_on(3, 0, 1), path_motif(3)), ConfigError);
    CHECK_THROWS_AS(verify_stability(StabilityKind::Counting, u, w, empty_motif(1), self_loop_motif()), ConfigError);
    CHECK(parse_stability_kind("transform") == StabilityKind::Transform);
    CHECK_THROWS_AS(parse_stability_kind("other"), ConfigError);
}
