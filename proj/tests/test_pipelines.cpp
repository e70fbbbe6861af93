#include "homsample/errors.hpp"
#include "homsample/generators.hpp"
#include "homsample/pipelines.hpp"
#include "homsample/report.hpp"
#include "homsample/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace homsample;

namespace {

// Frequency matrices for two styles: one heavy on repeats (diagonal), one on a cycle.
std::vector<Matrix> styled_counts(std::size_t per_class, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Matrix> out;
    for (std::size_t style = 0; style < 2; ++style)
        for (std::size_t i = 0; i < per_class; ++i) {
            Matrix m(4, 4);
            for (Eigen::Index a = 0; a < 4; ++a)
                for (Eigen::Index b = 0; b < 4; ++b) {
                    double base = 1.0;
                    if (style == 0 && a == b) base = 12.0;
                    if (style == 1 && b == (a + 1) % 4) base = 12.0;
                    m(a, b) = base + 2.0 * rng.uniform();
                }
            out.push_back(m);
        }
    return out;
}

}  // namespace

TEST_CASE("k-means separates clear clusters") {
    std::vector<Vector> points;
    Rng rng(3);
    for (int c = 0; c < 3; ++c)
        for (int i = 0; i < 10; ++i) {
            Vector p(2);
            p << 10.0 * c + rng.uniform(), -5.0 * c + rng.uniform();
            points.push_back(p);
        }
    const auto result = kmeans(points, 3, 42);
    std::vector<std::size_t> truth;
    for (std::size_t c = 0; c < 3; ++c) truth.insert(truth.end(), 10, c);
    CHECK(label_agreement(result.labels, truth) == 1.0);
    CHECK(kmeans(points, 3, 42).labels == result.labels);
    CHECK_THROWS_AS(kmeans(points, 31, 1), ConfigError);
}

TEST_CASE("label agreement uses the best matching") {
    CHECK(label_agreement({0, 0, 1, 1}, {1, 1, 0, 0}) == 1.0);
    CHECK(label_agreement({0, 0, 1, 1}, {0, 1, 1, 1}) == doctest::Approx(0.75));
}

TEST_CASE("Markov KL divergence") {
    Matrix p(2, 2), q(2, 2);
    p << 0.5, 0.5, 1.0, 0.0;
    q << 0.25, 0.75, 0.5, 0.5;
    CHECK(markov_kl(p, p) == 0.0);
    const double row0 = 0.5 * std::log(2.0) + 0.5 * std::log(0.5 / 0.75);
    const double row1 = std::log(2.0);
    CHECK(markov_kl(p, q) == doctest::Approx((row0 + row1) / 2));
    CHECK(std::isinf(markov_kl(q, p)));
}

TEST_CASE("diagonal profile distance") {
    Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
    a(0, 0) = 1.0;
    b(0, 0) = 0.5;
    CHECK(diagonal_profile_l1(Network(a), Network(a)) == 0.0);
    CHECK(diagonal_profile_l1(Network(a), Network(b)) == doctest::Approx(0.25));
}

TEST_CASE("attribution on separated styles") {
    const auto counts = styled_counts(6, 9);
    std::vector<std::string> labels(6, "repeat");
    labels.insert(labels.end(), 6, "cycle");
    for (auto method : {AttributionMethod::Chd00, AttributionMethod::Kl, AttributionMethod::Frobenius}) {
        AttributionConfig cfg;
        cfg.method = method;
        cfg.repetitions = 50;
        cfg.seed = 5;
        const auto report = attribution_experiment(counts, labels, cfg);
        CHECK(report.overall == 1.0);
        CHECK(report.classes == std::vector<std::string>{"repeat", "cycle"});
    }
    const std::vector<Matrix> refs{counts[0], counts[1], counts[6], counts[7]};
    const std::vector<Matrix> queries{counts[11], counts[2]};
    CHECK(attribute(refs, {"a", "a", "b", "b"}, queries, AttributionMethod::Frobenius) == std::vector<std::string>{"b", "a"});
    CHECK(parse_attribution_method("kl") == AttributionMethod::Kl);
    CHECK_THROWS_AS(parse_attribution_method("cosine"), ConfigError);
}

TEST_CASE("nearest reference breaks ties by listing order") {
    const Matrix d = Matrix::Ones(3, 3);
    CHECK(nearest_reference(d, {1, 2}, {7, 4}, {0}) == std::vector<std::size_t>{7});
    CHECK(nearest_reference(d, {2, 1}, {4, 7}, {0}) == std::vector<std::size_t>{4});
}

TEST_CASE("MACC pipeline") {
    std::vector<Network> nets;
    for (std::uint64_t s = 0; s < 4; ++s) nets.push_back(sbm_gamma(Network(block_template(s % 2 + 1)), 2, 0.3, s));
    MaccPipelineConfig cfg;
    cfg.seed = 8;
    cfg.steps = 3000;
    const auto result = macc_pipeline(nets, path_motif(3), cfg);
    REQUIRE(result.included.size() == 4);
    for (const auto& m : result.maccs) {
        CHECK(m.minCoeff() >= 0.0);
        CHECK(m.maxCoeff() <= 1.0);
        for (Eigen::Index i = 0; i + 1 < m.rows(); ++i) CHECK(m(i, i + 1) == 1.0);
    }
    CHECK(result.distances.rows() == 4);
    CHECK(result.labels.size() == 4);
    cfg.threads = 2;
    const auto again = macc_pipeline(nets, path_motif(3), cfg);
    for (std::size_t i = 0; i < 4; ++i) CHECK(again.maccs[i] == result.maccs[i]);
}

TEST_CASE("profile pipeline") {
    std::vector<Network> nets{complete_graph(4, true), complete_graph(6)};
    ProfilePipelineConfig cfg;
    cfg.seed = 2;
    cfg.steps = 2000;
    const auto result = profile_pipeline(nets, {{self_loop_motif(), singleton_motif()}, {edge_on(2, 0, 1), path_motif(2)}}, cfg);
    CHECK(result.exact[0][0]);
    CHECK_FALSE(result.exact[1][0]);
    CHECK(result.profiles[0][0].values.front() == 1.0);
    CHECK(result.profiles[0][1].values.back() == 0.0);
    CHECK(result.distances[0](0, 1) > 0.5);
    CHECK(result.distances[1](0, 1) == result.distances[1](1, 0));
}

TEST_CASE("report envelope") {
    nlohmann::json config{{"b", 2}, {"a", 1}};
    const auto env = report::envelope("exact", 5, config);
    CHECK(env["schema_version"] == report::kSchemaVersion);
    CHECK(env["command"] == "exact");
    CHECK(env["config_hash"] == report::hex(report::config_hash(config)));
    CHECK(report::config_hash(config) == report::config_hash(nlohmann::json{{"a", 1}, {"b", 2}}));
    CHECK(report::config_hash(config) != report::config_hash(nlohmann::json{{"a", 1}}));
    CHECK(report::number(kInfinity) == "inf");
    CHECK(report::number(0.5) == 0.5);
}
