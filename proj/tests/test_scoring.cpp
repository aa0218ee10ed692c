#include <cmath>
#include <cstddef>
#include <vector>

#include "doctest.h"
#include "freegad/errors.hpp"
#include "freegad/scoring.hpp"
#include "test_support.hpp"

using namespace freegad;

namespace {

AnchorSet make_anchors(std::vector<NodeId> pos, std::vector<NodeId> neg) {
    AnchorSet set;
    set.positive = std::move(pos);
    set.negative = std::move(neg);
    return set;
}

} // namespace

TEST_CASE("statistic mode names round-trip") {
    CHECK(parse_stat_mode("sum") == StatMode::sum);
    CHECK(parse_stat_mode("min") == StatMode::min);
    CHECK(parse_stat_mode("max") == StatMode::max);
    CHECK(parse_stat_mode("avg") == StatMode::avg);
    CHECK(to_string(StatMode::sum) == "sum");
    CHECK_THROWS_AS(parse_stat_mode("median"), InvalidParams);
}

TEST_CASE("config validation keeps the weights in the unit interval") {
    ScoringConfig cfg;
    cfg.alpha = 1.5;
    CHECK_THROWS_AS(cfg.validate(), InvalidParams);
    cfg.alpha = 0.5;
    cfg.beta = -0.1;
    CHECK_THROWS_AS(cfg.validate(), InvalidParams);
}

TEST_CASE("a 3-4-5 triangle has anchor distance five") {
    const FeatureMatrix h(2, 2, {0.0, 0.0, 3.0, 4.0});
    const std::vector<NodeId> anchors{1};
    const auto d = anchor_distances(h, anchors);
    CHECK(d.at(0, 0) == 5.0);
    CHECK(d.at(1, 0) == 0.0);  // the anchor keeps its own zero distance
    const std::vector<NodeId> bad{7};
    CHECK_THROWS_AS(anchor_distances(h, bad), IndexOutOfRange);
}

TEST_CASE("distance statistics of [1, 2, 3]") {
    const std::vector<double> d{1.0, 2.0, 3.0};
    CHECK(stat_score(d, StatMode::sum) == 6.0);
    CHECK(stat_score(d, StatMode::min) == 1.0);
    CHECK(stat_score(d, StatMode::max) == 3.0);
    CHECK(stat_score(d, StatMode::avg) == 2.0);
    CHECK_THROWS_AS(stat_score({}, StatMode::sum), EmptyDistanceSet);
}

TEST_CASE("three collinear points score as expected") {
    const FeatureMatrix h(3, 1, {0.0, 1.0, 10.0});
    const auto anchors = make_anchors({0}, {2});
    ScoringConfig cfg;
    cfg.alpha = 1.0;
    cfg.beta = 1.0;
    const auto sv = final_scores(h, anchors, cfg);
    CHECK(sv.scores == std::vector<double>{-30.0, -24.0, 30.0});
    CHECK(sv.positive_part == std::vector<double>{0.0, 3.0, 30.0});
    CHECK(sv.negative_part == std::vector<double>{30.0, 27.0, 0.0});
}

TEST_CASE("alpha and beta zero out their part of the score") {
    test_support::Rand rng(70);
    const auto h = test_support::random_features(rng, 20, 4);
    const auto anchors = make_anchors({0, 3}, {5, 9});
    ScoringConfig both;
    both.alpha = 1.0;
    both.beta = 1.0;
    const auto parts = final_scores(h, anchors, both);

    ScoringConfig only_pos;
    only_pos.alpha = 1.0;
    only_pos.beta = 0.0;
    const auto pos = final_scores(h, anchors, only_pos);
    ScoringConfig only_neg;
    only_neg.alpha = 0.0;
    only_neg.beta = 1.0;
    const auto neg = final_scores(h, anchors, only_neg);
    for (std::size_t i = 0; i < 20; ++i) {
        CHECK(pos.scores[i] == parts.positive_part[i]);
        CHECK(neg.scores[i] == -parts.negative_part[i]);
    }
}

TEST_CASE("shifting every row by a constant leaves scores unchanged") {
    test_support::Rand rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 6 + rng.index(30);
        const std::size_t m = 1 + rng.index(5);
        const auto h = test_support::random_features(rng, n, m, 5.0);
        FeatureMatrix shifted = h;
        std::vector<double> offset(m);
        for (double& c : offset) c = rng.uniform(-100.0, 100.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) shifted.at(i, j) += offset[j];
        }
        const auto anchors = make_anchors({0, 2}, {1, 4});
        ScoringConfig cfg;
        cfg.alpha = rng.unit();
        cfg.beta = rng.unit();
        const auto base = final_scores(h, anchors, cfg);
        const auto moved = final_scores(shifted, anchors, cfg);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(test_support::near(base.scores[i], moved.scores[i], 1e-10));
        }
    }
}

TEST_CASE("degenerate anchor configurations are rejected") {
    const FeatureMatrix h(4, 1, {0.0, 1.0, 2.0, 3.0});
    ScoringConfig cfg;
    CHECK_THROWS_AS(final_scores(h, make_anchors({}, {1}), cfg), EmptyDistanceSet);
    CHECK_THROWS_AS(final_scores(h, make_anchors({0}, {}), cfg), EmptyDistanceSet);
    CHECK_THROWS_AS(final_scores(h, make_anchors({0, 1}, {1, 2}), cfg), InvalidParams);
    CHECK_THROWS_AS(final_scores(h, make_anchors({0}, {9}), cfg), IndexOutOfRange);
}

TEST_CASE("scores are identical for every thread count") {
    test_support::Rand rng(72);
    const auto h = test_support::random_features(rng, 83, 6);
    const auto anchors = make_anchors({1, 7, 13}, {2, 40, 80});
    ScoringConfig cfg;
    cfg.threads = 1;
    const auto serial = final_scores(h, anchors, cfg);
    cfg.threads = 8;
    const auto parallel = final_scores(h, anchors, cfg);
    CHECK(serial.scores == parallel.scores);
    CHECK(serial.positive_part == parallel.positive_part);
    CHECK(serial.negative_part == parallel.negative_part);
}
