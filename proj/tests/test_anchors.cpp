#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <vector>

#include "doctest.h"
#include "freegad/anchors.hpp"
#include "freegad/errors.hpp"
#include "test_support.hpp"

using namespace freegad;

TEST_CASE("highest affinity becomes positive, lowest negative") {
    const auto set = select_anchors({0.9, 0.1, 0.5}, 1);
    CHECK(set.positive == std::vector<NodeId>{0});
    CHECK(set.negative == std::vector<NodeId>{1});
    CHECK(set.affinity == std::vector<double>{0.9, 0.1, 0.5});
}

TEST_CASE("ties resolve toward smaller node ids") {
    const auto set = select_anchors(std::vector<double>(4, 0.7), 2);
    CHECK(set.positive == std::vector<NodeId>{0, 1});
    CHECK(set.negative == std::vector<NodeId>{2, 3});
}

TEST_CASE("invalid anchor counts are rejected") {
    CHECK_THROWS_AS(select_anchors({0.1, 0.2, 0.3}, 2), KTooLarge);
    CHECK_THROWS_AS(select_anchors({0.1, 0.2, 0.3}, 0), KZero);
    // 2K == n is the largest legal request
    CHECK_NOTHROW(select_anchors({0.1, 0.2, 0.3, 0.4}, 2));
}

TEST_CASE("anchor sets are disjoint, sorted and of size K") {
    test_support::Rand rng(60);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng.index(60);
        const std::size_t k = 1 + rng.index(n / 2);
        std::vector<double> aff(n);
        for (double& a : aff) a = rng.uniform(-1.0, 1.0);
        if (trial % 3 == 0) {
            // heavy ties
            for (double& a : aff) a = double(int(a * 3)) / 3.0;
        }
        const auto set = select_anchors(aff, k);
        CHECK(set.positive.size() == k);
        CHECK(set.negative.size() == k);
        CHECK(std::is_sorted(set.positive.begin(), set.positive.end()));
        CHECK(std::is_sorted(set.negative.begin(), set.negative.end()));
        std::set<NodeId> overlap;
        std::set_intersection(set.positive.begin(), set.positive.end(), set.negative.begin(),
                              set.negative.end(), std::inserter(overlap, overlap.begin()));
        CHECK(overlap.empty());
    }
}

TEST_CASE("every positive anchor outranks every negative anchor") {
    test_support::Rand rng(61);
    std::vector<double> aff(30);
    for (double& a : aff) a = rng.uniform(0.0, 1.0);
    const auto set = select_anchors(aff, 8);
    double min_pos = 2.0, max_neg = -2.0;
    for (NodeId id : set.positive) min_pos = std::min(min_pos, aff[id]);
    for (NodeId id : set.negative) max_neg = std::max(max_neg, aff[id]);
    CHECK(min_pos >= max_neg);
}

TEST_CASE("strictly monotone transforms leave the selection unchanged") {
    test_support::Rand rng(62);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 4 + rng.index(40);
        const std::size_t k = 1 + rng.index(n / 2);
        std::vector<double> aff(n);
        for (double& a : aff) a = rng.uniform(-2.0, 2.0);
        const auto base = select_anchors(aff, k);

        std::vector<double> scaled(n), cubed(n);
        for (std::size_t i = 0; i < n; ++i) {
            scaled[i] = 3.0 * aff[i] - 7.0;
            cubed[i] = aff[i] * aff[i] * aff[i];
        }
        const auto t1 = select_anchors(scaled, k);
        const auto t2 = select_anchors(cubed, k);
        CHECK(base.positive == t1.positive);
        CHECK(base.negative == t1.negative);
        CHECK(base.positive == t2.positive);
        CHECK(base.negative == t2.negative);
    }
}

TEST_CASE("relabeling nodes relabels the anchors the same way") {
    test_support::Rand rng(63);
    const std::size_t n = 24;
    std::vector<double> aff(n);
    std::iota(aff.begin(), aff.end(), 0.0);
    for (double& a : aff) a /= 7.0;  // distinct values, no tie ambiguity
    for (std::size_t i = n - 1; i > 0; --i) {
        std::swap(aff[i], aff[rng.index(i + 1)]);
    }
    const auto base = select_anchors(aff, 5);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.index(i + 1)]);
    std::vector<double> relabeled(n);
    for (std::size_t i = 0; i < n; ++i) relabeled[perm[i]] = aff[i];
    const auto mapped = select_anchors(relabeled, 5);

    auto apply = [&](const std::vector<NodeId>& ids) {
        std::vector<NodeId> out;
        for (NodeId id : ids) out.push_back(static_cast<NodeId>(perm[id]));
        std::sort(out.begin(), out.end());
        return out;
    };
    CHECK(mapped.positive == apply(base.positive));
    CHECK(mapped.negative == apply(base.negative));
}

TEST_CASE("node affinity of a matrix with itself is near one for unit rows") {
    FeatureMatrix x(3, 2, {1.0, 0.0, 0.0, 1.0, 0.6, 0.8});
    const auto aff = node_affinity(x, x, 1e-8, SimMode::paper);
    for (double a : aff) CHECK(a == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(node_affinity(x, FeatureMatrix(2, 2), 1e-8, SimMode::paper), ShapeMismatch);
}

TEST_CASE("node affinity is identical for every thread count") {
    test_support::Rand rng(64);
    const auto x = test_support::random_features(rng, 37, 5);
    const auto h = test_support::random_features(rng, 37, 5);
    const auto serial = node_affinity(x, h, 1e-8, SimMode::paper, 1);
    CHECK(serial == node_affinity(x, h, 1e-8, SimMode::paper, 4));
}
