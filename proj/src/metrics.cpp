#include "freegad/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "freegad/errors.hpp"

namespace freegad {

namespace {

struct ClassCounts {
    std::size_t pos = 0;
    std::size_t neg = 0;
};

ClassCounts validate(const LabeledScores& ls) {
    if (ls.scores.size() != ls.labels.size()) {
        throw ShapeMismatch("scores and labels differ in length: " +
                            std::to_string(ls.scores.size()) + " vs " +
                            std::to_string(ls.labels.size()));
    }
    ClassCounts c;
    for (std::int8_t l : ls.labels) {
        if (l == 1) {
            ++c.pos;
        } else if (l == 0) {
            ++c.neg;
        } else {
            throw InvalidParams("labels must be 0 or 1, got " + std::to_string(int(l)));
        }
    }
    return c;
}

} // namespace

double auroc(const LabeledScores& ls) {
    const ClassCounts c = validate(ls);
    if (c.pos == 0 || c.neg == 0) {
        throw DegenerateLabels("ranking requires both classes, got " + std::to_string(c.pos) +
                               " positives and " + std::to_string(c.neg) + " negatives");
    }
    const std::size_t n = ls.scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ls.scores[a] < ls.scores[b]; });

    // Rank sum of the positive class with midranks for tied scores.
    double pos_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && ls.scores[order[j]] == ls.scores[order[i]]) ++j;
        const double midrank = static_cast<double>(i + j + 1) / 2.0;  // 1-based average
        for (std::size_t t = i; t < j; ++t) {
            if (ls.labels[order[t]] == 1) pos_rank_sum += midrank;
        }
        i = j;
    }
    const double n1 = static_cast<double>(c.pos);
    const double n0 = static_cast<double>(c.neg);
    const double u = pos_rank_sum - n1 * (n1 + 1.0) / 2.0;
    return u / (n1 * n0);
}

double auprc(const LabeledScores& ls) {
    const ClassCounts c = validate(ls);
    if (c.pos == 0) throw DegenerateLabels("average precision requires at least one positive");
    const std::size_t n = ls.scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ls.scores[a] > ls.scores[b]; });

    // Equal scores cross the threshold together and contribute one precision.
    double ap = 0.0;
    std::size_t tp = 0, fp = 0, i = 0;
    while (i < n) {
        std::size_t j = i, gtp = 0, gfp = 0;
        while (j < n && ls.scores[order[j]] == ls.scores[order[i]]) {
            if (ls.labels[order[j]] == 1) {
                ++gtp;
            } else {
                ++gfp;
            }
            ++j;
        }
        tp += gtp;
        fp += gfp;
        if (gtp > 0) {
            ap += static_cast<double>(gtp) * static_cast<double>(tp) /
                  static_cast<double>(tp + fp);
        }
        i = j;
    }
    return ap / static_cast<double>(c.pos);
}

} // namespace freegad
