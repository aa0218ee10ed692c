#pragma once

#include <cstdint>
#include <vector>

namespace freegad {

struct LabeledScores {
    std::vector<double> scores;
    std::vector<std::int8_t> labels;   // 0 = normal, 1 = anomalous
};

// Area under the ROC curve via the rank-sum statistic: the probability that
// a random anomaly outscores a random normal node, ties counted as 1/2.
// Throws ShapeMismatch on length mismatch and DegenerateLabels when either
// class is absent.
double auroc(const LabeledScores& ls);

// Area under the precision-recall curve as average precision. Nodes sharing
// a score form one threshold group. Throws DegenerateLabels when no positive
// label is present.
double auprc(const LabeledScores& ls);

} // namespace freegad
