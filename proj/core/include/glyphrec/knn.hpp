#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "glyphrec/prediction.hpp"
#include "glyphrec/corpus.hpp"
#include "glyphrec/linalg.hpp"

namespace glyphrec {

struct KnnModel {
    Matrix X_train;
    std::vector<int> y_train;
    int k = 5;
    int class_count = 0;
};

// Stores the training set; throws ConfigError unless 1 <= k <= n.
KnnModel knn_fit(Matrix X, std::vector<int> y, int class_count, int k);

// Euclidean k nearest neighbours, majority vote. Distance ties go to the
// lower training row; vote ties go to the tied class that owns the nearest
// of the k neighbours.
Prediction knn_predict(const KnnModel& model, const Vector& x);

// Where a saved k-NN model's training rows come from when they are not
// stored inline: a feature CSV plus the split that selected the rows.
struct KnnReference {
    std::string features_path;
    SplitSpec split;
};

struct KnnFile {
    int k = 5;
    int class_count = 0;
    std::optional<KnnReference> reference;
    std::optional<KnnModel> model;  // set when rows were stored inline
};

void save(std::ostream& out, const KnnModel& model);
void save_reference(std::ostream& out, const KnnModel& model, const KnnReference& ref);
KnnFile load_knn(std::istream& in);

}  // namespace glyphrec
