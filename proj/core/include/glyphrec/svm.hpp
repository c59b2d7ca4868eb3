#pragma once

#include <iosfwd>
#include <vector>

#include "glyphrec/prediction.hpp"
#include "glyphrec/linalg.hpp"

namespace glyphrec {

struct Kernel {
    enum class Type { rbf, poly };

    Type type = Type::rbf;
    double gamma = 1.0;
    double coef0 = 0.0;
    int degree = 3;

    static Kernel rbf(double gamma) { return {Type::rbf, gamma, 0.0, 0}; }
    static Kernel poly(double gamma, double coef0, int degree) { return {Type::poly, gamma, coef0, degree}; }

    double operator()(const Vector& u, const Vector& v) const;
};

struct SmoOptions {
    double tol = 1e-3;
    // Pair-update budget, in units of n^2 updates.
    int max_passes = 10;
};

// One binary problem: +1 for `positive`, -1 for `negative`.
struct SvmPair {
    int positive = 0;
    int negative = 1;
    Matrix support_vectors;  // rows with alpha > 0
    Vector coef;             // alpha_i * y_i
    double bias = 0.0;

    // Training-time diagnostics; not serialized.
    Vector alpha;  // over all training rows of the pair, positives first
    long iterations = 0;
    bool converged = true;
};

// SMO on the dual. Each step updates the maximal KKT-violating pair, using
// second-order gain to pick the partner; stops once the violation gap is at
// most tol. Throws ConfigError if either class is empty.
SvmPair svm_train_pair(const Matrix& positives, const Matrix& negatives, const Kernel& kernel,
                       double C, const SmoOptions& opts = {});

double svm_decision(const SvmPair& pair, const Kernel& kernel, const Vector& x);

struct SvmModel {
    Kernel kernel;
    double C = 10.0;
    int class_count = 0;
    std::vector<SvmPair> pairs;  // (0,1), (0,2), ..., (K-2,K-1)
};

// One-vs-one over all K(K-1)/2 class pairs.
SvmModel svm_train(const Matrix& X, const std::vector<int>& y, int class_count, const Kernel& kernel,
                   double C, const SmoOptions& opts = {});

// Pair votes; vote ties go to the largest summed |decision| over the pairs
// each tied class won, then to the lowest index.
Prediction svm_predict(const SvmModel& model, const Vector& x);

void save(std::ostream& out, const SvmModel& model);
SvmModel load_svm(std::istream& in);

}  // namespace glyphrec
