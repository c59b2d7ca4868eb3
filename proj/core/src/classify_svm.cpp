#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "glyphrec/error.hpp"
#include "glyphrec/model_io.hpp"
#include "glyphrec/svm.hpp"

namespace glyphrec {

namespace {

double int_power(double base, int exp) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Dense kernel between the rows of A and the rows of B.
Matrix kernel_matrix(const Kernel& k, const Matrix& A, const Matrix& B) {
    Matrix G = A * B.transpose();
    if (k.type == Kernel::Type::rbf) {
        const Vector na = A.rowwise().squaredNorm();
        const Vector nb = B.rowwise().squaredNorm();
        for (Eigen::Index j = 0; j < G.cols(); ++j) {
            for (Eigen::Index i = 0; i < G.rows(); ++i) {
                const double d2 = std::max(0.0, na(i) + nb(j) - 2.0 * G(i, j));
                G(i, j) = std::exp(-k.gamma * d2);
            }
        }
    } else {
        G = G.unaryExpr([&](double g) { return int_power(k.gamma * g + k.coef0, k.degree); });
    }
    return G;
}

}  // namespace

double Kernel::operator()(const Vector& u, const Vector& v) const {
    if (type == Type::rbf) return std::exp(-gamma * (u - v).squaredNorm());
    return int_power(gamma * u.dot(v) + coef0, degree);
}

SvmPair svm_train_pair(const Matrix& positives, const Matrix& negatives, const Kernel& kernel, double C,
                       const SmoOptions& opts) {
    if (positives.rows() == 0 || negatives.rows() == 0) throw ConfigError("svm: both classes must be nonempty");
    if (positives.cols() != negatives.cols()) throw ShapeError("svm: class dimensions differ");
    if (!(C > 0.0)) throw ConfigError("svm: C must be positive");
    if (!(opts.tol > 0.0) || opts.max_passes < 1) throw ConfigError("svm: bad SMO options");

    const Eigen::Index n = positives.rows() + negatives.rows();
    Matrix X(n, positives.cols());
    X << positives, negatives;
    Vector y(n);
    y.head(positives.rows()).setOnes();
    y.tail(negatives.rows()).setConstant(-1.0);

    const Matrix K = kernel_matrix(kernel, X, X);
    Vector alpha = Vector::Zero(n);
    // F_i = sum_j alpha_j y_j K_ij - y_i.
    Vector F = -y;

    auto at_lower = [&](Eigen::Index i) { return alpha(i) <= 0.0; };
    auto at_upper = [&](Eigen::Index i) { return alpha(i) >= C; };
    // KKT asks F_i >= beta - tol for members of the first set and
    // F_i <= beta + tol for the second.
    auto in_ge = [&](Eigen::Index i) { return y(i) > 0 ? !at_upper(i) : !at_lower(i); };
    auto in_le = [&](Eigen::Index i) { return y(i) > 0 ? !at_lower(i) : !at_upper(i); };

    constexpr double kTau = 1e-12;
    const long budget = static_cast<long>(opts.max_passes) * std::max<long>(static_cast<long>(n) * n, 1000);

    SvmPair pair;
    double b_up = 0.0, b_low = 0.0;
    for (;;) {
        Eigen::Index i_up = -1, i_low = -1;
        b_up = std::numeric_limits<double>::infinity();
        b_low = -std::numeric_limits<double>::infinity();
        for (Eigen::Index t = 0; t < n; ++t) {
            if (in_ge(t) && F(t) < b_up) {
                b_up = F(t);
                i_up = t;
            }
            if (in_le(t) && F(t) > b_low) {
                b_low = F(t);
                i_low = t;
            }
        }
        if (i_up < 0 || i_low < 0 || b_low - b_up <= opts.tol) break;
        if (pair.iterations >= budget) {
            pair.converged = false;
            break;
        }

        // Partner for i_up: the violator in the second set with the largest
        // second-order gain (F_j - F_i)^2 / eta.
        const Eigen::Index i = i_up;
        Eigen::Index j = i_low;
        double best_gain = -1.0;
        for (Eigen::Index t = 0; t < n; ++t) {
            if (!in_le(t)) continue;
            const double diff = F(t) - F(i);
            if (diff <= 0.0) continue;
            double eta = K(i, i) + K(t, t) - 2.0 * K(i, t);
            if (eta <= 0.0) eta = kTau;
            const double gain = diff * diff / eta;
            if (gain > best_gain) {
                best_gain = gain;
                j = t;
            }
        }

        const double yi = y(i), yj = y(j);
        const double ai = alpha(i), aj = alpha(j);
        double eta = K(i, i) + K(j, j) - 2.0 * K(i, j);
        if (eta <= 0.0) eta = kTau;

        double lo, hi;
        if (yi != yj) {
            lo = std::max(0.0, aj - ai);
            hi = std::min(C, C + aj - ai);
        } else {
            lo = std::max(0.0, ai + aj - C);
            hi = std::min(C, ai + aj);
        }
        double aj_new = std::clamp(aj + yj * (F(i) - F(j)) / eta, lo, hi);
        double ai_new = ai + yi * yj * (aj - aj_new);
        // Snap to the box so the index sets stay exact.
        const double snap = 1e-12 * C;
        auto snap_box = [&](double a) { return a < snap ? 0.0 : (a > C - snap ? C : a); };
        ai_new = snap_box(ai_new);
        aj_new = snap_box(aj_new);

        const double di = (ai_new - ai) * yi;
        const double dj = (aj_new - aj) * yj;
        alpha(i) = ai_new;
        alpha(j) = aj_new;
        F += di * K.col(i) + dj * K.col(j);
        ++pair.iterations;
    }

    // Threshold: mean F over free vectors, else the midpoint of the bounds.
    double sum_free = 0.0;
    long n_free = 0;
    for (Eigen::Index t = 0; t < n; ++t) {
        if (alpha(t) > 0.0 && alpha(t) < C) {
            sum_free += F(t);
            ++n_free;
        }
    }
    const double beta = n_free > 0 ? sum_free / static_cast<double>(n_free) : 0.5 * (b_up + b_low);
    pair.bias = -beta;

    std::vector<Eigen::Index> sv;
    for (Eigen::Index t = 0; t < n; ++t) {
        if (alpha(t) > 0.0) sv.push_back(t);
    }
    pair.support_vectors.resize(static_cast<Eigen::Index>(sv.size()), X.cols());
    pair.coef.resize(static_cast<Eigen::Index>(sv.size()));
    for (std::size_t s = 0; s < sv.size(); ++s) {
        pair.support_vectors.row(static_cast<Eigen::Index>(s)) = X.row(sv[s]);
        pair.coef(static_cast<Eigen::Index>(s)) = alpha(sv[s]) * y(sv[s]);
    }
    pair.alpha = std::move(alpha);
    return pair;
}

double svm_decision(const SvmPair& pair, const Kernel& kernel, const Vector& x) {
    double f = pair.bias;
    for (Eigen::Index s = 0; s < pair.support_vectors.rows(); ++s) {
        f += pair.coef(s) * kernel(pair.support_vectors.row(s).transpose(), x);
    }
    return f;
}

SvmModel svm_train(const Matrix& X, const std::vector<int>& y, int class_count, const Kernel& kernel, double C,
                   const SmoOptions& opts) {
    if (class_count < 2) throw ConfigError("svm_train: need at least two classes");
    if (static_cast<std::size_t>(X.rows()) != y.size()) throw ShapeError("svm_train: label count mismatch");
    std::vector<std::vector<Eigen::Index>> members(static_cast<std::size_t>(class_count));
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] < 0 || y[i] >= class_count) throw ConfigError("svm_train: label out of range");
        members[static_cast<std::size_t>(y[i])].push_back(static_cast<Eigen::Index>(i));
    }
    for (std::size_t c = 0; c < members.size(); ++c) {
        if (members[c].empty()) throw ConfigError("svm_train: class " + std::to_string(c) + " has no training samples");
    }
    auto rows_of = [&](int c) {
        const auto& m = members[static_cast<std::size_t>(c)];
        Matrix out(static_cast<Eigen::Index>(m.size()), X.cols());
        for (std::size_t i = 0; i < m.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = X.row(m[i]);
        return out;
    };

    SvmModel model;
    model.kernel = kernel;
    model.C = C;
    model.class_count = class_count;
    for (int a = 0; a < class_count; ++a) {
        const Matrix pos = rows_of(a);
        for (int b = a + 1; b < class_count; ++b) {
            SvmPair p = svm_train_pair(pos, rows_of(b), kernel, C, opts);
            p.positive = a;
            p.negative = b;
            model.pairs.push_back(std::move(p));
        }
    }
    return model;
}

Prediction svm_predict(const SvmModel& model, const Vector& x) {
    if (!model.pairs.empty() && x.size() != model.pairs.front().support_vectors.cols() &&
        model.pairs.front().support_vectors.rows() > 0) {
        throw ShapeError("svm_predict: dimension mismatch");
    }
    const auto K = static_cast<std::size_t>(model.class_count);
    Prediction p;
    p.scores.assign(K, 0.0);
    std::vector<double> strength(K, 0.0);
    for (const SvmPair& pair : model.pairs) {
        const double d = svm_decision(pair, model.kernel, x);
        const auto winner = static_cast<std::size_t>(d > 0.0 ? pair.positive : pair.negative);
        p.scores[winner] += 1.0;
        strength[winner] += std::abs(d);
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < K; ++c) {
        if (p.scores[c] > p.scores[best] || (p.scores[c] == p.scores[best] && strength[c] > strength[best])) best = c;
    }
    p.label = static_cast<int>(best);
    return p;
}

void save(std::ostream& out, const SvmModel& model) {
    ModelWriter w(out, "svm");
    w.text("kernel", model.kernel.type == Kernel::Type::rbf ? "rbf" : "poly");
    w.real("gamma", model.kernel.gamma);
    w.real("coef0", model.kernel.coef0);
    w.integer("degree", model.kernel.degree);
    w.real("C", model.C);
    w.integer("class_count", model.class_count);
    w.integer("pairs", static_cast<std::int64_t>(model.pairs.size()));
    for (std::size_t i = 0; i < model.pairs.size(); ++i) {
        const SvmPair& p = model.pairs[i];
        const std::string tag = "pair" + std::to_string(i) + ".";
        w.integer(tag + "positive", p.positive);
        w.integer(tag + "negative", p.negative);
        w.real(tag + "bias", p.bias);
        w.vector(tag + "coef", p.coef);
        w.matrix(tag + "sv", p.support_vectors);
    }
}

SvmModel load_svm(std::istream& in) {
    const ModelReader r(in, "svm");
    SvmModel m;
    const std::string& type = r.text("kernel");
    if (type == "rbf") {
        m.kernel = Kernel::rbf(r.real("gamma"));
    } else if (type == "poly") {
        m.kernel = Kernel::poly(r.real("gamma"), r.real("coef0"), static_cast<int>(r.integer("degree")));
    } else {
        throw DataError("svm: unknown kernel '" + type + "'");
    }
    m.C = r.real("C");
    m.class_count = static_cast<int>(r.integer("class_count"));
    const auto n = r.integer("pairs");
    for (std::int64_t i = 0; i < n; ++i) {
        const std::string tag = "pair" + std::to_string(i) + ".";
        SvmPair p;
        p.positive = static_cast<int>(r.integer(tag + "positive"));
        p.negative = static_cast<int>(r.integer(tag + "negative"));
        p.bias = r.real(tag + "bias");
        p.coef = r.vector(tag + "coef");
        p.support_vectors = r.matrix(tag + "sv");
        if (p.coef.size() != p.support_vectors.rows()) throw DataError("svm: pair dimensions disagree");
        m.pairs.push_back(std::move(p));
    }
    return m;
}

}  // namespace glyphrec
