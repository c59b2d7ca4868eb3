#include <benchmark/benchmark.h>

#include "glyphrec/classify.hpp"
#include "glyphrec/corpus.hpp"
#include "glyphrec/features.hpp"
#include "glyphrec/preprocess.hpp"
#include "glyphrec/reduce.hpp"
#include "glyphrec/rng.hpp"

using namespace glyphrec;

namespace {

const Corpus& corpus() {
    static const Corpus c = generate_synthetic({10, 4, 7, default_distortion()});
    return c;
}

Matrix random_rows(int n, int d, std::uint64_t seed) {
    Rng rng(seed);
    Matrix X(n, d);
    for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = rng.uniform(-1.0, 1.0);
    return X;
}

void BM_PreprocessChain(benchmark::State& state) {
    const auto& samples = corpus().samples();
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(preprocess_chain(to_gray(samples[i++ % samples.size()].image)));
    }
}
BENCHMARK(BM_PreprocessChain);

void BM_ExtractAll(benchmark::State& state) {
    std::vector<Preprocessed> pre;
    for (const auto& s : corpus().samples()) pre.push_back(preprocess_chain(to_gray(s.image)));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(extract_all(pre[i++ % pre.size()]));
}
BENCHMARK(BM_ExtractAll);

void BM_PcaFit(benchmark::State& state) {
    const Matrix X = random_rows(static_cast<int>(state.range(0)), 325, 1);
    for (auto _ : state) benchmark::DoNotOptimize(pca_fit(X, 76));
}
BENCHMARK(BM_PcaFit)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SvmTrainPair(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Matrix pos = random_rows(n, 76, 2), neg = random_rows(n, 76, 3);
    pos.array() += 0.3;
    const Kernel k = Kernel::rbf(1.0 / 76.0);
    for (auto _ : state) benchmark::DoNotOptimize(svm_train_pair(pos, neg, k, 10.0));
}
BENCHMARK(BM_SvmTrainPair)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ElmTrain(benchmark::State& state) {
    const Matrix X = random_rows(1000, 76, 4);
    std::vector<int> y(1000);
    for (int i = 0; i < 1000; ++i) y[static_cast<std::size_t>(i)] = i % 10;
    for (auto _ : state) benchmark::DoNotOptimize(elm_train(X, y, 10, 1000, kNoRegularization, 1));
}
BENCHMARK(BM_ElmTrain)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
