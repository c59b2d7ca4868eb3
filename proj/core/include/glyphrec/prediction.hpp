#pragma once

#include <vector>

namespace glyphrec {

struct Prediction {
    int label = 0;
    std::vector<double> scores;  // votes or per-class outputs
};

}  // namespace glyphrec
