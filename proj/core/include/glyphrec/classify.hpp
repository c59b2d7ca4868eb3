#pragma once

#include "glyphrec/elm.hpp"
#include "glyphrec/knn.hpp"
#include "glyphrec/prediction.hpp"
#include "glyphrec/svm.hpp"
