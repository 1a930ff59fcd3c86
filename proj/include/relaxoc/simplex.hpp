#pragma once

#include "relaxoc/types.hpp"

namespace relaxoc {

/// Euclidean projection onto the probability simplex by the sorting method.
Vec project_simplex(const Vec& z);

}  // namespace relaxoc
