#pragma once

#include <vector>

#include "dgrec/estimators.hpp"

namespace dgrec {

// Maximum marking strategy: all elements whose total indicator exceeds
// fraction * max total indicator.  Contains the argmax whenever the maximum
// is positive; empty when every indicator is zero.
std::vector<int> mark(const LocalIndicators& li, double fraction = 0.75);

}  // namespace dgrec
