#include "dgrec/adapt.hpp"

namespace dgrec {

std::vector<int> mark(const LocalIndicators& li, double fraction) {
  std::vector<int> marked;
  const int nt = static_cast<int>(li.total.size());
  if (nt == 0) return marked;
  const double mx = li.total.maxCoeff();
  if (mx <= 0.0) return marked;
  const double thr = fraction * mx;
  for (int t = 0; t < nt; ++t)
    if (li.total[t] > thr) marked.push_back(t);
  return marked;
}

}  // namespace dgrec
