#include "gcred/form.hpp"

namespace gcred {

std::vector<Mask> masks_of_degree(std::size_t n, int degree) {
  if (n > kMaxFormDim) throw std::invalid_argument("form dimension exceeds supported maximum");
  std::vector<Mask> out;
  if (degree < 0 || degree > static_cast<int>(n)) return out;
  if (degree == 0) return {Mask{0}};
  // Gosper's hack enumerates same-popcount masks in increasing order.
  Mask m = (Mask{1} << degree) - 1;
  const Mask limit = Mask{1} << n;
  while (m < limit) {
    out.push_back(m);
    Mask low = m & (~m + 1);
    Mask ripple = m + low;
    m = (((ripple ^ m) >> 2) / low) | ripple;
    if (ripple == 0) break;
  }
  return out;
}

}  // namespace gcred
