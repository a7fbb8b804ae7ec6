#pragma once

#include "casimir/imagesum.hpp"

namespace casimir::detail {

/// Sum term(n) over n in [-N, N] in the order fixed by the policy.
template <class Term>
double image_sum(const TruncationPolicy& policy, Term&& term) {
  double sum = 0.0;
  if (!policy.pair_symmetric) {
    for (int n = -policy.N; n <= policy.N; ++n) sum += term(n);
    return sum;
  }
  for (int n = 1; n <= policy.N; ++n) {
    const double up = term(n);
    const double down = term(-n);
    sum += up + down;
  }
  return sum + term(0);
}

}  // namespace casimir::detail
