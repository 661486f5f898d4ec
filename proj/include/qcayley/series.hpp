#pragma once

#include <cstddef>

#include "qcayley/scalar.hpp"

namespace qcayley {

/// Certificate for a tail bound: from index `crossover` on, consecutive terms
/// shrink at least by `ratio` < 1, so the tail past `crossover` is at most
/// term(crossover) / (1 - ratio).
struct TailCertificate {
  Rational ratio;
  std::size_t crossover = 0;
};

/// Truncated nonnegative series: the true sum lies in [partial, partial + tail_bound].
struct SeriesResult {
  Rational partial;
  Rational tail_bound;
  std::size_t terms_used = 0;
  TailCertificate certificate;

  Interval enclosure() const { return Interval(partial, partial + tail_bound); }
};

}  // namespace qcayley
