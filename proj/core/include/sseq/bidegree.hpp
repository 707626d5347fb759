#pragma once

#include <compare>
#include <string>

namespace sseq {

/// Position (p, q) on a page or in a bigraded algebra; total degree p + q.
struct Bidegree {
  int p = 0;
  int q = 0;

  int total() const { return p + q; }
  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
  friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.p + b.p, a.q + b.q}; }
};

/// "p,q", the key format used by every JSON document.
inline std::string to_string(Bidegree b) { return std::to_string(b.p) + "," + std::to_string(b.q); }

}  // namespace sseq
