#pragma once

// Exterior algebra Λ(e_1..e_k) as a cochain complex graded by word length,
// with a derivation given on generators and a weight filtration.

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "oracles/exterior.hpp"
#include "sseq/filtered.hpp"
#include "sseq/multalg.hpp"

namespace testing_helpers {

struct ExteriorComplex {
  int k = 0;
  std::vector<std::vector<oracle::Word>> basis;  // basis[n] = words of length n
  std::shared_ptr<sseq::FilteredComplex> fk;

  std::size_t index(const oracle::Word& w) const {
    const auto& b = basis[w.size()];
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b[i] == w) return i;
    return b.size();
  }

  sseq::Vector to_vector(const oracle::Element& e, int n) const {
    sseq::Vector v(basis[n].size(), 0);
    for (const auto& [w, c] : e) v[index(w)] += c;
    return v;
  }

  oracle::Element to_element(const sseq::Vector& v, int n) const {
    oracle::Element e;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) e[basis[n][i]] = v[i];
    return e;
  }

  sseq::ChainProduct product() const {
    return [this](int a, const sseq::Vector& x, int b, const sseq::Vector& y) {
      return to_vector(to_element(x, a) * to_element(y, b), a + b);
    };
  }
};

/// `images[g]` is d(e_g); `weight(word)` defines F^p = span of words of weight ≥ p.
inline ExteriorComplex make_exterior_complex(int k, const std::map<int, oracle::Element>& images,
                                             const std::function<int(const oracle::Word&)>& weight) {
  ExteriorComplex ec;
  ec.k = k;
  ec.basis.resize(k + 1);
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    oracle::Word w;
    for (int g = 0; g < k; ++g)
      if (mask & (1u << g)) w.push_back(g);
    ec.basis[w.size()].push_back(w);
  }
  for (auto& b : ec.basis) std::sort(b.begin(), b.end());
  std::vector<std::size_t> dims;
  for (const auto& b : ec.basis) dims.push_back(b.size());
  std::vector<sseq::Matrix> ds;
  for (int n = 0; n < k; ++n) {
    sseq::Matrix d(dims[n + 1], dims[n]);
    for (std::size_t j = 0; j < dims[n]; ++j) {
      auto v = ec.to_vector(oracle::apply_odd_derivation(images, ec.basis[n][j]), n + 1);
      for (std::size_t i = 0; i < v.size(); ++i) d(i, j) = v[i];
    }
    ds.push_back(d);
  }
  sseq::CochainComplex cx(0, k, dims, ds);
  int max_weight = 0;
  for (const auto& b : ec.basis)
    for (const auto& w : b) max_weight = std::max(max_weight, weight(w));
  std::vector<std::vector<sseq::Subspace>> levels;
  for (int p = 0; p <= max_weight + 1; ++p) {
    std::vector<sseq::Subspace> row;
    for (int n = 0; n <= k; ++n) {
      std::vector<sseq::Vector> span;
      for (std::size_t i = 0; i < dims[n]; ++i)
        if (weight(ec.basis[n][i]) >= p) span.push_back(sseq::unit_vector(dims[n], i));
      row.push_back(sseq::Subspace::span(span, dims[n]));
    }
    levels.push_back(row);
  }
  ec.fk = std::make_shared<sseq::FilteredComplex>(cx, sseq::Filtration(0, k, dims, 0, levels));
  return ec;
}

}  // namespace testing_helpers
