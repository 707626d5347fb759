#pragma once

#include <memory>
#include <vector>

#include "sseq/exactla.hpp"
#include "sseq/filtered.hpp"

namespace testing_helpers {

using sseq::Matrix;
using sseq::Scalar;
using sseq::Subspace;
using sseq::Vector;

inline Matrix mat(std::initializer_list<std::initializer_list<int>> rows, std::size_t cols) {
  std::vector<Vector> rs;
  for (const auto& r : rows) {
    Vector v;
    for (int x : r) v.emplace_back(x);
    rs.push_back(v);
  }
  return Matrix::from_rows(rs, cols);
}

/// Q·x → Q·dx with F⁰K⁰ = K⁰, F¹K⁰ = 0, F²K¹ = K¹, F³K¹ = 0.
inline sseq::FilteredComplex acyclic_example() {
  sseq::CochainComplex k(0, 1, {1, 1}, {Matrix::identity(1)});
  std::vector<std::vector<Subspace>> levels;
  levels.push_back({Subspace::full(1), Subspace::full(1)});   // p = 0
  levels.push_back({Subspace::zero(1), Subspace::full(1)});   // p = 1
  levels.push_back({Subspace::zero(1), Subspace::full(1)});   // p = 2
  levels.push_back({Subspace::zero(1), Subspace::zero(1)});   // p = 3
  return sseq::FilteredComplex(k, sseq::Filtration(0, 1, {1, 1}, 0, levels));
}

inline sseq::CochainComplex zero_complex(int lo, std::vector<std::size_t> dims) {
  std::vector<Matrix> ds;
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) ds.emplace_back(dims[i + 1], dims[i]);
  return sseq::CochainComplex(lo, lo + static_cast<int>(dims.size()) - 1, dims, ds);
}

}  // namespace testing_helpers
