#pragma once

// Brute-force exterior algebra on words of generators. Generator 2i is xi_{i+1}
// and 2i+1 is eta_{i+1}; a monomial is a strictly increasing word. Products
// are formed by concatenation and bubble sorting, one sign flip per swap.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sseq/multalg.hpp"

namespace oracle {

using Word = std::vector<int>;
struct Element : std::map<Word, mpq_class> {
  using std::map<Word, mpq_class>::map;
};

inline void add_term(Element& e, Word w, mpq_class c) {
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
      if (w[j] > w[j + 1]) {
        std::swap(w[j], w[j + 1]);
        c = -c;
      }
  for (std::size_t j = 0; j + 1 < w.size(); ++j)
    if (w[j] == w[j + 1]) return;
  e[w] += c;
  if (e[w] == 0) e.erase(w);
}

inline Element gen(int g) { return {{Word{g}, 1}}; }
inline Element xi(int i) { return gen(2 * (i - 1)); }
inline Element eta(int i) { return gen(2 * (i - 1) + 1); }
inline Element one() { return {{Word{}, 1}}; }

inline Element operator*(const Element& a, const Element& b) {
  Element out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      add_term(out, w, ca * cb);
    }
  return out;
}

inline Element operator+(const Element& a, const Element& b) {
  Element out = a;
  for (const auto& [w, c] : b) add_term(out, w, c);
  return out;
}

inline Element scaled(const Element& a, const mpq_class& s) {
  Element out;
  if (s == 0) return out;
  for (const auto& [w, c] : a) out[w] = c * s;
  return out;
}

/// Leibniz expansion of an odd derivation given by its generator images.
inline Element apply_odd_derivation(const std::map<int, Element>& images, const Word& w) {
  Element out;
  for (std::size_t j = 0; j < w.size(); ++j) {
    auto it = images.find(w[j]);
    if (it == images.end()) continue;
    Element left = one();
    for (std::size_t k = 0; k < j; ++k) left = left * gen(w[k]);
    Element right = one();
    for (std::size_t k = j + 1; k < w.size(); ++k) right = right * gen(w[k]);
    Element term = left * it->second * right;
    out = out + scaled(term, j % 2 == 0 ? 1 : -1);
  }
  return out;
}

inline std::string generator_name(int g) {
  return (g % 2 == 0 ? "xi" : "eta") + std::to_string(g / 2 + 1);
}

inline std::string word_name(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "*" : "") + generator_name(w[i]);
  return s;
}

/// Coordinates in a torus model basis, matched by monomial names.
inline sseq::Vector to_vector(const Element& e, const sseq::BigradedAlgebra& a) {
  sseq::Vector v(a.dim(), 0);
  for (const auto& [w, c] : e) v[*a.find(word_name(w))] += c;
  return v;
}

/// The monomial word behind a torus basis element.
inline Word word_of(const sseq::BigradedAlgebra& a, std::size_t i) {
  Word w;
  const std::string& name = a.element(i).name;
  if (name == "1") return w;
  std::size_t pos = 0;
  while (pos < name.size()) {
    std::size_t end = name.find('*', pos);
    if (end == std::string::npos) end = name.size();
    std::string g = name.substr(pos, end - pos);
    bool is_xi = g.rfind("xi", 0) == 0;
    int k = std::stoi(g.substr(is_xi ? 2 : 3));
    w.push_back(2 * (k - 1) + (is_xi ? 0 : 1));
    pos = end + 1;
  }
  return w;
}

}  // namespace oracle
