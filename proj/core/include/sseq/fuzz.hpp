#pragma once

// Seeded generators and the randomized invariant suite.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sseq/filtered.hpp"
#include "sseq/geometry.hpp"
#include "sseq/multalg.hpp"

namespace sseq {

/// mt19937_64 with draws that do not depend on the standard library's
/// distribution implementations, so outputs are identical everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream);

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  int uniform(int lo, int hi);
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 engine_;
};

struct ComplexBounds {
  int degree_min = -4;
  int degree_max = 4;
  std::size_t max_dim = 8;
  int max_width = 4;
  int p_min = -2;
  int p_max = 2;
  /// Upper bound on the number of degrees.
  int max_length = 9;
};

/// Random bounded complex with a random compatible filtration, presented in
/// a scrambled integral basis so filtration levels are not coordinate spans.
FilteredComplex random_filtered_complex(Rng& rng, const ComplexBounds& bounds);

/// Filtered complex K^m = ⊕_{p+q=m} A^{p,q}, F^p = ⊕_{p'≥p} A^{p',*} with
/// differential d; its E₂ is A with d₂ = d. Requires d∘d = 0.
FilteredComplex derivation_complex(const Derivation& d);

struct DerivationCase {
  VarietyModel model;
  ObstructionDatum alpha;
  bool omega_constraint = false;
};

/// Random model (torus, projective space or a product) with random (0,1)
/// generator images; with `omega_constraint` the images satisfy d(ω) = 0.
DerivationCase random_derivation_case(Rng& rng, bool omega_constraint);

struct FuzzConfig {
  std::uint64_t seed = 0;
  std::size_t complex_cases = 200;
  std::size_t derivation_cases = 100;
  int max_page = 6;
  ComplexBounds bounds;
  /// 0 means SS_THREADS or the hardware concurrency.
  unsigned threads = 0;
};

struct Counterexample {
  std::string suite;
  std::size_t index = 0;
  std::string check;
  std::string message;
  nlohmann::ordered_json instance;
};

struct FuzzReport {
  std::map<std::string, std::size_t> checks;
  std::size_t certified = 0;
  std::size_t not_certified = 0;
  std::vector<Counterexample> counterexamples;
};

/// Oracle, abutment, décalage, monotonicity and d∘d checks on one complex.
/// Returns a failure description or nullopt.
struct ComplexCheckResult {
  std::map<std::string, std::size_t> checks;
  std::optional<std::pair<std::string, std::string>> failure;
};
ComplexCheckResult check_complex(const FilteredComplex& fk, int max_page);

struct DerivationCheckResult {
  std::map<std::string, std::size_t> checks;
  bool certified = false;
  std::optional<std::pair<std::string, std::string>> failure;
};
DerivationCheckResult check_derivation_case(const DerivationCase& c);

FuzzReport run_fuzz(const FuzzConfig& config);
nlohmann::ordered_json fuzz_report_to_json(const FuzzConfig& config, const FuzzReport& report);

/// Worker count from SS_THREADS, falling back to the hardware concurrency.
unsigned default_threads();

}  // namespace sseq
