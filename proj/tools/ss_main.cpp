// ss: command-line front end for the spectral sequence engine.
//
// Exit codes: 0 success, 2 certificate not issued, 3 parse error,
// 4 input invariant violation, 5 internal mismatch.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "sseq/error.hpp"
#include "sseq/fuzz.hpp"
#include "sseq/geometry.hpp"
#include "sseq/json_io.hpp"
#include "sseq/lefschetz.hpp"
#include "sseq/spectral.hpp"

using namespace sseq;

namespace {

enum Exit { kOk = 0, kCertifyFailed = 2, kParse = 3, kInvariant = 4, kMismatch = 5 };

std::string out_path;

void emit(const ordered_json& j) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ParseError(out_path, "cannot open output file");
  out << j.dump(2) << "\n";
}

int report_error(const char* kind, const std::string& message, const std::string& where, int code) {
  ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  if (!where.empty()) j["where"] = where;
  std::cerr << j.dump(2) << "\n";
  return code;
}

ordered_json pages_json(SpectralSequence& ss, int pages, bool with_maps) {
  ordered_json out;
  ordered_json dims = ordered_json::object();
  ordered_json maps = ordered_json::object();
  for (int r = 1; r <= pages; ++r) {
    const Page& p = ss.page(r);
    dims[std::to_string(r)] = dims_to_json(p.dims());
    if (!with_maps) continue;
    ordered_json pm = ordered_json::object();
    for (const auto& [b, cell] : p.cells()) {
      if (cell.space.dim() == 0 || p.dim(p.target(b)) == 0) continue;
      pm[to_string(b)] = matrix_to_json(p.differential(b));
    }
    maps[std::to_string(r)] = pm;
  }
  out["pages"] = dims;
  if (with_maps) out["maps"] = maps;
  return out;
}

ordered_json abutment_json(const AbutmentReport& rep) {
  ordered_json out;
  out["stable_page"] = rep.stable_page;
  out["e_infinity"] = dims_to_json(rep.e_infinity);
  ordered_json degrees = ordered_json::object();
  for (const auto& row : rep.rows)
    degrees[std::to_string(row.degree)] = {{"e_infinity", row.e_infinity}, {"cohomology", row.cohomology}};
  out["degrees"] = degrees;
  out["check"] = "pass";
  return out;
}

VarietyModel load_model(const std::string& path) {
  VarietyModel m = model_from_json(load_json(path));
  validate_model(m);
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral sequences of filtered complexes, Lefschetz structures and degeneration certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_flag = true;
  app.add_flag("--json", json_flag, "JSON output (the only format)");
  app.add_option("--out", out_path, "Write the result to a file instead of stdout");

  std::string input;
  int pages = 4;
  bool with_maps = false;
  auto* compute = app.add_subcommand("compute", "Pages, differentials and the abutment check");
  compute->add_option("--input", input, "Filtered complex JSON")->required();
  compute->add_option("--pages", pages, "Number of pages")->check(CLI::PositiveNumber);
  compute->add_flag("--with-maps", with_maps, "Include differential matrices");

  auto* oracle = app.add_subcommand("oracle", "Compare iterated pages with the direct cycle/boundary formula");
  oracle->add_option("--input", input, "Filtered complex JSON")->required();
  oracle->add_option("--pages", pages, "Number of pages")->check(CLI::PositiveNumber);

  int dec_pages = 3;
  auto* dec = app.add_subcommand("decalage", "Pages of the shifted filtration against renumbered original pages");
  dec->add_option("--input", input, "Filtered complex JSON")->required();
  dec->add_option("--pages", dec_pages, "Number of pages of the shifted filtration")->check(CLI::PositiveNumber);

  std::string algebra_path, derivation_path;
  bool square_zero = false;
  auto* certify = app.add_subcommand("certify", "Replay the Lefschetz degeneration argument on (algebra, derivation)");
  certify->add_option("--algebra", algebra_path, "Algebra JSON")->required();
  certify->add_option("--derivation", derivation_path, "Derivation JSON (defaults to the algebra's own \"derivation\")");
  certify->add_flag("--require-square-zero", square_zero, "Also require d o d = 0");

  int model_n = 1;
  std::string model_a, model_b;
  auto* model = app.add_subcommand("model", "Build a model algebra");
  model->require_subcommand(1);
  model->fallthrough();
  auto* m_torus = model->add_subcommand("torus", "Exterior algebra model of an n-dimensional torus");
  m_torus->add_option("--n", model_n, "Dimension")->required();
  auto* m_pn = model->add_subcommand("pn", "Truncated polynomial model of projective space");
  m_pn->add_option("--n", model_n, "Dimension")->required();
  auto* m_prod = model->add_subcommand("product", "Graded tensor product of two models");
  m_prod->add_option("--a", model_a, "First model JSON")->required();
  m_prod->add_option("--b", model_b, "Second model JSON")->required();
  for (auto* sub : {m_torus, m_pn, m_prod}) sub->add_option("--out", out_path, "Output file");

  std::string model_path;
  auto* ext = app.add_subcommand("ext-dims", "dim Ext^k of a degenerate second page");
  ext->add_option("--model", model_path, "Model JSON")->required();

  std::string alpha_path, scale_text = "1";
  auto* d2 = app.add_subcommand("d2", "Second-page differential from generator images");
  d2->add_option("--model", model_path, "Model JSON")->required();
  d2->add_option("--alpha", alpha_path, "Alpha JSON")->required();
  d2->add_option("--scale", scale_text, "Rational scale s/t");

  FuzzConfig fuzz_cfg;
  std::int64_t deriv_cases = -1;
  unsigned threads = 0;
  auto* fuzz = app.add_subcommand("fuzz", "Randomized invariant suite");
  fuzz->add_option("--seed", fuzz_cfg.seed, "Seed");
  fuzz->add_option("--cases", fuzz_cfg.complex_cases, "Random filtered complexes");
  fuzz->add_option("--derivation-cases", deriv_cases, "Random (model, derivation) pairs; default half of --cases");
  fuzz->add_option("--pages", fuzz_cfg.max_page, "Largest page compared")->check(CLI::PositiveNumber);
  fuzz->add_option("--threads", threads, "Worker threads; default SS_THREADS or hardware concurrency");

  for (auto* sub : {compute, oracle, dec, certify, ext, d2, fuzz}) sub->add_option("--out", out_path, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*compute) {
      auto fk = std::make_shared<const FilteredComplex>(filtered_complex_from_json(load_json(input)));
      SpectralSequence ss(fk);
      ordered_json out = pages_json(ss, pages, with_maps);
      out["abutment"] = abutment_json(e_infinity_compare(*fk));
      emit(out);
      return kOk;
    }
    if (*oracle) {
      auto fk = std::make_shared<const FilteredComplex>(filtered_complex_from_json(load_json(input)));
      SpectralSequence ss(fk);
      ordered_json out, rows = ordered_json::object();
      std::size_t mismatches = 0;
      for (int r = 1; r <= pages; ++r) {
        const Page& it = ss.page(r);
        Page direct = direct_page(fk, r);
        ordered_json cells = ordered_json::object();
        bool maps_agree = true;
        std::map<Bidegree, Matrix> phi;
        for (Bidegree b : page_support(*fk)) {
          std::size_t a = it.dim(b), c = direct.dim(b);
          if (a != c) ++mismatches;
          if (a || c) cells[to_string(b)] = {{"iterated", a}, {"direct", c}};
          if (a == c) phi.emplace(b, page_identification(direct.cell(b)->space, it.cell(b)->space));
        }
        for (const auto& [b, m] : phi) {
          auto t = phi.find(it.target(b));
          if (t == phi.end() || it.dim(b) == 0) continue;
          if (it.differential(b) * m != t->second * direct.differential(b)) maps_agree = false;
        }
        if (!maps_agree) ++mismatches;
        rows[std::to_string(r)] = {{"cells", cells}, {"differentials_agree", maps_agree}};
      }
      out["pages"] = rows;
      out["mismatches"] = mismatches;
      emit(out);
      return mismatches == 0 ? kOk : kMismatch;
    }
    if (*dec) {
      auto fk = std::make_shared<const FilteredComplex>(filtered_complex_from_json(load_json(input)));
      SpectralSequence ss(fk);
      SpectralSequence sd(decalage(*fk));
      ordered_json out, rows = ordered_json::array();
      bool all = true;
      for (int r = 1; r <= dec_pages; ++r) {
        std::map<Bidegree, std::size_t> renumbered;
        for (const auto& [b, dim] : sd.page(r).dims()) renumbered[{2 * b.p + b.q, -b.p}] = dim;
        const auto original = ss.page(r + 1).dims();
        const bool match = renumbered == original;
        all = all && match;
        rows.push_back({{"r", r},
                        {"decalage", dims_to_json(sd.page(r).dims())},
                        {"renumbered", dims_to_json(renumbered)},
                        {"original_next_page", dims_to_json(original)},
                        {"match", match}});
      }
      out["rows"] = rows;
      out["match"] = all;
      emit(out);
      return all ? kOk : kMismatch;
    }
    if (*certify) {
      json aj = load_json(algebra_path);
      VarietyModel m = model_from_json(aj);
      Derivation d;
      if (!derivation_path.empty()) {
        d = derivation_from_json(load_json(derivation_path), m.algebra.algebra_ptr());
      } else if (aj.contains("derivation")) {
        json dj = {{"derivation", aj.at("derivation")}};
        if (aj.contains("derivation_bidegree")) dj["bidegree"] = aj.at("derivation_bidegree");
        d = derivation_from_json(dj, m.algebra.algebra_ptr());
      } else {
        throw ParseError(algebra_path, "no --derivation given and the algebra has no \"derivation\" field");
      }
      Certificate c = degeneration_certify(m.algebra, d, {square_zero});
      emit(certificate_to_json(c, m.algebra.algebra()));
      return c.certified ? kOk : kCertifyFailed;
    }
    if (*model) {
      VarietyModel m;
      if (*m_torus) m = torus_model(model_n);
      if (*m_pn) m = projective_space_model(model_n);
      if (*m_prod) m = product_model(load_model(model_a), load_model(model_b));
      emit(model_to_json(m));
      return kOk;
    }
    if (*ext) {
      VarietyModel m = load_model(model_path);
      ordered_json out;
      out["model"] = m.name;
      out["ext_dimensions"] = ext_dimensions(m, true);
      emit(out);
      return kOk;
    }
    if (*d2) {
      VarietyModel m = load_model(model_path);
      Scalar scale;
      try {
        scale = parse_scalar(scale_text);
      } catch (const ParseError& e) {
        throw ParseError("--scale", e.what());
      }
      Derivation d = d2_from_alpha(m, alpha_from_json(load_json(alpha_path), m, scale));
      ordered_json out = derivation_to_json(d);
      out["model"] = m.name;
      out["scale"] = format_scalar(scale);
      out["leibniz"] = verify_leibniz(d).holds;
      emit(out);
      return kOk;
    }
    if (*fuzz) {
      fuzz_cfg.derivation_cases =
          deriv_cases >= 0 ? static_cast<std::size_t>(deriv_cases) : fuzz_cfg.complex_cases / 2;
      fuzz_cfg.threads = threads;
      FuzzReport rep = run_fuzz(fuzz_cfg);
      emit(fuzz_report_to_json(fuzz_cfg, rep));
      return rep.counterexamples.empty() ? kOk : kMismatch;
    }
  } catch (const ParseError& e) {
    return report_error("parse", e.what(), e.where(), kParse);
  } catch (const InvariantViolation& e) {
    return report_error("invariant", e.what(), "", kInvariant);
  } catch (const Unsupported& e) {
    return report_error("unsupported", e.what(), "", kInvariant);
  } catch (const InternalMismatch& e) {
    return report_error("internal", e.what(), "", kMismatch);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), "", kMismatch);
  }
  return kOk;
}
