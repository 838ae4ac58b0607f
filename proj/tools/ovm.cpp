// Copyright 2026 The Overmeasure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ovm: command-line front end for the overmeasure library.
//
// Exit codes: 0 = affirmative verdict / success, 1 = negative verdict
// (incompatible pair, failed verify suite), 2 = operational error (usage,
// parse, or validation failure). All reports go to stdout; files are
// written only where an output path is given.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ovm/compatibility.hpp"
#include "ovm/error.hpp"
#include "ovm/obsfile.hpp"
#include "ovm/observables.hpp"
#include "ovm/premeasurement.hpp"
#include "ovm/verify.hpp"

namespace {

using namespace ovm;

// Round a projector trace to its integer rank for display.
std::size_t projector_rank(const ComplexMatrix& p) {
  return static_cast<std::size_t>(std::llround(p.trace().real()));
}

std::string format_index_list(const std::vector<std::size_t>& xs) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out << ", ";
    out << xs[i];
  }
  out << "]";
  return out.str();
}

int run_compat(const std::string& path1, const std::string& path2,
               const Tolerance& tol) {
  const SpectralForm o1 = read_observable_file(path1, tol).observable;
  const SpectralForm o2 = read_observable_file(path2, tol).observable;
  if (o1.dim() != o2.dim())
    throw Error(ErrorKind::kDimMismatch,
                "observables act on different spaces (" +
                    std::to_string(o1.dim()) + " vs " +
                    std::to_string(o2.dim()) + ")");

  std::cout << "dim: " << o1.dim() << "\n";
  std::cout << "first terms: " << o1.term_count() << "\n";
  std::cout << "second terms: " << o2.term_count() << "\n";

  const ComplexMatrix a = o1.matrix();
  const ComplexMatrix b = o2.matrix();
  std::cout << "operator commutator norm: "
            << format_real((a * b - b * a).frobenius_norm()) << "\n";
  std::cout << "projector commutator norms:\n";
  bool all_commute = true;
  for (std::size_t m = 0; m < o1.term_count(); ++m)
    for (std::size_t n = 0; n < o2.term_count(); ++n) {
      const ComplexMatrix& e = o1.projector(m);
      const ComplexMatrix& f = o2.projector(n);
      const double norm = (e * f - f * e).frobenius_norm();
      if (norm > tol.eps_eq) all_commute = false;
      std::cout << "  (" << m << "," << n << "): " << format_real(norm)
                << "\n";
    }
  std::cout << "compatible: " << (all_commute ? "yes" : "no") << "\n";
  return all_commute ? 0 : 1;
}

void print_refined(const SpectralForm& refined,
                   const std::vector<IndexSurjection>& onto) {
  std::cout << "compatible: yes\n";
  std::cout << "refined terms: " << refined.term_count() << "\n";
  for (std::size_t k = 0; k < refined.term_count(); ++k) {
    std::cout << "term " << k << ": value=" << format_real(refined.value(k))
              << " rank=" << projector_rank(refined.projector(k));
    for (std::size_t i = 0; i < onto.size(); ++i)
      std::cout << " map" << i << "=" << onto[i].image[k];
    std::cout << "\n";
  }
  for (std::size_t i = 0; i < onto.size(); ++i)
    std::cout << "map " << i << ": " << format_index_list(onto[i].image)
              << "\n";
}

int run_refine(const std::string& path1, const std::string& path2,
               const std::string& out_path, const Tolerance& tol) {
  const SpectralForm o1 = read_observable_file(path1, tol).observable;
  const SpectralForm o2 = read_observable_file(path2, tol).observable;
  std::optional<CommonRefinement> r;
  try {
    r = maximal_common_refinement(o1, o2, tol);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kNotCompatible) {
      std::cout << "compatible: no\n";
      std::cout << "error: " << e.message() << "\n";
      return 1;  // negative verdict, nothing written
    }
    throw;
  }
  print_refined(r->refined, {r->onto_first, r->onto_second});
  write_observable_file(out_path, r->refined,
                        {r->onto_first.image, r->onto_second.image});
  return 0;
}

int run_refine_multi(const std::vector<std::string>& paths,
                     const std::string& out_path, const Tolerance& tol) {
  std::vector<SpectralForm> os;
  os.reserve(paths.size());
  for (const std::string& p : paths)
    os.push_back(read_observable_file(p, tol).observable);
  std::optional<MultiRefinement> r;
  try {
    r = multi_common_refinement(os, tol);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kNotCompatible) {
      std::cout << "compatible: no\n";
      std::cout << "error: " << e.message() << "\n";
      return 1;
    }
    throw;
  }
  print_refined(r->refined, r->onto);
  std::vector<std::vector<std::size_t>> maps;
  maps.reserve(r->onto.size());
  for (const IndexSurjection& s : r->onto) maps.push_back(s.image);
  write_observable_file(out_path, r->refined, maps);
  return 0;
}

int run_coarsen(const std::string& path, const std::string& func,
                const std::vector<double>& affine_args,
                const std::string& out_path, const Tolerance& tol) {
  const SpectralForm o = read_observable_file(path, tol).observable;

  std::function<double(double)> f;
  if (func == "square") {
    f = [](double x) { return x * x; };
  } else if (func == "abs") {
    f = [](double x) { return std::fabs(x); };
  } else if (func == "sign") {
    f = [](double x) { return (x > 0.0) ? 1.0 : (x < 0.0) ? -1.0 : 0.0; };
  } else if (func == "affine") {
    if (affine_args.size() != 2)
      throw CLI::ValidationError("coarsen",
                                 "affine requires two arguments: a b");
    const double a = affine_args[0];
    const double b = affine_args[1];
    f = [a, b](double x) { return a * x + b; };
  } else {
    throw CLI::ValidationError(
        "coarsen", "unknown function '" + func +
                       "' (choose square, abs, sign, or affine a b)");
  }
  if (func != "affine" && !affine_args.empty())
    throw CLI::ValidationError("coarsen",
                               "numeric arguments only apply to affine");

  const auto [coarse, s] = coarsen_by_function(o, f, tol);
  std::cout << "dim: " << o.dim() << "\n";
  std::cout << "fine terms: " << o.term_count() << "\n";
  std::cout << "coarse terms: " << coarse.term_count() << "\n";
  std::cout << "map: " << format_index_list(s.image) << "\n";
  std::cout << format_observable(coarse);
  if (!out_path.empty()) write_observable_file(out_path, coarse);
  return 0;
}

int run_coarsenings(const std::string& path, const Tolerance& tol) {
  const SpectralForm o = read_observable_file(path, tol).observable;
  CoarseningEnumerator en(o, tol);
  std::cout << "dim: " << o.dim() << "\n";
  std::cout << "terms: " << o.term_count() << "\n";

  std::size_t count = 0;
  std::ostringstream body;
  while (std::optional<CoarseningEnumerator::Item> item = en.next()) {
    body << "  " << count << ":";
    for (const std::vector<std::size_t>& cls : item->partition.classes) {
      body << " {";
      for (std::size_t i = 0; i < cls.size(); ++i) {
        if (i) body << ",";
        body << cls[i];
      }
      body << "}";
    }
    body << " -> " << item->coarse.term_count() << " terms\n";
    ++count;
  }
  std::cout << "coarsenings: " << count << "\n" << body.str();
  return 0;
}

int run_simulate(const std::string& path1, const std::string& path2,
                 const std::string& state_path, std::uint64_t seed,
                 std::size_t samples, const Tolerance& tol) {
  const SpectralForm o1 = read_observable_file(path1, tol).observable;
  const SpectralForm o2 = read_observable_file(path2, tol).observable;
  ComplexVector psi = read_state_file(state_path);

  std::optional<CommonRefinement> ref;
  try {
    ref = maximal_common_refinement(o1, o2, tol);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kNotCompatible) {
      std::cout << "compatible: no\n";
      std::cout << "error: " << e.message() << "\n";
      return 1;
    }
    throw;
  }
  const CommonRefinement& r = *ref;

  const PremeasurementSetup setup = build_premeasurement(r.refined, tol);
  const CompositeState evolved = evolve(setup, psi, tol);
  const std::vector<double> exact = branch_probabilities(setup, evolved);
  const std::size_t terms = r.refined.term_count();

  std::vector<std::size_t> counts(terms, 0);
  if (samples > 0) {
    Rng rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
      const SimultaneousOutcome out =
          simultaneous_measure(o1, o2, psi, rng, tol);
      counts.at(out.outcome.fine_index)++;
    }
  }

  std::cout << "dim: " << o1.dim() << "\n";
  std::cout << "refined terms: " << terms << "\n";
  std::cout << "samples: " << samples << "\n";
  if (samples > 0) std::cout << "seed: " << seed << "\n";

  std::cout << "joint outcomes:\n";
  for (std::size_t k = 0; k < terms; ++k) {
    std::cout << "  outcome " << k << ": first="
              << format_real(o1.value(r.onto_first.image[k]))
              << " second=" << format_real(o2.value(r.onto_second.image[k]))
              << " exact=" << format_real(exact[k]);
    if (samples > 0)
      std::cout << " count=" << counts[k] << " freq="
                << format_real(static_cast<double>(counts[k]) /
                               static_cast<double>(samples));
    std::cout << "\n";
  }

  struct Marginal {
    const SpectralForm* obs;
    const IndexSurjection* onto;
    const char* label;
  };
  const Marginal marginals[2] = {{&o1, &r.onto_first, "first"},
                                 {&o2, &r.onto_second, "second"}};
  for (const Marginal& m : marginals) {
    std::cout << "marginal " << m.label << ":\n";
    for (std::size_t l = 0; l < m.obs->term_count(); ++l) {
      double p = 0.0;
      std::size_t c = 0;
      for (std::size_t k = 0; k < terms; ++k)
        if (m.onto->image[k] == l) {
          p += exact[k];
          c += counts[k];
        }
      std::cout << "  value " << format_real(m.obs->value(l))
                << ": exact=" << format_real(p);
      if (samples > 0)
        std::cout << " freq="
                  << format_real(static_cast<double>(c) /
                                 static_cast<double>(samples));
      std::cout << "\n";
    }
  }
  return 0;
}

std::vector<std::size_t> parse_dims(const std::string& text) {
  // Accepts "2..6" or a comma list "2,4,6".
  std::vector<std::size_t> dims;
  const std::size_t dots = text.find("..");
  try {
    if (dots != std::string::npos) {
      const std::size_t lo = std::stoul(text.substr(0, dots));
      const std::size_t hi = std::stoul(text.substr(dots + 2));
      if (lo == 0 || hi < lo) throw std::invalid_argument("range");
      for (std::size_t d = lo; d <= hi; ++d) dims.push_back(d);
    } else {
      std::stringstream ss(text);
      std::string part;
      while (std::getline(ss, part, ',')) {
        const std::size_t d = std::stoul(part);
        if (d == 0) throw std::invalid_argument("dim");
        dims.push_back(d);
      }
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError(
        "--dims", "expected a range like 2..6 or a list like 2,4,6");
  }
  if (dims.empty())
    throw CLI::ValidationError("--dims", "no dimensions given");
  return dims;
}

int run_verify(const std::string& suite, const std::string& dims_text,
               std::size_t cases, std::uint64_t seed, const Tolerance& tol) {
  const std::vector<std::size_t> dims = parse_dims(dims_text);
  std::vector<SuiteReport> reports;
  if (suite == "lattice" || suite == "all")
    reports.push_back(run_lattice_suite(dims, cases, seed, tol));
  if (suite == "claims" || suite == "all")
    reports.push_back(run_claims_suite(dims, cases, seed, tol));
  if (suite == "overmeasurement" || suite == "all")
    reports.push_back(
        run_overmeasurement_suite(dims, cases, 100, 10, seed, tol));

  bool all_passed = true;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) std::cout << "\n";
    std::cout << format_report(reports[i]);
    all_passed = all_passed && reports[i].all_passed();
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional observable algebra tool: spectral forms, "
               "coarsening, compatibility, common refinements, and "
               "calibrated measurement simulation"};
  app.require_subcommand(1);
  app.fallthrough();

  double tol_eq = 1e-9;
  double tol_cluster = 1e-6;
  std::uint64_t seed = 0;
  app.add_option("--tol-eq", tol_eq,
                 "Equality tolerance for operator comparisons")
      ->capture_default_str();
  app.add_option("--tol-cluster", tol_cluster,
                 "Eigenvalue clustering tolerance")
      ->capture_default_str();
  app.add_option("--seed", seed, "Random seed for sampling and verify suites")
      ->capture_default_str();

  std::string file1, file2, out_path, state_path;
  std::vector<std::string> multi_files;
  std::string func;
  std::vector<double> affine_args;
  std::size_t samples = 1000;
  std::string suite = "all";
  std::string dims_text = "2..5";
  std::size_t cases = 20;

  CLI::App* compat =
      app.add_subcommand("compat", "Decide whether two observables are "
                                   "compatible (all eigenprojectors commute)");
  compat->add_option("file1", file1, "First observable file")->required();
  compat->add_option("file2", file2, "Second observable file")->required();

  CLI::App* refine = app.add_subcommand(
      "refine", "Write the maximal common refinement of two compatible "
                "observables, with index maps onto each input");
  refine->add_option("file1", file1, "First observable file")->required();
  refine->add_option("file2", file2, "Second observable file")->required();
  refine->add_option("out", out_path, "Output observable file")->required();

  CLI::App* refine_multi = app.add_subcommand(
      "refine-multi", "Maximal common refinement of several pairwise "
                      "compatible observables");
  refine_multi->add_option("files", multi_files, "Observable files")
      ->required()
      ->expected(-1);
  refine_multi->add_option("-o,--out", out_path, "Output observable file")
      ->required();

  CLI::App* coarsen = app.add_subcommand(
      "coarsen", "Apply a spectral function (square, abs, sign, affine a b) "
                 "to an observable");
  coarsen->add_option("file", file1, "Observable file")->required();
  coarsen->add_option("function", func,
                      "One of: square, abs, sign, affine")
      ->required();
  coarsen->add_option("args", affine_args,
                      "Numeric arguments (affine takes a b)");
  coarsen->add_option("-o,--out", out_path, "Optional output observable file");

  CLI::App* coarsenings = app.add_subcommand(
      "coarsenings", "Enumerate every coarsening of an observable (one per "
                     "partition of its outcome indices)");
  coarsenings->add_option("file", file1, "Observable file")->required();

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Simultaneously measure two compatible observables on a "
                  "state: exact Born probabilities plus sampled outcomes");
  simulate->add_option("file1", file1, "First observable file")->required();
  simulate->add_option("file2", file2, "Second observable file")->required();
  simulate->add_option("state", state_path, "State file")->required();
  simulate->add_option("--samples", samples, "Number of sampled shots")
      ->capture_default_str();

  CLI::App* verify = app.add_subcommand(
      "verify", "Run randomized property suites and report pass/fail per "
                "check");
  verify->add_option("--suite", suite,
                     "Suite: lattice, claims, overmeasurement, or all")
      ->check(CLI::IsMember({"lattice", "claims", "overmeasurement", "all"}))
      ->capture_default_str();
  verify->add_option("--dims", dims_text, "Dimensions: a range 2..6 or list "
                                          "2,4,6")
      ->capture_default_str();
  verify->add_option("--cases", cases, "Cases per dimension and check")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const ovm::Tolerance tol(tol_eq, tol_cluster);
    if (compat->parsed()) return run_compat(file1, file2, tol);
    if (refine->parsed()) return run_refine(file1, file2, out_path, tol);
    if (refine_multi->parsed())
      return run_refine_multi(multi_files, out_path, tol);
    if (coarsen->parsed())
      return run_coarsen(file1, func, affine_args, out_path, tol);
    if (coarsenings->parsed()) return run_coarsenings(file1, tol);
    if (simulate->parsed())
      return run_simulate(file1, file2, state_path, seed, samples, tol);
    if (verify->parsed())
      return run_verify(suite, dims_text, cases, seed, tol);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ovm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // unreachable: a subcommand is required
}
