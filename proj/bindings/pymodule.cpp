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

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "ovm/compatibility.hpp"
#include "ovm/error.hpp"
#include "ovm/linalg.hpp"
#include "ovm/observables.hpp"
#include "ovm/premeasurement.hpp"

namespace py = pybind11;
using namespace py::literals;

namespace {

using ovm::ComplexMatrix;
using ovm::ComplexVector;
using ovm::cplx;
using ovm::SpectralForm;
using ovm::Tolerance;

using ComplexArray =
    py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

ComplexMatrix matrix_from_numpy(const ComplexArray& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-d array");
  ComplexMatrix m(static_cast<std::size_t>(a.shape(0)),
                  static_cast<std::size_t>(a.shape(1)));
  auto r = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i)
    for (py::ssize_t j = 0; j < a.shape(1); ++j)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = r(i, j);
  return m;
}

ComplexVector vector_from_numpy(const ComplexArray& a) {
  if (a.ndim() != 1) throw py::value_error("expected a 1-d array");
  ComplexVector v(static_cast<std::size_t>(a.shape(0)));
  auto r = a.unchecked<1>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i)
    v[static_cast<std::size_t>(i)] = r(i);
  return v;
}

py::array_t<std::complex<double>> matrix_to_numpy(const ComplexMatrix& m) {
  py::array_t<std::complex<double>> out({static_cast<py::ssize_t>(m.rows()),
                                         static_cast<py::ssize_t>(m.cols())});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      w(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j)) = m(i, j);
  return out;
}

py::array_t<std::complex<double>> vector_to_numpy(const ComplexVector& v) {
  py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(v.dim()));
  auto w = out.mutable_unchecked<1>();
  for (std::size_t i = 0; i < v.dim(); ++i)
    w(static_cast<py::ssize_t>(i)) = v[i];
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite-dimensional observable algebra: spectral forms, "
            "coarsening, compatibility, common refinements, and simulated "
            "simultaneous measurement.";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ovm::Error& e) {
      // what() carries "KindName: message"; the stable kind prefix lets
      // callers match on it.
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<Tolerance>(m, "Tolerance")
      .def(py::init<double, double>(), "eps_eq"_a = 1e-9,
           "eps_cluster"_a = 1e-6)
      .def_readonly("eps_eq", &Tolerance::eps_eq)
      .def_readonly("eps_cluster", &Tolerance::eps_cluster);

  py::class_<SpectralForm>(m, "SpectralForm")
      .def_property_readonly("dim", &SpectralForm::dim)
      .def_property_readonly("term_count", &SpectralForm::term_count)
      .def("value", &SpectralForm::value, "k"_a,
           "Eigenvalue of term k (strictly increasing in k).")
      .def("values",
           [](const SpectralForm& o) {
             std::vector<double> vals(o.term_count());
             for (std::size_t k = 0; k < o.term_count(); ++k)
               vals[k] = o.value(k);
             return vals;
           })
      .def("projector",
           [](const SpectralForm& o, std::size_t k) {
             return matrix_to_numpy(o.projector(k));
           },
           "k"_a, "Eigen-projector of term k as a complex array.")
      .def("matrix",
           [](const SpectralForm& o) { return matrix_to_numpy(o.matrix()); },
           "Reconstructed Hermitian matrix, sum of value * projector.")
      .def("__repr__", [](const SpectralForm& o) {
        return "SpectralForm(dim=" + std::to_string(o.dim()) +
               ", terms=" + std::to_string(o.term_count()) + ")";
      });

  m.def("from_matrix",
        [](const ComplexArray& a, const Tolerance& tol) {
          return ovm::from_matrix(matrix_from_numpy(a), tol);
        },
        "matrix"_a, "tol"_a = Tolerance(),
        "Spectral form of a Hermitian matrix, eigenvalues ascending.");

  m.def("structural_eq",
        [](const SpectralForm& a, const SpectralForm& b, const Tolerance& tol) {
          return ovm::structural_eq(a, b, tol);
        },
        "a"_a, "b"_a, "tol"_a = Tolerance(),
        "Same projector family in the same order; values are ignored.");

  m.def("are_compatible",
        [](const SpectralForm& a, const SpectralForm& b, const Tolerance& tol) {
          return ovm::are_compatible(a, b, tol);
        },
        "a"_a, "b"_a, "tol"_a = Tolerance(),
        "True when every eigen-projector pair commutes.");

  m.def("maximal_common_refinement",
        [](const SpectralForm& a, const SpectralForm& b, const Tolerance& tol) {
          const ovm::CommonRefinement r =
              ovm::maximal_common_refinement(a, b, tol);
          return py::make_tuple(r.refined, r.onto_first.image,
                                r.onto_second.image);
        },
        "a"_a, "b"_a, "tol"_a = Tolerance(),
        "Returns (refined, onto_first, onto_second); the maps send each "
        "refined term to the source term it lies under.");

  m.def("multi_common_refinement",
        [](const std::vector<SpectralForm>& os, const Tolerance& tol) {
          const ovm::MultiRefinement r = ovm::multi_common_refinement(os, tol);
          std::vector<std::vector<std::size_t>> maps;
          maps.reserve(r.onto.size());
          for (const ovm::IndexSurjection& s : r.onto) maps.push_back(s.image);
          return py::make_tuple(r.refined, maps);
        },
        "observables"_a, "tol"_a = Tolerance(),
        "Returns (refined, maps), one map per input observable.");

  m.def("complete_refinement",
        [](const SpectralForm& o, const Tolerance& tol) {
          return ovm::complete_refinement(o, tol);
        },
        "observable"_a, "tol"_a = Tolerance(),
        "Rank-one refinement with outcome labels 0..dim-1.");

  m.def("is_refinement",
        [](const SpectralForm& fine, const SpectralForm& coarse,
           const Tolerance& tol) -> std::optional<std::vector<std::size_t>> {
          const std::optional<ovm::IndexSurjection> s =
              ovm::is_refinement(fine, coarse, tol);
          if (!s) return std::nullopt;
          return s->image;
        },
        "fine"_a, "coarse"_a, "tol"_a = Tolerance(),
        "The witnessing index map when fine refines coarse, else None.");

  m.def("coarsen_by_function",
        [](const SpectralForm& o, const std::function<double(double)>& f,
           const Tolerance& tol) {
          const auto [coarse, s] = ovm::coarsen_by_function(o, f, tol);
          return py::make_tuple(coarse, s.image);
        },
        "observable"_a, "f"_a, "tol"_a = Tolerance(),
        "Merge outcomes with equal f(value); returns (coarse, index_map).");

  m.def("coarsen_by_map",
        [](const SpectralForm& o, const std::vector<std::size_t>& image,
           const std::vector<double>& coarse_values, const Tolerance& tol) {
          const ovm::IndexSurjection s(o.term_count(), coarse_values.size(),
                                       image);
          return ovm::coarsen_by_map(o, s, coarse_values, tol);
        },
        "observable"_a, "image"_a, "coarse_values"_a, "tol"_a = Tolerance(),
        "Merge outcomes along an index surjection with explicit new values.");

  m.def("simultaneous_measure",
        [](const SpectralForm& o1, const SpectralForm& o2,
           const ComplexArray& state, std::uint64_t seed,
           const Tolerance& tol) {
          const ovm::SimultaneousOutcome out = ovm::simultaneous_measure(
              o1, o2, vector_from_numpy(state), seed, tol);
          py::dict d;
          d["first_value"] = out.first_value;
          d["second_value"] = out.second_value;
          d["fine_index"] = out.outcome.fine_index;
          d["fine_value"] = out.outcome.fine_value;
          d["probability"] = out.outcome.probability;
          d["post_state"] = vector_to_numpy(out.outcome.post_state.vector);
          return d;
        },
        "first"_a, "second"_a, "state"_a, "seed"_a, "tol"_a = Tolerance(),
        "One seeded joint measurement of two compatible observables on a "
        "unit state vector.");
}
