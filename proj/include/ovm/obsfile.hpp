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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ovm/observables.hpp"

namespace ovm {

// Observable document: a JSON object with "dim" and exactly one of
//  - "matrix": dim x dim rows of [re, im] pairs (must be Hermitian), or
//  - "spectral": list of {"value": real, "projector": rows of [re, im]},
// plus an optional "maps" list of index maps (one entry per spectral term
// each) attached by refinement commands. The exact grammar is documented in
// the README.
struct ObservableFile {
  SpectralForm observable;
  std::vector<std::vector<std::size_t>> maps;  // empty when absent
};

// Parse and validate. Syntax errors throw ParseError with line/column
// positions; semantic failures keep their own kinds with the file path
// prepended to the message.
ObservableFile read_observable_file(const std::string& path,
                                    const Tolerance& tol = Tolerance());

// State document: JSON object with "dim" and "state": dim [re, im] pairs.
// Entries are checked finite; normalization is the consumer's concern.
ComplexVector read_state_file(const std::string& path);

// Serialize a spectral form (with optional maps) deterministically: fixed
// layout, two-space indent, reals printed with up to 17 significant digits
// so doubles round-trip exactly.
std::string format_observable(const SpectralForm& o,
                              const std::vector<std::vector<std::size_t>>&
                                  maps = {});

void write_observable_file(const std::string& path, const SpectralForm& o,
                           const std::vector<std::vector<std::size_t>>& maps =
                               {});

// Shortest-exact real formatting used across all reports ("%.17g", negative
// zero normalized).
std::string format_real(double x);

}  // namespace ovm
