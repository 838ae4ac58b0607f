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

#include "ovm/obsfile.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ovm {

namespace {

using nlohmann::json;

json parse_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::kParseError, path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    // nlohmann messages carry "at line L, column C".
    throw Error(ErrorKind::kParseError, path + ": " + e.what());
  }
}

std::size_t parse_dim(const json& j, const std::string& path) {
  if (!j.is_object())
    throw Error(ErrorKind::kParseError, path + ": top level must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() ||
      j["dim"].get<std::size_t>() == 0)
    throw Error(ErrorKind::kParseError,
                path + ": \"dim\" must be a positive integer");
  return j["dim"].get<std::size_t>();
}

cplx parse_entry(const json& j, const std::string& path, const char* where,
                 std::size_t i, std::size_t k) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    std::ostringstream msg;
    msg << path << ": " << where << "[" << i << "][" << k
        << "] must be a [re, im] pair of numbers";
    throw Error(ErrorKind::kParseError, msg.str());
  }
  return cplx(j[0].get<double>(), j[1].get<double>());
}

ComplexMatrix parse_matrix(const json& j, std::size_t dim,
                           const std::string& path, const char* where) {
  if (!j.is_array() || j.size() != dim) {
    std::ostringstream msg;
    msg << path << ": " << where << " must be an array of " << dim << " rows";
    throw Error(ErrorKind::kParseError, msg.str());
  }
  ComplexMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != dim) {
      std::ostringstream msg;
      msg << path << ": " << where << "[" << i << "] must have " << dim
          << " entries";
      throw Error(ErrorKind::kParseError, msg.str());
    }
    for (std::size_t k = 0; k < dim; ++k)
      m(i, k) = parse_entry(row[k], path, where, i, k);
  }
  return m;
}

}  // namespace

ObservableFile read_observable_file(const std::string& path,
                                    const Tolerance& tol) {
  const json j = parse_document(path);
  const std::size_t dim = parse_dim(j, path);

  const bool has_matrix = j.contains("matrix");
  const bool has_spectral = j.contains("spectral");
  if (has_matrix == has_spectral)
    throw Error(ErrorKind::kParseError,
                path + ": need exactly one of \"matrix\" or \"spectral\"");

  try {
    ObservableFile result{
        [&]() -> SpectralForm {
          if (has_matrix)
            return from_matrix(parse_matrix(j["matrix"], dim, path, "matrix"),
                               tol);
          const json& spec = j["spectral"];
          if (!spec.is_array() || spec.empty())
            throw Error(ErrorKind::kParseError,
                        path + ": \"spectral\" must be a nonempty array");
          std::vector<EigenTerm> terms;
          terms.reserve(spec.size());
          for (std::size_t t = 0; t < spec.size(); ++t) {
            const json& item = spec[t];
            if (!item.is_object() || !item.contains("value") ||
                !item["value"].is_number() || !item.contains("projector")) {
              std::ostringstream msg;
              msg << path << ": spectral[" << t
                  << "] must be {\"value\": number, \"projector\": matrix}";
              throw Error(ErrorKind::kParseError, msg.str());
            }
            EigenTerm term;
            term.value = item["value"].get<double>();
            term.projector =
                parse_matrix(item["projector"], dim, path, "projector");
            terms.push_back(std::move(term));
          }
          return SpectralForm(dim, std::move(terms), tol);
        }(),
        {}};

    if (j.contains("maps")) {
      const json& maps = j["maps"];
      if (!maps.is_array())
        throw Error(ErrorKind::kParseError,
                    path + ": \"maps\" must be an array of index lists");
      for (std::size_t m = 0; m < maps.size(); ++m) {
        const json& entry = maps[m];
        if (!entry.is_array() ||
            entry.size() != result.observable.term_count()) {
          std::ostringstream msg;
          msg << path << ": maps[" << m << "] must list one coarse index per"
              << " spectral term";
          throw Error(ErrorKind::kParseError, msg.str());
        }
        std::vector<std::size_t> map;
        map.reserve(entry.size());
        for (const json& v : entry) {
          if (!v.is_number_unsigned()) {
            std::ostringstream msg;
            msg << path << ": maps[" << m
                << "] entries must be nonnegative integers";
            throw Error(ErrorKind::kParseError, msg.str());
          }
          map.push_back(v.get<std::size_t>());
        }
        result.maps.push_back(std::move(map));
      }
    }
    return result;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kParseError) throw;
    throw Error(e.kind(), path + ": " + e.message());
  }
}

ComplexVector read_state_file(const std::string& path) {
  const json j = parse_document(path);
  const std::size_t dim = parse_dim(j, path);
  if (!j.contains("state") || !j["state"].is_array() ||
      j["state"].size() != dim) {
    std::ostringstream msg;
    msg << path << ": \"state\" must be an array of " << dim
        << " [re, im] pairs";
    throw Error(ErrorKind::kParseError, msg.str());
  }
  ComplexVector v(dim);
  for (std::size_t i = 0; i < dim; ++i)
    v[i] = parse_entry(j["state"][i], path, "state", i, 0);
  return v;
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

namespace {

void append_matrix(std::string& out, const ComplexMatrix& m,
                   const std::string& indent) {
  out += "[\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += indent + "  [";
    for (std::size_t k = 0; k < m.cols(); ++k) {
      if (k) out += ", ";
      out += "[" + format_real(m(i, k).real()) + ", " +
             format_real(m(i, k).imag()) + "]";
    }
    out += (i + 1 < m.rows()) ? "],\n" : "]\n";
  }
  out += indent + "]";
}

}  // namespace

std::string format_observable(
    const SpectralForm& o, const std::vector<std::vector<std::size_t>>& maps) {
  std::string out = "{\n  \"dim\": " + std::to_string(o.dim()) +
                    ",\n  \"spectral\": [\n";
  for (std::size_t k = 0; k < o.term_count(); ++k) {
    out += "    {\n      \"value\": " + format_real(o.value(k)) +
           ",\n      \"projector\": ";
    append_matrix(out, o.projector(k), "      ");
    out += "\n    }";
    out += (k + 1 < o.term_count()) ? ",\n" : "\n";
  }
  out += "  ]";
  if (!maps.empty()) {
    out += ",\n  \"maps\": [\n";
    for (std::size_t m = 0; m < maps.size(); ++m) {
      out += "    [";
      for (std::size_t k = 0; k < maps[m].size(); ++k) {
        if (k) out += ", ";
        out += std::to_string(maps[m][k]);
      }
      out += "]";
      out += (m + 1 < maps.size()) ? ",\n" : "\n";
    }
    out += "  ]";
  }
  out += "\n}\n";
  return out;
}

void write_observable_file(const std::string& path, const SpectralForm& o,
                           const std::vector<std::vector<std::size_t>>& maps) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(ErrorKind::kParseError, path + ": cannot open for writing");
  out << format_observable(o, maps);
  if (!out)
    throw Error(ErrorKind::kParseError, path + ": write failed");
}

}  // namespace ovm
