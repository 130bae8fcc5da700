// Copyright 2026 The fermiforge Authors
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

#ifndef FERMIFORGE_IO_HPP_
#define FERMIFORGE_IO_HPP_

#include <string>

#include <json.hpp>

#include "fermiforge/circuit.hpp"
#include "fermiforge/linalg.hpp"

namespace fermiforge {

using Json = nlohmann::json;

/// {"rows": r, "cols": c, "data": [[re, im], ...]} with data row-major.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// {"n_system", "n_ancilla", "global_phase": [re, im], "layers": [[{"kind", "qubits", "params"}]]}
Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);

std::string serialize(const Circuit& c);
Circuit parse_circuit(const std::string& text);

std::string read_text_file(const std::string& path);
/// Writes to a sibling temporary file and renames it into place.
void write_text_file_atomic(const std::string& path, const std::string& contents);

}  // namespace fermiforge

#endif  // FERMIFORGE_IO_HPP_
