#pragma once

#include <string>

#include <json.hpp>

#include "boxtimes/circuit.hpp"
#include "boxtimes/enhanced.hpp"
#include "boxtimes/gate.hpp"
#include "boxtimes/partition.hpp"
#include "boxtimes/realize.hpp"

namespace boxtimes::io {

using nlohmann::json;

// Matrix files: {"rows": R, "cols": C, "entries": [[re, im], ...]},
// entries row-major of length R*C. Parsing rejects wrong-length entry
// lists and non-finite numbers.
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j, const std::string& where);

// Gate files: matrix fields plus {"d": d, "k": k}. When d and k are absent
// the matrix is read as a 2-qudit gate if its size is a perfect square.
json gate_to_json(const Gate& g);
Gate gate_from_json(const json& j, const std::string& where);

// Partition files: {"row_cuts": [...], "col_cuts": [...]}.
json partition_to_json(const BlockPartition& p);
BlockPartition partition_from_json(const json& j, const std::string& where);

// Circuit files: {"width": n, "d": d, "layers": [{"gate": <name or inline
// gate object>, "wires": [...]}, ...]}. Builtin names round-trip as names.
json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const json& j, const std::string& where);

// Factorization files: {"target": <gate object or file path>, "factors":
// [{"kind": "U", "matrix": ...} | {"kind": "local", "S": ..., "T": ...}]}.
// Path references resolve relative to base_dir.
Factorization factorization_from_json(const json& j, const std::string& base_dir,
                                      const std::string& where);

json pair_report_to_json(const PairReport& r);
json gate_report_to_json(const GateReport& r);

std::string read_text_file(const std::string& path);
json read_json_file(const std::string& path);

// Writes via a temp file in the same directory plus rename, so a crash
// never leaves a half-written target.
void atomic_write_text(const std::string& path, const std::string& text);
void write_json_file(const std::string& path, const json& j);

// Resolves "builtin:<name>" or a file path to a gate. Inputs without d/k
// fields fall back to the d_hint/k_hint overrides when given.
Gate load_gate(const std::string& ref, std::optional<std::size_t> d_hint = {},
               std::optional<std::size_t> k_hint = {});

// Plain matrix (mu etc.): "builtin:" or path; gate files are accepted and
// contribute their matrix.
CMatrix load_matrix(const std::string& ref);

std::string csv_escape(const std::string& field);

}  // namespace boxtimes::io
