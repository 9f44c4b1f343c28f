#pragma once

#include "qp/bracket.hpp"
#include "qp/expr.hpp"
#include "qp/structures.hpp"

namespace qp {

// Quiver files (JSON): {"vertices": [...], "arrows": [{"id","tail","head"}],
// optional "order": [ids], "double": true, "invert": [ids]}. Serialization
// always writes the explicit form ("pairs" + "epsilon" instead of the
// "double" sugar) so parse -> serialize -> parse is the identity.
QuiverPtr parse_quiver_json(const std::string& text);
std::string serialize_quiver_json(const Quiver& q);

QuiverPtr load_quiver(const std::string& path);
void save_quiver(const Quiver& q, const std::string& path);

// Bracket tables: {"quiver": {...}, "bracket": [{"a","b","value"}]}.
DoubleBracketTable parse_bracket_json(const std::string& text);
std::string serialize_bracket_json(const DoubleBracketTable& T);
DoubleBracketTable load_bracket(const std::string& path);
void save_bracket(const DoubleBracketTable& T, const std::string& path);

// Structures: {"quiver": {...}, "kind": "additive"|"multiplicative",
// "P": expr, "moment": expr, "order": [ids]}.
HamiltonianStructure parse_structure_json(const std::string& text);
std::string serialize_structure_json(const HamiltonianStructure& s);
HamiltonianStructure load_structure(const std::string& path);
void save_structure(const HamiltonianStructure& s, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace qp
