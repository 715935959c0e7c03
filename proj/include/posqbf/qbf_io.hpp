// QDIMACS and QCIR-G14 serialization. Writers are byte-deterministic
// (LF newlines, no trailing whitespace); parsers accept comments, repair
// non-alternating prefixes by merging, and report errors with line numbers.
#pragma once

#include <iosfwd>
#include <string>

#include "posqbf/ghex.hpp"  // ParseError
#include "posqbf/qbf.hpp"

namespace posqbf {

void write_qdimacs(std::ostream& out, const QbfCnf& f);
std::string qdimacs_to_string(const QbfCnf& f);
void write_qdimacs_file(const std::string& path, const QbfCnf& f);

// Free variables (used but never quantified) become an outermost existential
// block, ascending. Clauses may span lines; counts must match the header.
QbfCnf read_qdimacs(std::istream& in);
QbfCnf read_qdimacs_file(const std::string& path);

void write_qcir(std::ostream& out, const QbfCircuit& c);
std::string qcir_to_string(const QbfCircuit& c);
void write_qcir_file(const std::string& path, const QbfCircuit& c);

// Numeric ids only; and/or gates only. free(...) counts as outermost exists.
// Foreign ids are renumbered: variables 1..V in declaration order, gates
// V+1.. in definition order (identity on files our writer produced).
QbfCircuit read_qcir(std::istream& in);
QbfCircuit read_qcir_file(const std::string& path);

}  // namespace posqbf
