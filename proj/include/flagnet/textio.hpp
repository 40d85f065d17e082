#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flagnet/codes.hpp"
#include "flagnet/flags.hpp"
#include "flagnet/matrix.hpp"
#include "flagnet/netsim.hpp"

namespace flagnet {

// Text conventions shared by every format here: rows are lists of
// entry codes separated by ',', matrices list rows separated by ';',
// blank lines and lines starting with '#' are ignored in files, and
// parse failures raise ParseError carrying the 1-based line number.

/// Matrix in row text form: rows joined with ';', entries with ','.
std::string matrix_to_text(const MatrixF& m);

/// Parses ';'-separated rows of ','-separated codes. All rows must
/// have equal length.
MatrixF matrix_from_text(std::string_view text, const Field& field);

/// Upper triangular matrix in matrix text form, rows always complete.
std::string triangular_to_text(const UpperTriangular& m);

/// Parses an n x n upper triangular matrix from matrix text. Rows may
/// omit trailing zeros; entries below the diagonal must be zero.
UpperTriangular triangular_from_text(std::string_view text, const Field& field, std::size_t n);

/// Upper triangular matrix file: "utmatrix v1" header, field line,
/// "n=<int>", then the n rows.
std::string triangular_file_text(const UpperTriangular& m);
UpperTriangular triangular_file_parse(std::string_view text);

/// Code file: "flagcode v1" header, field line, "n=<int>", "dim=<int>",
/// then one basis matrix per line in matrix text form.
std::string code_file_text(const FlagRankCode& code);
FlagRankCode code_file_parse(std::string_view text);

/// Flag listing: "flag v1" header, field line, "n=<int>", then for
/// each component a "component <i>" line followed by its basis rows
/// (one row per line, n+1 entries each).
std::string flag_file_text(const DegenerateFlag& flag);

struct ParsedFlag {
    Field field;
    std::size_t n;
    std::vector<Subspace> components;
};

/// Parses a flag listing. Content before the "flag v1" header line is
/// ignored, so a saved encode transcript parses directly. Component
/// subspaces are returned as given; whether they form a flag in the
/// big cell is for the caller to judge.
ParsedFlag flag_file_parse(std::string_view text);

/// Topology file: "node <name> <source|relay|sink>" lines followed by
/// "edge <from> <to> <erasure_p> <corruption_p>" lines.
Topology topology_file_parse(std::string_view text);

}  // namespace flagnet
