#pragma once

#include <map>
#include <string>

#include "jsr/matset.hpp"
#include "jsr/polytope.hpp"

namespace jsr {

/// MatrixSet JSON: {"dim": int, "matrices": [[[row], [row]], ...]}.
/// Ragged arrays are rejected with the JSON pointer of the offending field.
MatrixSet load_matrix_set(const std::string& path);
MatrixSet parse_matrix_set(const std::string& text, const std::string& source_name = "input");
void save_matrix_set(const std::string& path, const MatrixSet& m);
std::string matrix_set_to_json(const MatrixSet& m);

/// Same schema as save_matrix_set but keeps the list as given (no
/// deduplication), for outputs whose arity is part of the contract.
void save_matrix_list(const std::string& path, int dim, const std::vector<Matrix>& matrices);

/// Single matrix JSON: {"dim": int, "matrix": [[row], [row]]}.
Matrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const Matrix& m);

/// Polytope JSON: {"dim": int, "vertices": [[...]], "facets": [[...]]?}.
/// Without facets the ball is rebuilt by hull_from_points.
SymmetricPolytope load_polytope(const std::string& path);
void save_polytope(const std::string& path, const SymmetricPolytope& p);

struct CertifiedClaim {
    bool certified = false;
    std::string check;  // name of the independent re-verification that ran
};

/// Per-run report: inputs are content digests, outputs the key numbers.
/// Reruns with equal inputs and seed produce identical numeric fields.
struct RunReport {
    std::string command;
    std::map<std::string, std::string> inputs;  // path -> fnv1a64 digest
    std::map<std::string, double> outputs;
    std::map<std::string, std::string> notes;
    std::map<std::string, CertifiedClaim> certified;
    long long seed = 0;
    double wall_time = 0.0;

    void add_input(const std::string& path);
    std::string to_json() const;
};

void save_report(const std::string& path, const RunReport& report);

std::string fnv1a64_digest(const std::string& bytes);
std::string read_file(const std::string& path);   // InvalidInputError if unreadable
void write_file(const std::string& path, const std::string& content);

}  // namespace jsr
