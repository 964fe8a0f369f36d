#include "jsr/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jsr/errors.hpp"

namespace jsr {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const std::string& source) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw SchemaError("/", source + ": not valid JSON");
    return j;
}

int require_dim(const json& j) {
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw SchemaError("/dim", "expected an integer dimension");
    const int d = j["dim"].get<int>();
    if (d < 1) throw SchemaError("/dim", "dimension must be positive");
    return d;
}

Vec parse_row(const json& row, int d, const std::string& pointer) {
    if (!row.is_array() || static_cast<int>(row.size()) != d)
        throw SchemaError(pointer, "expected a row of " + std::to_string(d) + " numbers");
    Vec out(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
        if (!row[k].is_number())
            throw SchemaError(pointer + "/" + std::to_string(k), "expected a number");
        out[k] = row[k].get<double>();
    }
    return out;
}

Matrix parse_matrix_json(const json& rows, int d, const std::string& pointer) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != d)
        throw SchemaError(pointer, "expected " + std::to_string(d) + " rows");
    Matrix m(d);
    for (int i = 0; i < d; ++i) {
        const Vec row = parse_row(rows[i], d, pointer + "/" + std::to_string(i));
        for (int j = 0; j < d; ++j) m(i, j) = row[j];
    }
    return m;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInputError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInputError("cannot write file: " + path);
    out << content;
}

std::string fnv1a64_digest(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

MatrixSet parse_matrix_set(const std::string& text, const std::string& source_name) {
    const json j = parse_json(text, source_name);
    const int d = require_dim(j);
    if (!j.contains("matrices") || !j["matrices"].is_array() || j["matrices"].empty())
        throw SchemaError("/matrices", "expected a nonempty array of matrices");
    std::vector<Matrix> members;
    for (size_t k = 0; k < j["matrices"].size(); ++k)
        members.push_back(parse_matrix_json(j["matrices"][k], d, "/matrices/" + std::to_string(k)));
    return MatrixSet(d, std::move(members));
}

MatrixSet load_matrix_set(const std::string& path) {
    return parse_matrix_set(read_file(path), path);
}

std::string matrix_set_to_json(const MatrixSet& m) {
    json j;
    j["dim"] = m.dim();
    json arr = json::array();
    for (const Matrix& a : m.members()) arr.push_back(matrix_to_json(a));
    j["matrices"] = std::move(arr);
    return j.dump(2) + "\n";
}

void save_matrix_set(const std::string& path, const MatrixSet& m) {
    write_file(path, matrix_set_to_json(m));
}

void save_matrix_list(const std::string& path, int dim, const std::vector<Matrix>& matrices) {
    json j;
    j["dim"] = dim;
    json arr = json::array();
    for (const Matrix& a : matrices) arr.push_back(matrix_to_json(a));
    j["matrices"] = std::move(arr);
    write_file(path, j.dump(2) + "\n");
}

Matrix load_matrix(const std::string& path) {
    const json j = parse_json(read_file(path), path);
    const int d = require_dim(j);
    if (!j.contains("matrix")) throw SchemaError("/matrix", "expected a matrix");
    return parse_matrix_json(j["matrix"], d, "/matrix");
}

void save_matrix(const std::string& path, const Matrix& m) {
    json j;
    j["dim"] = m.dim();
    j["matrix"] = matrix_to_json(m);
    write_file(path, j.dump(2) + "\n");
}

SymmetricPolytope load_polytope(const std::string& path) {
    const json j = parse_json(read_file(path), path);
    const int d = require_dim(j);
    if (!j.contains("vertices") || !j["vertices"].is_array() || j["vertices"].empty())
        throw SchemaError("/vertices", "expected a nonempty array of vertices");
    std::vector<Vec> verts;
    for (size_t k = 0; k < j["vertices"].size(); ++k)
        verts.push_back(parse_row(j["vertices"][k], d, "/vertices/" + std::to_string(k)));
    if (j.contains("facets")) {
        if (!j["facets"].is_array() || j["facets"].empty())
            throw SchemaError("/facets", "expected a nonempty array of facet normals");
        std::vector<Vec> facets;
        for (size_t k = 0; k < j["facets"].size(); ++k)
            facets.push_back(parse_row(j["facets"][k], d, "/facets/" + std::to_string(k)));
        return SymmetricPolytope::from_reps(d, std::move(verts), std::move(facets));
    }
    return hull_from_points(verts, d);
}

void save_polytope(const std::string& path, const SymmetricPolytope& p) {
    json j;
    j["dim"] = p.dim();
    json verts = json::array();
    for (const Vec& v : p.vertex_reps()) verts.push_back(v);
    j["vertices"] = std::move(verts);
    json facets = json::array();
    for (const Vec& n : p.facet_reps()) facets.push_back(n);
    j["facets"] = std::move(facets);
    write_file(path, j.dump(2) + "\n");
}

void RunReport::add_input(const std::string& path) {
    inputs[path] = fnv1a64_digest(read_file(path));
}

std::string RunReport::to_json() const {
    json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    if (!notes.empty()) j["notes"] = notes;
    json cert = json::object();
    for (const auto& [name, claim] : certified) {
        cert[name] = {{"certified", claim.certified}, {"check", claim.check}};
    }
    j["certified"] = std::move(cert);
    j["seed"] = seed;
    j["wall_time"] = wall_time;
    return j.dump(2) + "\n";
}

void save_report(const std::string& path, const RunReport& report) {
    write_file(path, report.to_json());
}

}  // namespace jsr
