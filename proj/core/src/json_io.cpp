#include "gaugekit/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gaugekit {

using json = nlohmann::ordered_json;

namespace {

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ValidationError("not valid JSON");
    return j;
}

const json& field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw ValidationError(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ValidationError(path + ": missing field '" + key + "'");
    return *it;
}

int int_field(const json& j, const char* key, const std::string& path) {
    const json& f = field(j, key, path);
    if (!f.is_number_integer()) throw ValidationError(path + "." + key + ": expected an integer");
    return f.get<int>();
}

double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) throw ValidationError(path + ": expected a number");
    return j.get<double>();
}

Complex complex_at(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2)
        throw ValidationError(path + ": expected [re, im]");
    return Complex(number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]"));
}

std::vector<Complex> entries_at(const json& j, int dim_rows, int dim_cols,
                                const std::string& path) {
    if (!j.is_array() || int(j.size()) != dim_rows)
        throw ValidationError(path + ": expected " + std::to_string(dim_rows) + " rows");
    std::vector<Complex> out;
    out.reserve(std::size_t(dim_rows) * std::size_t(dim_cols));
    for (int i = 0; i < dim_rows; ++i) {
        const json& row = j[std::size_t(i)];
        std::string rp = path + "[" + std::to_string(i) + "]";
        if (!row.is_array() || int(row.size()) != dim_cols)
            throw ValidationError(rp + ": expected " + std::to_string(dim_cols) + " entries");
        for (int k = 0; k < dim_cols; ++k)
            out.push_back(complex_at(row[std::size_t(k)], rp + "[" + std::to_string(k) + "]"));
    }
    return out;
}

HermitianMatrix hermitian_at(const json& j, const std::string& path) {
    int dim = int_field(j, "dim", path);
    if (dim <= 0) throw ValidationError(path + ".dim: must be positive");
    auto entries = entries_at(field(j, "entries", path), dim, dim, path + ".entries");
    try {
        return HermitianMatrix(dim, std::move(entries));
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

Vec vector_at(const json& j, int dim, const std::string& path) {
    if (!j.is_array() || int(j.size()) != dim)
        throw ValidationError(path + ": expected a vector of length " + std::to_string(dim));
    Vec v(std::size_t(dim), 0.0);
    for (int i = 0; i < dim; ++i) v[std::size_t(i)] = number_at(j[std::size_t(i)], path + "[" + std::to_string(i) + "]");
    return v;
}

json matrix_json(const HermitianMatrix& a) {
    json rows = json::array();
    for (int i = 0; i < a.dim(); ++i) {
        json row = json::array();
        for (int j2 = 0; j2 < a.dim(); ++j2)
            row.push_back(json::array({a.at(i, j2).real(), a.at(i, j2).imag()}));
        rows.push_back(std::move(row));
    }
    return json{{"dim", a.dim()}, {"entries", std::move(rows)}};
}

OperatorSpace operator_space_at(const json& j, const std::string& path) {
    int m = int_field(j, "ambient_dim", path);
    const json& basis = field(j, "basis", path);
    if (!basis.is_array() || basis.empty())
        throw ValidationError(path + ".basis: expected a nonempty array of matrices");
    std::vector<HermitianMatrix> b;
    for (std::size_t i = 0; i < basis.size(); ++i)
        b.push_back(hermitian_at(basis[i], path + ".basis[" + std::to_string(i) + "]"));
    std::optional<int> unit;
    if (j.contains("unit") && !j["unit"].is_null()) {
        if (!j["unit"].is_number_integer())
            throw ValidationError(path + ".unit: expected an index or null");
        unit = j["unit"].get<int>();
    }
    try {
        return OperatorSpace(m, std::move(b), unit);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

PolySpace poly_space_at(const json& j, const std::string& path) {
    int d = int_field(j, "dim", path);
    const json& gens = field(j, "generators", path);
    if (!gens.is_array()) throw ValidationError(path + ".generators: expected an array");
    std::vector<Vec> g;
    for (std::size_t i = 0; i < gens.size(); ++i)
        g.push_back(vector_at(gens[i], d, path + ".generators[" + std::to_string(i) + "]"));
    const json& norm = field(j, "norm", path);
    std::string kind = field(norm, "kind", path + ".norm").get<std::string>();
    PolyNorm n = PolyNorm::sup(d);
    if (kind == "polytope") {
        const json& verts = field(norm, "vertices", path + ".norm");
        if (!verts.is_array() || verts.empty())
            throw ValidationError(path + ".norm.vertices: expected a nonempty array");
        std::vector<Vec> vv;
        for (std::size_t i = 0; i < verts.size(); ++i)
            vv.push_back(vector_at(verts[i], d, path + ".norm.vertices[" + std::to_string(i) + "]"));
        try {
            n = PolyNorm::polytope(d, std::move(vv));
        } catch (const ValidationError& e) {
            throw ValidationError(path + ".norm: " + e.what());
        }
    } else if (kind != "sup") {
        throw ValidationError(path + ".norm.kind: expected 'sup' or 'polytope'");
    }
    try {
        return PolySpace{std::move(n), PolyCone(d, std::move(g))};
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

} // namespace

HermitianMatrix parse_hermitian(const std::string& text) {
    return hermitian_at(parse_text(text), "matrix");
}

std::string to_json(const HermitianMatrix& a) { return matrix_json(a).dump(); }

OperatorSpace parse_operator_space(const std::string& text) {
    return operator_space_at(parse_text(text), "space");
}

std::string to_json(const OperatorSpace& v) {
    json basis = json::array();
    for (const auto& b : v.basis()) basis.push_back(matrix_json(b));
    json j{{"ambient_dim", v.ambient_dim()}, {"basis", std::move(basis)}};
    if (v.unit_index()) j["unit"] = *v.unit_index();
    else j["unit"] = nullptr;
    return j.dump();
}

PolySpace parse_poly_space(const std::string& text) {
    return poly_space_at(parse_text(text), "space");
}

std::string to_json(const PolySpace& p) {
    json gens = json::array();
    for (const auto& g : p.cone.generators) gens.push_back(g);
    json norm;
    if (p.norm.kind == PolyNorm::Kind::sup) norm = json{{"kind", "sup"}};
    else {
        json verts = json::array();
        for (const auto& v : p.norm.vertices) verts.push_back(v);
        norm = json{{"kind", "polytope"}, {"vertices", std::move(verts)}};
    }
    return json{{"dim", p.norm.dim}, {"generators", std::move(gens)}, {"norm", std::move(norm)}}
        .dump();
}

Space parse_space(const std::string& text) {
    json j = parse_text(text);
    if (j.contains("ambient_dim")) return Space(operator_space_at(j, "space"));
    if (j.contains("dim")) return Space(poly_space_at(j, "space"));
    throw ValidationError("space: expected 'ambient_dim' (matrix space) or 'dim' (polyhedral)");
}

IdealSpec parse_ideal(const std::string& text) {
    json j = parse_text(text);
    const json& basis = field(j, "ideal_basis", "ideal");
    if (!basis.is_array()) throw ValidationError("ideal.ideal_basis: expected an array");
    IdealSpec s;
    for (std::size_t i = 0; i < basis.size(); ++i)
        s.basis.push_back(hermitian_at(basis[i], "ideal.ideal_basis[" + std::to_string(i) + "]"));
    return s;
}

LinearMap parse_linear_map(const std::string& text, const std::string& base_dir) {
    json j = parse_text(text);
    auto load_space = [&](const char* key) {
        const json& f = field(j, key, "map");
        std::string path = std::string("map.") + key;
        if (f.is_object() && f.contains("file")) {
            std::string fname = f["file"].get<std::string>();
            std::string full = base_dir.empty() ? fname : base_dir + "/" + fname;
            std::ifstream in(full);
            if (!in) throw ValidationError(path + ".file: cannot open '" + full + "'");
            std::stringstream ss;
            ss << in.rdbuf();
            return parse_space(ss.str());
        }
        if (f.contains("ambient_dim")) return Space(operator_space_at(f, path));
        return Space(poly_space_at(f, path));
    };
    Space dom = load_space("domain");
    Space cod = load_space("codomain");
    const json& mat = field(j, "matrix", "map");
    if (!mat.is_array() || int(mat.size()) != cod.dim_sa())
        throw ValidationError("map.matrix: expected " + std::to_string(cod.dim_sa()) + " rows");
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < mat.size(); ++i)
        rows.push_back(vector_at(mat[i], dom.dim_sa(), "map.matrix[" + std::to_string(i) + "]"));
    return LinearMap(std::move(dom), std::move(cod), std::move(rows));
}

std::string to_json(const SolveReport& r) {
    json j{{"value", r.value},
           {"argmin_coeffs", r.argmin_coeffs},
           {"infeasibility", r.infeasibility},
           {"iterations", r.iterations},
           {"converged", r.converged},
           {"value_history_tail", r.value_history_tail}};
    return j.dump();
}

std::string to_json(const GaugeAxiomReport& r) {
    json fails = json::array();
    for (const auto& f : r.failures) fails.push_back(f);
    json j{{"trials", r.trials},
           {"subadditivity_worst", r.subadditivity_worst},
           {"homogeneity_worst", r.homogeneity_worst},
           {"properness_witnessed", r.properness_witnessed},
           {"failures", std::move(fails)}};
    return j.dump();
}

std::string to_json(const QuotientGaugeValue& q) {
    json j{{"value", q.value},
           {"minimizing_coset_coeffs", q.minimizing_coset_coeffs},
           {"exact_parent_gauge", q.exact_parent_gauge},
           {"report", json::parse(to_json(q.report))}};
    return j.dump();
}

std::string to_json(const IdealVerdict& v) {
    json j{{"ideal_witnessed", v.ideal_witnessed},
           {"eps", v.eps},
           {"probes", v.probes}};
    if (v.certificate) {
        j["certificate"] = matrix_json(*v.certificate);
        j["certificate_q_pos"] = v.certificate_q_pos;
        j["certificate_q_neg"] = v.certificate_q_neg;
    } else {
        j["certificate"] = nullptr;
    }
    return j.dump();
}

} // namespace gaugekit
