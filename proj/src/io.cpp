#include "pgsheaf/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace pgsheaf {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).value);
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, std::uint32_t p) {
    if (!j.is_array()) throw InputError("matrix must be an array of rows");
    std::size_t rows = j.size();
    std::size_t cols = rows ? j[0].size() : 0;
    Matrix m(rows, cols, p);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw InputError("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c)
            m.set(i, c, j[i][c].get<std::int64_t>());
    }
    return m;
}

std::string family_name(Family f) {
    switch (f) {
        case Family::LieMatrix: return "lie_matrix";
        case Family::ElemAbelian: return "elem_abelian";
        case Family::FrobeniusGa: return "frobenius_ga";
    }
    return "?";
}

bool looks_like_path(const std::string& s) {
    return s.find('/') != std::string::npos || s.find(".json") != std::string::npos;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("cannot parse '" + path + "': " + e.what());
    }
    return j;
}

} // namespace

json group_to_json(const GroupSchemeDescriptor& g) {
    json j;
    j["family"] = family_name(g.family);
    j["name"] = g.name;
    j["p"] = g.p;
    if (g.family == Family::FrobeniusGa) {
        j["r"] = g.r;
    } else if (g.family == Family::ElemAbelian) {
        j["r"] = g.presentation.ring->nvars();
    }
    if (g.family == Family::LieMatrix) {
        json basis = json::array();
        for (const auto& b : g.basis) basis.push_back(matrix_to_json(b));
        j["basis"] = std::move(basis);
        j["variables"] = g.presentation.ring->var_names;
    }
    return j;
}

GroupPtr group_from_json(const json& j) {
    if (!j.contains("p")) throw InputError("group descriptor needs \"p\"");
    std::uint32_t p = j["p"].get<std::uint32_t>();
    std::string family = j.value("family", std::string{});
    std::string name = j.value("name", family);
    auto get_rank = [&]() -> std::uint32_t {
        if (j.contains("r")) return j["r"].get<std::uint32_t>();
        if (j.contains("n")) return j["n"].get<std::uint32_t>();
        throw InputError("group descriptor needs \"r\" or \"n\"");
    };
    if (family == "elem_abelian") return make_elem_abelian(get_rank(), p);
    if (family == "frobenius_ga") return make_frobenius_ga(get_rank(), p);
    if (family == "lie_matrix") {
        if (name == "sl2") return make_sl2(p);
        if (name == "sl3") return make_sl3(p);
        if (!j.contains("basis")) throw InputError("lie_matrix descriptor needs \"basis\"");
        std::vector<Matrix> basis;
        for (const auto& b : j["basis"]) basis.push_back(matrix_from_json(b, p));
        std::vector<std::string> vars;
        if (j.contains("variables")) vars = j["variables"].get<std::vector<std::string>>();
        return make_lie_matrix(std::move(basis), p, std::move(vars),
                               name.empty() ? "lie" : name);
    }
    // Fall back to builtin names ("sl2", "ea(2)", ...).
    if (!family.empty()) return builtin_group(family, p);
    throw InputError("group descriptor needs a \"family\"");
}

GroupPtr load_group(const std::string& spec, std::optional<std::uint32_t> p) {
    if (looks_like_path(spec)) {
        GroupPtr g = group_from_json(load_json_file(spec));
        if (p && g->p != *p)
            throw InputError("--p does not match the group file");
        return g;
    }
    // sl2/sl3 default to characteristic 3; the other builtins need --p.
    if (!p && (spec == "sl2" || spec == "sl3")) p = 3;
    if (!p) throw InputError("builtin group '" + spec + "' needs --p");
    return builtin_group(spec, *p);
}

json module_to_json(const Representation& r) {
    json j;
    j["group"] = group_to_json(*r.group);
    j["dim"] = r.dim;
    json mats = json::array();
    for (const auto& m : r.action) mats.push_back(matrix_to_json(m));
    j["matrices"] = std::move(mats);
    return j;
}

Representation module_from_json(const json& j, GroupPtr group_hint) {
    Representation r;
    if (j.contains("group")) {
        const auto& g = j["group"];
        if (g.is_string()) {
            std::string s = g.get<std::string>();
            std::optional<std::uint32_t> p;
            if (j.contains("p")) p = j["p"].get<std::uint32_t>();
            if (!p && group_hint) p = group_hint->p;
            r.group = load_group(s, p);
        } else {
            r.group = group_from_json(g);
        }
    } else {
        r.group = group_hint;
    }
    if (!r.group) throw InputError("module file has no group and none was supplied");
    if (group_hint && !same_group(r.group, group_hint))
        throw InputError("module file group differs from --group");
    if (!j.contains("dim") || !j.contains("matrices"))
        throw InputError("module file needs \"dim\" and \"matrices\"");
    r.dim = j["dim"].get<std::uint32_t>();
    for (const auto& m : j["matrices"]) r.action.push_back(matrix_from_json(m, r.group->p));
    validate_rep(r);
    return r;
}

namespace {

struct ExprParser {
    const std::string& s;
    const GroupPtr& group;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::string token() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' ||
                s[pos] == '.' || s[pos] == '/' || s[pos] == '-'))
            ++pos;
        if (start == pos) throw InputError("expected a module name in expression");
        return s.substr(start, pos - start);
    }

    Representation parse() {
        Representation r = parse_expr();
        skip_ws();
        if (pos != s.size()) throw InputError("trailing characters in module expression");
        return r;
    }

    Representation parse_expr() {
        std::string name = token();
        if (name == "tensor" || name == "sum") {
            if (!eat('(')) throw InputError("expected '(' after " + name);
            Representation a = parse_expr();
            if (!eat(',')) throw InputError("expected ',' in " + name);
            Representation b = parse_expr();
            if (!eat(')')) throw InputError("expected ')' after " + name);
            return name == "tensor" ? tensor(a, b) : direct_sum(a, b);
        }
        if (name == "dual" || name == "omega") {
            if (!eat('(')) throw InputError("expected '(' after " + name);
            Representation a = parse_expr();
            if (!eat(')')) throw InputError("expected ')' after " + name);
            return name == "dual" ? dual(a) : heller(a);
        }
        if (looks_like_path(name)) return module_from_json(load_json_file(name), group);
        // Builtin, possibly with an integer argument such as sl2_simple(2).
        if (eat('(')) {
            skip_ws();
            std::size_t start = pos;
            while (pos < s.size() && s[pos] != ')') ++pos;
            if (pos == s.size()) throw InputError("unbalanced parenthesis in module name");
            std::string arg = s.substr(start, pos - start);
            ++pos;
            return builtin_module(name + "(" + arg + ")", group);
        }
        return builtin_module(name, group);
    }
};

} // namespace

Representation parse_module_expr(const std::string& expr, const GroupPtr& group) {
    ExprParser p{expr, group};
    Representation r = p.parse();
    validate_rep(r);
    return r;
}

NullconePoint parse_point(const GroupSchemeDescriptor& g, const std::string& text) {
    const std::size_t n = g.presentation.ring->nvars();
    std::vector<FieldElement> coords(n, FieldElement(0, g.p));
    std::size_t pos = 0, idx = 0;
    bool named = text.find('=') != std::string::npos;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string piece = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                        : comma - pos);
        if (named) {
            auto eq = piece.find('=');
            if (eq == std::string::npos) throw InputError("expected name=value in point");
            std::string var = piece.substr(0, eq);
            const auto& names = g.presentation.ring->var_names;
            auto it = std::find(names.begin(), names.end(), var);
            if (it == names.end()) throw InputError("unknown variable '" + var + "'");
            coords[static_cast<std::size_t>(it - names.begin())] =
                FieldElement(std::stoll(piece.substr(eq + 1)), g.p);
        } else {
            if (idx >= n) throw InputError("too many point coordinates");
            coords[idx++] = FieldElement(std::stoll(piece), g.p);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (!named && idx != n) throw InputError("point needs one coordinate per variable");
    return validate_point(g, coords);
}

json fingerprint_to_json(const Fingerprint& fp) {
    json j;
    j["window"] = {fp.window_lo, fp.window_hi};
    json hf = json::array();
    for (const auto& [d, v] : fp.hilbert) hf.push_back({d, v});
    j["hilbert"] = std::move(hf);
    j["fitting"] = fp.fitting_signatures;
    return j;
}

json report_to_json(const SheafReport& r) {
    json j;
    j["module_zero"] = r.module_zero;
    j["sheaf_zero"] = r.sheaf_zero;
    j["support_ideal"] = r.support_ideal;
    if (r.locally_free_rank)
        j["locally_free_rank"] = *r.locally_free_rank;
    else
        j["locally_free_rank"] = nullptr;
    if (r.fingerprint) j["fingerprint"] = fingerprint_to_json(*r.fingerprint);
    return j;
}

std::string partition_string(const Partition& p) { return p.to_string(); }

json jordan_report_to_json(const LocalJordanReport& r) {
    json j;
    json pt = json::array();
    for (const auto& c : r.point.coords) pt.push_back(c.value);
    j["point"] = std::move(pt);
    j["jordan_type"] = r.jordan_type.to_string();
    j["jranks"] = r.jranks;
    j["projective"] = r.projective;
    return j;
}

} // namespace pgsheaf
