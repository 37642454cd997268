#pragma once

#include "prepchi/flagchi.hpp"
#include "prepchi/integral.hpp"

#include <json.hpp>

#include <fstream>

namespace prepchi {

using Json = nlohmann::json;

// ---- scalars: rationals as "a" or "a/b" strings, F_p values as integers

inline Json to_json(const Rational& x) {
    Integer den = boost::multiprecision::denominator(x);
    if (den == 1) return boost::multiprecision::numerator(x).str();
    return x.str();
}

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) throw std::invalid_argument("scalar: expected string or integer");
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::invalid_argument("scalar: cannot parse \"" + s + "\"");
    }
}

// ---- matrices: list of rows, rows = target dimension

inline Json to_json(const Matrix<Rational>& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix<Rational> matrix_from_json(const Json& j, int rows, int cols) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw std::invalid_argument("matrix: expected " + std::to_string(rows) + " rows");
    Matrix<Rational> m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
            throw std::invalid_argument("matrix: expected " + std::to_string(cols) + " columns");
        for (int c = 0; c < cols; ++c) m.at(i, c) = rational_from_json(j[i][c]);
    }
    return m;
}

// ---- quiver: undirected edge list, doubled on load

inline Json to_json(const QuiverGraph& g) {
    Json j;
    j["vertices"] = g.vertices;
    Json edges = Json::array();
    for (const Arrow& a : g.arrows)
        if (a.eps > 0) edges.push_back({{"id", a.id}, {"source", a.source}, {"target", a.target}});
    j["edges"] = std::move(edges);
    return j;
}

inline QuiverGraph quiver_from_json(const Json& j) {
    if (!j.contains("vertices") || !j.contains("edges"))
        throw std::invalid_argument("quiver: need \"vertices\" and \"edges\"");
    std::vector<int> vertices = j["vertices"].get<std::vector<int>>();
    std::vector<Edge> edges;
    for (const Json& e : j["edges"])
        edges.push_back(Edge{e.at("id").get<std::string>(), e.at("source").get<int>(),
                             e.at("target").get<int>()});
    return build_double_quiver(vertices, edges);
}

// ---- module: field tag, vertex dims, one matrix per arrow ("*" partners)

inline Json to_json(const LambdaModule<Rational>& m) {
    Json j;
    j["field"] = "rational";
    Json dims = Json::object();
    for (auto [v, d] : m.dims) dims[std::to_string(v)] = d;
    j["dims"] = std::move(dims);
    Json maps = Json::object();
    for (const auto& [id, mat] : m.maps) maps[id] = to_json(mat);
    j["maps"] = std::move(maps);
    return j;
}

inline LambdaModule<Rational> module_from_json(const Json& j, const QuiverGraph& g) {
    LambdaModule<Rational> m;
    m.graph = g;
    if (!j.contains("field") || !(j["field"].is_string() && j["field"] == "rational"))
        throw std::invalid_argument("module: this entry point reads field \"rational\"");
    m.field = FieldSpec::rationals();
    if (!j.contains("dims") || !j["dims"].is_object())
        throw std::invalid_argument("module: need \"dims\" object");
    for (auto& [key, val] : j["dims"].items()) {
        int v = std::stoi(key);
        if (!g.has_vertex(v)) throw std::invalid_argument("module: unknown vertex " + key);
        m.dims[v] = val.get<int>();
    }
    for (int v : g.vertices)
        if (!m.dims.count(v)) m.dims[v] = 0;
    if (!j.contains("maps") || !j["maps"].is_object())
        throw std::invalid_argument("module: need \"maps\" object");
    for (const Arrow& h : g.arrows) {
        if (!j["maps"].contains(h.id))
            throw std::invalid_argument("module: missing map for arrow " + h.id);
        m.maps[h.id] = matrix_from_json(j["maps"][h.id], m.dims[h.target], m.dims[h.source]);
    }
    return m;
}

// ---- filtration setup: {"n","k","x","W","J"}

inline Json to_json(const FiltrationSetup<Rational>& s) {
    Json j;
    j["n"] = s.n;
    j["k"] = s.k;
    j["x"] = to_json(s.x);
    Json w = Json::array();
    for (int r = 0; r < s.W.basis.rows; ++r) {
        Json row = Json::array();
        for (int c = 0; c < s.n; ++c) row.push_back(to_json(s.W.basis.at(r, c)));
        w.push_back(std::move(row));
    }
    j["W"] = std::move(w);
    j["J"] = std::vector<int>(s.J.begin(), s.J.end());
    return j;
}

inline FiltrationSetup<Rational> setup_from_json(const Json& j) {
    FiltrationSetup<Rational> s;
    for (const char* key : {"n", "k", "x", "W", "J"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("setup: missing \"") + key + "\"");
    s.n = j["n"].get<int>();
    s.k = j["k"].get<int>();
    if (s.n < 0 || s.k < 0) throw std::invalid_argument("setup: negative dimensions");
    s.x = matrix_from_json(j["x"], s.n, s.n);
    if (!j["W"].is_array()) throw std::invalid_argument("setup: \"W\" must be a row list");
    Matrix<Rational> rows(static_cast<int>(j["W"].size()), s.n);
    for (int r = 0; r < rows.rows; ++r) {
        if (static_cast<int>(j["W"][r].size()) != s.n)
            throw std::invalid_argument("setup: W row length differs from n");
        for (int c = 0; c < s.n; ++c) rows.at(r, c) = rational_from_json(j["W"][r][c]);
    }
    s.W = Subspace<Rational>::from_rows(s.n, std::move(rows));
    for (const Json& p : j["J"]) s.J.insert(p.get<int>());
    return s;
}

// ---- diagram and reports

inline Json to_json(const Diagram& d) {
    Json j;
    j["n"] = d.n;
    Json cols = Json::array();
    for (auto [t, b] : d.columns) cols.push_back({{"top", t}, {"bottom", b}});
    j["columns"] = std::move(cols);
    j["isolated"] = d.isolated;
    j["gray"] = std::vector<int>(d.gray.begin(), d.gray.end());
    return j;
}

inline Json curve_to_json(const std::vector<std::pair<std::uint64_t, Rational>>& curve) {
    Json c = Json::array();
    for (auto [q, n] : curve) c.push_back(Json::array({q, to_json(n)}));
    return c;
}

inline Json to_json(const EulerResult& r) {
    Json j;
    j["value"] = r.value.str();
    Json c = Json::array();
    for (auto [q, n] : r.curve.samples) c.push_back(Json::array({q, n.str()}));
    j["curve"] = std::move(c);
    j["degree_bound"] = r.curve.degree_bound;
    return j;
}

inline Json to_json(const GenFormReport& r) {
    Json j;
    j["lhs"] = to_json(r.lhs);
    j["rhs"] = to_json(r.rhs);
    j["pass"] = r.pass;
    j["curve_lhs"] = curve_to_json(r.curve_lhs);
    j["curve_rhs"] = curve_to_json(r.curve_rhs);
    j["primes"] = r.primes;
    if (!r.message.empty()) j["message"] = r.message;
    return j;
}

inline Json to_json(const MainLemmaReport& r) {
    Json j;
    j["recipe"] = r.recipe;
    j["twisted_recipe"] = r.twisted_recipe;
    j["side_f"] = to_json(r.side_f);
    j["side_g"] = to_json(r.side_g);
    j["pass"] = r.pass;
    if (!r.message.empty()) j["message"] = r.message;
    return j;
}

// ---- text forms: words "i1.i2.i3", f-words "i | j1:m1, j2:m2"

inline Word parse_word(const std::string& text) {
    Word w;
    std::string tok;
    std::istringstream is(text);
    while (std::getline(is, tok, '.')) {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("word: bad token \"" + tok + "\"");
        w.push_back(v);
    }
    if (w.empty()) throw std::invalid_argument("word: empty");
    return w;
}

inline FWord parse_fword(const std::string& text) {
    auto bar = text.find('|');
    if (bar == std::string::npos) throw std::invalid_argument("fword: missing '|'");
    FWord u;
    u.base_vertex = std::stoi(text.substr(0, bar));
    std::string rest = text.substr(bar + 1);
    std::istringstream is(rest);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        auto colon = tok.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("fword: factor \"" + tok + "\" needs j:m");
        u.factors.emplace_back(std::stoi(tok.substr(0, colon)),
                               std::stoi(tok.substr(colon + 1)));
    }
    return u;
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

}  // namespace prepchi
