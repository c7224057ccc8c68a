#include "unifact/json_io.hpp"

#include <sstream>

#include <json.hpp>

namespace unifact::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded())
        throw IoError("malformed JSON input");
    return j;
}

ordered_json complex_json(const Cplx& z) { return ordered_json{{"re", z.real()}, {"im", z.imag()}}; }

Cplx complex_from(const json& j) {
    if (j.is_number())
        return Cplx(j.get<double>(), 0.0);
    if (j.is_array()) {
        if (j.size() != 2 || !j[0].is_number() || !j[1].is_number())
            throw IoError("complex pair must be [re, im]");
        return Cplx(j[0].get<double>(), j[1].get<double>());
    }
    if (j.is_object()) {
        if (!j.contains("re") || !j.contains("im"))
            throw IoError("complex object must carry re and im");
        return Cplx(j.at("re").get<double>(), j.at("im").get<double>());
    }
    throw IoError("complex value must be a number, [re, im] pair, or {re, im} object");
}

ordered_json var_json(const VarId& v) {
    if (v.is_symbol())
        return ordered_json{{"name", v.name}};
    return ordered_json{{"k", v.factor}, {"row", v.row}, {"col", v.col}};
}

VarId var_from(const json& j) {
    if (!j.is_object())
        throw IoError("variable must be an object");
    if (j.contains("name"))
        return VarId::symbol(j.at("name").get<std::string>());
    if (!(j.contains("k") && j.contains("row") && j.contains("col")))
        throw IoError("variable needs either name or k/row/col");
    return VarId::param(j.at("k").get<int>(), j.at("row").get<int>(), j.at("col").get<int>());
}

ordered_json poly_json(const Poly& p) {
    ordered_json terms = ordered_json::array();
    for (auto& [m, c] : p.terms()) {
        ordered_json mono = ordered_json::array();
        for (auto& [v, e] : m.factors())
            mono.push_back(ordered_json{{"var", var_json(v)}, {"exp", e}});
        terms.push_back(
            ordered_json{{"mono", mono}, {"re", c.re_string()}, {"im", c.im_string()}});
    }
    return ordered_json{{"terms", terms}};
}

Poly poly_from(const json& j) {
    if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array())
        throw IoError("polynomial JSON needs a terms array");
    Poly p;
    for (const json& t : j.at("terms")) {
        ExactComplex c = ExactComplex::from_strings(t.at("re").get<std::string>(),
                                                    t.at("im").get<std::string>());
        Monomial m;
        for (const json& f : t.at("mono")) {
            int e = f.at("exp").get<int>();
            m = m * Monomial(var_from(f.at("var")), e);
        }
        p.add_term(m, c);
    }
    return p;
}

ordered_json matrix_json(const ComplexMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (int i = 1; i <= m.n(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 1; j <= m.n(); ++j)
            row.push_back(complex_json(m(i, j)));
        rows.push_back(row);
    }
    return ordered_json{{"n", m.n()}, {"rows", rows}};
}

ComplexMatrix matrix_from(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("rows"))
        throw IoError("matrix JSON needs n and rows");
    int n = j.at("n").get<int>();
    const json& rows = j.at("rows");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw IoError("matrix rows do not match n");
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw IoError("matrix row has wrong length");
        for (int c = 0; c < n; ++c)
            m(i + 1, c + 1) = complex_from(rows[i][c]);
    }
    return m;
}

const char* side_name(Side s) { return s == Side::lower ? "lower" : "upper"; }

Side side_from(const std::string& s) {
    if (s == "lower")
        return Side::lower;
    if (s == "upper")
        return Side::upper;
    throw IoError("side must be lower or upper");
}

} // namespace

std::string poly_to_json(const Poly& p) { return poly_json(p).dump(); }
Poly poly_from_json(const std::string& text) { return poly_from(parse(text)); }

std::string matrix_to_json(const ComplexMatrix& m) { return matrix_json(m).dump(); }
ComplexMatrix matrix_from_json(const std::string& text) { return matrix_from(parse(text)); }

std::string chain_to_json(const FactorChain& chain) {
    ordered_json factors = ordered_json::array();
    for (const auto& f : chain.factors()) {
        ordered_json entries = ordered_json::array();
        for (auto& [rc, v] : f.entries())
            entries.push_back(ordered_json{
                {"row", rc.first}, {"col", rc.second}, {"re", v.real()}, {"im", v.imag()}});
        factors.push_back(ordered_json{{"k", f.factor_index()}, {"entries", entries}});
    }
    ordered_json j{{"n", chain.n()},
                   {"orientation",
                    chain.orientation() == Orientation::inverse ? "inverse" : "direct"},
                   {"factors", factors}};
    return j.dump();
}

FactorChain chain_from_json(const std::string& text) {
    json j = parse(text);
    int n = j.at("n").get<int>();
    std::string ori = j.value("orientation", "inverse");
    FactorChain chain(n, ori == "direct" ? Orientation::direct : Orientation::inverse);
    for (const json& f : j.at("factors")) {
        ParamVector pv(n, f.at("k").get<int>());
        for (const json& e : f.at("entries")) {
            Cplx v(e.value("re", 0.0), e.value("im", 0.0));
            pv.set(e.at("row").get<int>(), e.at("col").get<int>(), v);
        }
        chain.append(std::move(pv));
    }
    return chain;
}

std::string factors_to_json(int n, const std::vector<ElementaryFactor>& factors) {
    ordered_json arr = ordered_json::array();
    int k = 1;
    for (const auto& f : factors) {
        ordered_json entries = ordered_json::array();
        for (auto& [rc, v] : f.entries)
            entries.push_back(ordered_json{
                {"row", rc.first}, {"col", rc.second}, {"re", v.real()}, {"im", v.imag()}});
        arr.push_back(ordered_json{{"k", k++}, {"side", side_name(f.side)}, {"entries", entries}});
    }
    ordered_json j{{"n", n},
                   {"orientation", "direct"},
                   {"factors", arr},
                   {"K", static_cast<int>(factors.size())}};
    return j.dump();
}

std::vector<ElementaryFactor> factors_from_json(const std::string& text, int* n_out) {
    json j = parse(text);
    int n = j.at("n").get<int>();
    if (n_out)
        *n_out = n;
    std::vector<ElementaryFactor> out;
    for (const json& fj : j.at("factors")) {
        ElementaryFactor f;
        f.n = n;
        if (fj.contains("side"))
            f.side = side_from(fj.at("side").get<std::string>());
        else
            f.side = factor_is_lower(fj.at("k").get<int>()) ? Side::lower : Side::upper;
        for (const json& e : fj.at("entries")) {
            int r = e.at("row").get<int>(), c = e.at("col").get<int>();
            f.entries[{r, c}] = Cplx(e.value("re", 0.0), e.value("im", 0.0));
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::string poly_factors_to_json(const std::vector<PolyElementaryFactor>& factors) {
    ordered_json arr = ordered_json::array();
    int k = 1;
    for (const auto& f : factors)
        arr.push_back(ordered_json{
            {"k", k++}, {"side", side_name(f.side)}, {"payload", poly_json(f.payload)}});
    ordered_json j{{"n", 2}, {"factors", arr}, {"K", static_cast<int>(factors.size())}};
    return j.dump();
}

std::vector<PolyElementaryFactor> poly_factors_from_json(const std::string& text) {
    json j = parse(text);
    std::vector<PolyElementaryFactor> out;
    for (const json& fj : j.at("factors"))
        out.push_back(
            {side_from(fj.at("side").get<std::string>()), poly_from(fj.at("payload"))});
    return out;
}

std::string poly_matrix2_to_json(const PolyMatrix2& m) {
    ordered_json j{{"var", var_json(m.var)},
                   {"entries", ordered_json::array({
                                   ordered_json::array({poly_json(m.a), poly_json(m.b)}),
                                   ordered_json::array({poly_json(m.c), poly_json(m.d)}),
                               })}};
    return j.dump();
}

PolyMatrix2 poly_matrix2_from_json(const std::string& text) {
    json j = parse(text);
    const json& e = j.at("entries");
    if (!e.is_array() || e.size() != 2 || e[0].size() != 2 || e[1].size() != 2)
        throw IoError("polynomial matrix needs 2x2 entries");
    return PolyMatrix2(poly_from(e[0][0]), poly_from(e[0][1]), poly_from(e[1][0]),
                       poly_from(e[1][1]));
}

std::string cvec_to_json(const std::vector<Cplx>& v) {
    ordered_json arr = ordered_json::array();
    for (const Cplx& z : v)
        arr.push_back(complex_json(z));
    return arr.dump();
}

std::vector<Cplx> cvec_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.is_array())
        throw IoError("complex vector must be a JSON array");
    std::vector<Cplx> out;
    out.reserve(j.size());
    for (const json& e : j)
        out.push_back(complex_from(e));
    return out;
}

std::string assignment_to_json(const PointAssignment& point) {
    ordered_json arr = ordered_json::array();
    for (auto& [v, x] : point)
        arr.push_back(ordered_json{{"var", var_json(v)}, {"re", x.real()}, {"im", x.imag()}});
    return arr.dump();
}

PointAssignment assignment_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.is_array())
        throw IoError("point assignment must be a JSON array");
    PointAssignment out;
    for (const json& e : j) {
        Cplx v(e.value("re", 0.0), e.value("im", 0.0));
        out[var_from(e.at("var"))] = v;
    }
    return out;
}

std::string chart_to_json(const FiberChart& chart) {
    ordered_json solved = ordered_json::array();
    std::ostringstream den;
    den << "a_" << chart.pivot();
    for (const SolvedVar& s : chart.solved())
        solved.push_back(ordered_json{
            {"var", var_json(s.var)}, {"num", poly_json(s.numerator)}, {"den", den.str()}});
    ordered_json free_vars = ordered_json::array();
    for (const VarId& v : chart.free_vars())
        free_vars.push_back(var_json(v));
    ordered_json chart_vars = ordered_json::array();
    for (const VarId& v : chart.chart_vars())
        chart_vars.push_back(var_json(v));
    ordered_json a = ordered_json::array();
    for (const Cplx& z : chart.target())
        a.push_back(complex_json(z));
    ordered_json j{{"n", chart.n()},
                   {"K", chart.K()},
                   {"stratum", chart.stratum()},
                   {"pivot", chart.pivot()},
                   {"a", a},
                   {"solved", solved},
                   {"free", free_vars},
                   {"chart", chart_vars},
                   {"residual", poly_json(chart.residual())},
                   {"base_dims", ordered_json{{"M", chart.base_dim_M()}, {"N", chart.base_dim_N()}}}};
    return j.dump();
}

std::string track_to_json(const std::vector<TrackPoint>& points) {
    ordered_json arr = ordered_json::array();
    for (const TrackPoint& p : points) {
        ordered_json z = ordered_json::array();
        for (const Cplx& v : p.Z)
            z.push_back(complex_json(v));
        arr.push_back(ordered_json{{"t", p.t},
                                   {"Z", z},
                                   {"residual", p.residual},
                                   {"min_singular_value", p.min_singular_value}});
    }
    return arr.dump();
}

std::vector<PathSample> path_samples_from_json(const std::string& text) {
    json j = parse(text);
    const json& arr = j.is_array() ? j : j.at("samples");
    std::vector<PathSample> out;
    for (const json& e : arr) {
        PathSample s;
        s.t = e.at("t").get<double>();
        for (const json& b : e.at("b"))
            s.b.push_back(complex_from(b));
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<MatrixSample> matrix_samples_from_json(const std::string& text) {
    json j = parse(text);
    const json& arr = j.is_array() ? j : j.at("samples");
    std::vector<MatrixSample> out;
    for (const json& e : arr)
        out.push_back({e.at("t").get<double>(), matrix_from(e.at("matrix"))});
    return out;
}

std::string chain_samples_to_json(const std::vector<ChainSample>& samples) {
    ordered_json arr = ordered_json::array();
    for (const ChainSample& s : samples) {
        json factors = json::parse(factors_to_json(
            s.factors.empty() ? 1 : s.factors.front().n, s.factors));
        arr.push_back(ordered_json{{"t", s.t}, {"residual", s.residual}, {"chain", factors}});
    }
    return arr.dump();
}

VarId varid_from_text(const std::string& text) {
    if (text.empty())
        throw IoError("empty variable spelling");
    if (text.rfind("z[", 0) == 0) {
        if (text.back() != ']')
            throw IoError("parameter spelling must be z[row,col,factor]");
        int r = 0, c = 0, k = 0;
        char sep1 = 0, sep2 = 0, close = 0;
        std::istringstream is(text.substr(2));
        if (!(is >> r >> sep1 >> c >> sep2 >> k >> close) || sep1 != ',' || sep2 != ',' ||
            close != ']')
            throw IoError("parameter spelling must be z[row,col,factor]");
        return VarId::param(k, r, c);
    }
    return VarId::symbol(text);
}

} // namespace unifact::io
