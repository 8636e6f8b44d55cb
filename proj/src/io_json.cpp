#include "ri/io_json.hpp"

#include <cmath>
#include <fstream>
#include <map>

namespace ri {

Rational rational_from_double(double v) {
    if (!std::isfinite(v))
        throw std::invalid_argument("cannot convert non-finite value to rational");
    if (v == 0.0)
        return Rational(0);
    int exp = 0;
    const double mant = std::frexp(v, &exp);
    const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r(scaled);
    if (exp > 0) {
        if (exp > 73)
            throw std::overflow_error("double too large for exact conversion");
        return Rational(static_cast<int128>(scaled) << exp, 1);
    }
    if (exp < -125)
        throw std::overflow_error("double too small for exact conversion");
    return Rational(scaled, int128(1) << (-exp));
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

Complex entry_from_json(const Json& e) {
    if (e.is_number())
        return Complex(e.get<double>(), 0.0);
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        return Complex(e[0].get<double>(), e[1].get<double>());
    throw std::invalid_argument("matrix entry must be a number or [re, im]");
}

} // namespace

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("matrix must be a non-empty array of rows");
    const int rows = int(j.size());
    const int cols = int(j[0].size());
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || int(j[i].size()) != cols)
            throw std::invalid_argument("matrix rows must have equal length");
        for (int c = 0; c < cols; ++c)
            m(i, c) = entry_from_json(j[i][c]);
    }
    return m;
}

Json cvector_to_json(const CVector& v) {
    Json out = Json::array();
    for (const auto& c : v)
        out.push_back(Json::array({c.real(), c.imag()}));
    return out;
}

CVector cvector_from_json(const Json& j) {
    if (!j.is_array())
        throw std::invalid_argument("vector must be an array");
    CVector v;
    v.reserve(j.size());
    for (const auto& e : j)
        v.push_back(entry_from_json(e));
    return v;
}

Json subset_to_json(IndexSet a) {
    Json out = Json::array();
    for (int e : a.elements())
        out.push_back(e + 1);
    return out;
}

std::vector<double> InputDocument::probabilities_double() const {
    std::vector<double> out;
    if (!probabilities)
        return out;
    out.reserve(probabilities->size());
    for (const auto& r : *probabilities)
        out.push_back(r.to_double());
    return out;
}

InputDocument InputDocument::parse(const Json& j, NumericMode cli_mode,
                                   bool strict_prebasis) {
    if (!j.is_object())
        throw std::invalid_argument("input document must be a JSON object");
    InputDocument doc;

    doc.mode = cli_mode;
    if (cli_mode == NumericMode::Auto && j.contains("mode")) {
        const std::string m = j.at("mode").get<std::string>();
        if (m == "exact")
            doc.mode = NumericMode::Exact;
        else if (m == "double")
            doc.mode = NumericMode::Double;
        else
            throw std::invalid_argument("mode must be 'exact' or 'double'");
    }

    if (j.contains("family")) {
        const Json& f = j.at("family");
        std::vector<std::string> universe =
            f.at("universe").get<std::vector<std::string>>();
        std::vector<std::vector<std::string>> sets =
            f.at("sets").get<std::vector<std::vector<std::string>>>();
        doc.family.emplace(std::move(universe), std::move(sets));
    }

    if (j.contains("probabilities")) {
        const Json& p = j.at("probabilities");
        if (!p.is_array() || p.empty())
            throw std::invalid_argument("probabilities must be a non-empty array");
        std::vector<Rational> values;
        bool all_text = true;
        for (const auto& e : p) {
            if (e.is_string())
                values.push_back(Rational::parse(e.get<std::string>()));
            else if (e.is_number()) {
                values.push_back(rational_from_double(e.get<double>()));
                all_text = false;
            } else
                throw std::invalid_argument(
                    "probability entries must be numbers or fraction strings");
        }
        doc.probabilities = std::move(values);
        doc.probabilities_exact = all_text;
    }

    if (j.contains("curve")) {
        const Json& c = j.at("curve");
        const std::string kind = c.at("kind").get<std::string>();
        int n = 0;
        if (doc.family)
            n = doc.family->n();
        else if (doc.probabilities)
            n = int(doc.probabilities->size());
        if (kind == "diagonal") {
            if (c.contains("n"))
                n = c.at("n").get<int>();
            if (n == 0)
                throw std::invalid_argument(
                    "diagonal curve needs a family, probabilities, or an explicit n");
            doc.curve = MonotoneCurve::diagonal(n);
        } else if (kind == "power") {
            doc.curve =
                MonotoneCurve::power(c.at("gamma").get<std::vector<double>>());
        } else if (kind == "polyline") {
            doc.curve = MonotoneCurve::polyline(
                c.at("t").get<std::vector<double>>(),
                c.at("p").get<std::vector<std::vector<double>>>());
        } else {
            throw std::invalid_argument("curve kind must be diagonal, power or polyline");
        }
    }

    if (j.contains("prebasis")) {
        const Json& b = j.at("prebasis");
        const int d = b.at("dimension").get<int>();
        std::vector<CVector> cols;
        for (const auto& v : b.at("vectors"))
            cols.push_back(cvector_from_json(v));
        PreBasisOptions opts;
        opts.strict = strict_prebasis;
        doc.prebasis = PreBasis::validate(d, std::move(cols), opts);
    }

    if (j.contains("projectors")) {
        const Json& pj = j.at("projectors");
        const int d = pj.at("dimension").get<int>();
        const int n = pj.at("n").get<int>();
        std::map<std::uint32_t, Matrix> entries;
        for (const auto& [key, value] : pj.at("projectors").items())
            entries[std::uint32_t(std::stoul(key))] = matrix_from_json(value);
        doc.projectors = ProjectorFamily::from_entries(
            d, n, entries, doc.prebasis ? &*doc.prebasis : nullptr);
    } else if (doc.prebasis) {
        doc.projectors = ProjectorFamily::from_prebasis(*doc.prebasis);
    }

    if (j.contains("rho"))
        doc.rho = matrix_from_json(j.at("rho"));

    // Cross-section consistency.
    int n = 0;
    auto check_n = [&](int candidate, const char* what) {
        if (candidate <= 0)
            return;
        if (n == 0)
            n = candidate;
        else if (n != candidate)
            throw std::invalid_argument(std::string("section size mismatch: ") + what);
    };
    if (doc.family)
        check_n(doc.family->n(), "family vs earlier sections");
    if (doc.probabilities)
        check_n(int(doc.probabilities->size()), "probabilities vs earlier sections");
    if (doc.curve)
        check_n(doc.curve->n(), "curve vs earlier sections");
    if (doc.projectors)
        check_n(doc.projectors->count(), "projectors vs earlier sections");
    if (doc.rho && doc.projectors &&
        doc.rho->rows() != doc.projectors->dimension())
        throw std::invalid_argument("rho dimension does not match the projector family");

    if (!doc.family && !doc.probabilities && !doc.curve && !doc.prebasis &&
        !doc.projectors && !doc.rho)
        throw std::invalid_argument("input document has no recognized sections");

    return doc;
}

InputDocument InputDocument::parse_file(const std::string& path, NumericMode cli_mode,
                                        bool strict_prebasis) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open input file: " + path);
    Json j;
    in >> j;
    return parse(j, cli_mode, strict_prebasis);
}

} // namespace ri
