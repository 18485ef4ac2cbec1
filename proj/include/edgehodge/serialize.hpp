#pragma once

// JSON encodings of complexes, maps, edge-space models and spectra, plus the
// two-column text tables used for radial profiles. Rationals are written as
// canonical "p/q" strings, so complexes and models round-trip bit-exactly.

#include "edgehodge/catalogue.hpp"
#include "edgehodge/spectral.hpp"

#include "json.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace edgehodge {

using Json = nlohmann::json;

class FormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw FormatError(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

inline Rational rational_from_json(const Json& j) {
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rational(j.get<long>());
    }
    throw FormatError("rational entries must be strings \"p/q\" or integers");
}

} // namespace detail

inline Json to_json(const QMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(to_string(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Needs the shape because an empty row list cannot carry a column count.
inline QMatrix qmatrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows) {
        throw FormatError("matrix has the wrong number of rows");
    }
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) {
            throw FormatError("matrix row has the wrong length");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(i, c) = detail::rational_from_json(j[i][c]);
        }
    }
    return m;
}

inline Json to_json(const CochainComplex& c) {
    Json diffs = Json::array();
    for (const auto& d : c.differentials()) {
        diffs.push_back(to_json(d));
    }
    return Json{{"low", c.low_degree()}, {"dims", c.dims()}, {"differentials", diffs}};
}

inline CochainComplex complex_from_json(const Json& j) {
    int low = j.is_object() && j.contains("low") ? j.at("low").get<int>() : 0;
    auto dims = detail::field(j, "dims").get<std::vector<std::size_t>>();
    const Json& diffs = detail::field(j, "differentials");
    std::size_t expected = dims.empty() ? 0 : dims.size() - 1;
    if (!diffs.is_array() || diffs.size() != expected) {
        throw FormatError("complex needs one differential between each pair of adjacent degrees");
    }
    std::vector<QMatrix> d;
    for (std::size_t i = 0; i < expected; ++i) {
        d.push_back(qmatrix_from_json(diffs[i], dims[i + 1], dims[i]));
    }
    return CochainComplex(low, std::move(dims), std::move(d));
}

inline Json to_json(const ComplexMap& m) {
    Json maps = Json::array();
    int lo = m.min_degree();
    int hi = m.max_degree();
    for (int k = lo; k <= hi; ++k) {
        maps.push_back(to_json(m.at(k)));
    }
    return Json{{"low", lo}, {"maps", maps}};
}

inline ComplexMap map_from_json(const Json& j, const CochainComplex& source, const CochainComplex& target) {
    int low = detail::field(j, "low").get<int>();
    const Json& maps = detail::field(j, "maps");
    if (!maps.is_array()) {
        throw FormatError("'maps' must be an array");
    }
    std::vector<QMatrix> out;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        int k = low + static_cast<int>(i);
        out.push_back(qmatrix_from_json(maps[i], target.dim(k), source.dim(k)));
    }
    return ComplexMap(source, target, low, std::move(out));
}

inline Json to_json(const TensorLayout& layout) {
    Json degrees = Json::array();
    for (const auto& row : layout.blocks) {
        Json blocks = Json::array();
        for (const auto& b : row) {
            blocks.push_back({{"base", b.left_degree}, {"fibre", b.right_degree}, {"offset", b.offset}, {"size", b.size}});
        }
        degrees.push_back(std::move(blocks));
    }
    return Json{{"low", layout.low}, {"degrees", degrees}};
}

inline TensorLayout layout_from_json(const Json& j) {
    TensorLayout layout;
    layout.low = detail::field(j, "low").get<int>();
    for (const auto& row : detail::field(j, "degrees")) {
        std::vector<TensorBlock> blocks;
        for (const auto& b : row) {
            blocks.push_back({detail::field(b, "base").get<int>(), detail::field(b, "fibre").get<int>(),
                              detail::field(b, "offset").get<std::size_t>(),
                              detail::field(b, "size").get<std::size_t>()});
        }
        layout.blocks.push_back(std::move(blocks));
    }
    return layout;
}

inline Json to_json(const EdgeSpaceModel& s) {
    return Json{{"name", s.name},
                {"description", s.description},
                {"n", s.n},
                {"b", s.b},
                {"f", s.f},
                {"compact", s.compact},
                {"fibre", to_json(s.fibre)},
                {"base", to_json(s.base)},
                {"regular", to_json(s.regular)},
                {"link_bundle", to_json(s.link_bundle)},
                {"restriction", to_json(s.restriction)},
                {"bigrading", to_json(s.bigrading)}};
}

/// Reads a model; `link_bundle` and `bigrading` default to B (x) F when
/// absent. Throws ModelError if the result violates the model invariants.
inline EdgeSpaceModel model_from_json(const Json& j) {
    EdgeSpaceModel s;
    s.name = j.value("name", std::string("unnamed"));
    s.description = j.value("description", std::string());
    s.fibre = complex_from_json(detail::field(j, "fibre"));
    s.base = complex_from_json(detail::field(j, "base"));
    s.regular = complex_from_json(detail::field(j, "regular"));
    s.link_bundle = j.contains("link_bundle") ? complex_from_json(j.at("link_bundle")) : tensor(s.base, s.fibre);
    s.bigrading = j.contains("bigrading") ? layout_from_json(j.at("bigrading")) : tensor_layout(s.base, s.fibre);
    s.b = j.contains("b") ? j.at("b").get<long>() : s.base.top_degree();
    s.f = j.contains("f") ? j.at("f").get<long>() : s.fibre.top_degree();
    s.n = j.contains("n") ? j.at("n").get<long>() : s.b + s.f + 1;
    s.compact = j.value("compact", false);
    s.restriction = map_from_json(detail::field(j, "restriction"), s.regular, s.link_bundle);
    validate_model(s);
    return s;
}

inline Json to_json(const FibreSpectrum& s) {
    Json degrees = Json::array();
    for (const auto& deg : s.degrees) {
        Json list = Json::array();
        for (const auto& v : deg) {
            Json e;
            if (v.exact) {
                e["value"] = to_string(*v.exact);
            } else {
                e["value"] = v.value;
            }
            e["multiplicity"] = v.multiplicity;
            list.push_back(std::move(e));
        }
        degrees.push_back(std::move(list));
    }
    Json out{{"f", s.f}, {"provenance", to_string(s.provenance)}, {"degrees", degrees}};
    if (std::isfinite(s.complete_below)) {
        out["complete_below"] = s.complete_below;
    } else {
        out["complete_below"] = nullptr;
    }
    return out;
}

/// Eigenvalues given as strings are exact rationals; numbers are decimals.
inline FibreSpectrum spectrum_from_json(const Json& j) {
    FibreSpectrum s;
    s.f = detail::field(j, "f").get<long>();
    std::string prov = j.value("provenance", std::string("closed-form"));
    if (prov == "closed-form") {
        s.provenance = SpectrumProvenance::closed_form;
    } else if (prov == "discrete") {
        s.provenance = SpectrumProvenance::discrete;
    } else {
        throw FormatError("unknown spectrum provenance '" + prov + "'");
    }
    if (j.contains("complete_below") && !j.at("complete_below").is_null()) {
        s.complete_below = j.at("complete_below").get<double>();
    }
    for (const auto& deg : detail::field(j, "degrees")) {
        std::vector<SpectralValue> list;
        for (const auto& e : deg) {
            const Json& v = detail::field(e, "value");
            std::size_t mult = e.value("multiplicity", std::size_t{1});
            if (v.is_string()) {
                list.push_back(SpectralValue::exact_value(parse_rational(v.get<std::string>()), mult));
            } else if (v.is_number()) {
                list.push_back(SpectralValue::numeric(v.get<double>(), mult));
            } else {
                throw FormatError("eigenvalue must be a rational string or a number");
            }
        }
        s.degrees.push_back(std::move(list));
    }
    try {
        validate_spectrum(s);
    } catch (const SpectrumError& e) {
        throw FormatError(e.what());
    }
    return s;
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw FormatError("'" + path + "': " + e.what());
    }
}

// ---------------------------------------------------------------------------
// two-column tables

inline void write_table(std::ostream& os, const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("write_table: column lengths differ");
    }
    std::ostringstream line;
    line.precision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < x.size(); ++i) {
        line << x[i] << ' ' << y[i] << '\n';
    }
    os << line.str();
}

/// Reads "x value" lines; blank lines and lines starting with '#' are skipped.
inline std::pair<std::vector<double>, std::vector<double>> read_table(std::istream& is) {
    std::vector<double> x;
    std::vector<double> y;
    std::string line;
    long lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream fields(line);
        double a = 0;
        double b = 0;
        std::string rest;
        if (!(fields >> a >> b) || (fields >> rest)) {
            throw FormatError("table line " + std::to_string(lineno) + ": expected two numbers");
        }
        x.push_back(a);
        y.push_back(b);
    }
    return {std::move(x), std::move(y)};
}

} // namespace edgehodge
