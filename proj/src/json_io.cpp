#include "opbmo/json_io.hpp"

#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace opbmo {

namespace {

using nlohmann::json;

json matrix_to_parts(const Mat& m) {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(rrow);
        im.push_back(irow);
    }
    return json{{"re", re}, {"im", im}};
}

Mat matrix_from_parts(const json& j, int dim) {
    Mat m = Mat::Zero(dim, dim);
    const json& re = j.at("re");
    if (static_cast<int>(re.size()) != dim)
        throw std::invalid_argument("matrix row count mismatch");
    const bool has_im = j.contains("im");
    for (int i = 0; i < dim; ++i) {
        const json& rrow = re.at(static_cast<std::size_t>(i));
        if (static_cast<int>(rrow.size()) != dim)
            throw std::invalid_argument("matrix column count mismatch");
        for (int c = 0; c < dim; ++c) {
            double real = rrow.at(static_cast<std::size_t>(c)).get<double>();
            double imag = 0.0;
            if (has_im)
                imag = j.at("im").at(static_cast<std::size_t>(i))
                           .at(static_cast<std::size_t>(c)).get<double>();
            m(i, c) = Complex(real, imag);
        }
    }
    return m;
}

void check_format(const json& j) {
    if (j.contains("format") && j.at("format").get<std::string>() != "opbmo/1")
        throw std::invalid_argument("unsupported format field");
}

MatrixSymbol symbol_from_parsed(const json& j) {
    check_format(j);
    const int dim = j.at("n").get<int>();
    const int depth = j.at("depth").get<int>();
    MatrixSymbol b(dim, depth);
    if (j.contains("dc")) b.set_dc(matrix_from_parts(j.at("dc"), dim));
    if (j.contains("coeffs")) {
        for (const json& entry : j.at("coeffs")) {
            const int level = entry.at("level").get<int>();
            const std::int64_t pos = entry.at("pos").get<std::int64_t>();
            if (level < 0 || level >= depth)
                throw std::invalid_argument("coefficient level out of range for depth");
            if (pos < 0 || pos >= (std::int64_t{1} << level))
                throw std::invalid_argument("coefficient position out of range");
            b.set_coeff(level, pos, matrix_from_parts(entry, dim));
        }
    }
    return b;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string symbol_to_json(const MatrixSymbol& b) {
    json j;
    j["format"] = "opbmo/1";
    j["n"] = b.dim();
    j["depth"] = b.depth();
    j["dc"] = matrix_to_parts(b.dc());
    json coeffs = json::array();
    for (int level = 0; level < b.depth(); ++level)
        for (std::int64_t p = 0; p < (std::int64_t{1} << level); ++p) {
            const Mat& m = b.coeff(level, p);
            if (m.norm() == 0.0) continue;  // omitted coefficients are zero
            json entry = matrix_to_parts(m);
            entry["level"] = level;
            entry["pos"] = p;
            coeffs.push_back(entry);
        }
    j["coeffs"] = coeffs;
    return j.dump(2);
}

MatrixSymbol symbol_from_json(const std::string& text) {
    return symbol_from_parsed(json::parse(text));
}

std::vector<MatrixSymbol> symbol_list_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (!j.is_array()) throw std::invalid_argument("expected a JSON array of symbols");
    std::vector<MatrixSymbol> out;
    out.reserve(j.size());
    for (const json& entry : j) out.push_back(symbol_from_parsed(entry));
    return out;
}

std::string norm_report_to_json(const NormReport& report) {
    json j;
    j["format"] = "opbmo/1";
    json norms = json::object();
    for (const auto& [name, value] : report.values) norms[name] = value;
    j["norms"] = norms;
    json diags = json::object();
    for (const auto& [name, d] : report.diagnostics) {
        json entry;
        if (d.interval)
            entry["interval"] = {{"level", d.interval->level}, {"pos", d.interval->pos}};
        if (d.attaining_e.size() > 0) {
            json re = json::array(), im = json::array();
            for (Eigen::Index i = 0; i < d.attaining_e.size(); ++i) {
                re.push_back(d.attaining_e(i).real());
                im.push_back(d.attaining_e(i).imag());
            }
            entry["e"] = {{"re", re}, {"im", im}};
        }
        if (d.attaining_f.size() > 0) {
            json re = json::array(), im = json::array();
            for (Eigen::Index i = 0; i < d.attaining_f.size(); ++i) {
                re.push_back(d.attaining_f(i).real());
                im.push_back(d.attaining_f(i).imag());
            }
            entry["f"] = {{"re", re}, {"im", im}};
        }
        entry["residual"] = d.residual;
        entry["dispersion"] = d.dispersion;
        diags[name] = entry;
    }
    j["diagnostics"] = diags;
    return j.dump(2);
}

std::string norm_report_to_csv(const NormReport& report) {
    std::string header, row;
    bool first = true;
    for (const auto& [name, value] : report.values) {
        if (!first) {
            header += ',';
            row += ',';
        }
        header += name;
        row += format_double(value);
        first = false;
    }
    return header + "\n" + row + "\n";
}

std::string matrix_to_json(const Mat& m) {
    json j = matrix_to_parts(m);
    j["format"] = "opbmo/1";
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    return j.dump(2);
}

namespace {

std::string growth_csv_header() {
    return "n,depth,seed,numerator,denominator,ratio,fit_log,fit_log2,residual\n";
}

std::string growth_csv_row(int dim, int depth, std::uint64_t seed,
                           const std::string& num, const std::string& den,
                           double ratio, double fit_log, double fit_log2,
                           double residual) {
    std::string row;
    row += std::to_string(dim) + ',' + std::to_string(depth) + ',' +
           std::to_string(seed) + ',' + num + ',' + den + ',' +
           format_double(ratio) + ',' + format_double(fit_log) + ',' +
           format_double(fit_log2) + ',' + format_double(residual) + '\n';
    return row;
}

}  // namespace

std::string search_result_to_json(const SearchConfig& cfg, const SearchResult& result) {
    json j;
    j["format"] = "opbmo/1";
    j["numerator"] = cfg.numerator;
    j["denominator"] = cfg.denominator;
    j["n"] = cfg.dim;
    j["depth"] = cfg.depth;
    j["seed"] = cfg.seed;
    j["restarts"] = cfg.restarts;
    j["steps"] = cfg.steps;
    j["ratio"] = result.ratio;
    j["trace"] = result.trace;
    j["best_symbol"] = json::parse(symbol_to_json(result.best));
    return j.dump(2);
}

std::string search_result_to_csv(const SearchConfig& cfg, const SearchResult& result) {
    return growth_csv_header() + growth_csv_row(cfg.dim, cfg.depth, cfg.seed,
                                                cfg.numerator, cfg.denominator,
                                                result.ratio, 0.0, 0.0, 0.0);
}

std::string growth_result_to_csv(const GrowthConfig& cfg, const GrowthResult& result) {
    std::string out = growth_csv_header();
    for (const auto& row : result.rows)
        out += growth_csv_row(row.dim, row.depth, row.seed, cfg.numerator,
                              cfg.denominator, row.ratio, row.fit_log, row.fit_log2,
                              row.residual);
    return out;
}

}  // namespace opbmo
