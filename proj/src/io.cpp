#include "ctqw/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "ctqw/errors.hpp"

namespace ctqw::io {

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& field, int line) {
    double x = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    while (first != last && *first == ' ') ++first;
    auto res = std::from_chars(first, last, x);
    if (res.ec != std::errc{} || res.ptr != last) throw ParseError("bad number '" + field + "'", line);
    return x;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        if (!field.empty() && field.back() == '\r') field.pop_back();
        fields.push_back(field);
    }
    return fields;
}

// Reads all non-empty rows after the header, checking the header's first columns.
std::vector<std::vector<std::string>> read_table(std::istream& in, const std::vector<std::string>& header,
                                                 std::vector<std::string>* header_out = nullptr) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing header", 1);
    auto head = split(line);
    if (head.size() < header.size() || !std::equal(header.begin(), header.end(), head.begin()))
        throw ParseError("unexpected header '" + line + "'", 1);
    if (header_out) *header_out = head;
    std::vector<std::vector<std::string>> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split(line);
        if (fields.size() != head.size())
            throw ParseError("expected " + std::to_string(head.size()) + " columns", line_no);
        rows.push_back(std::move(fields));
    }
    return rows;
}

bool is_probability(Observable o) {
    return o != Observable::approximant;
}

} // namespace

void write_spectrum_csv(std::ostream& out, const Spectrum<double>& s, bool with_eigenvectors) {
    const bool vectors = with_eigenvectors && s.has_eigenvectors();
    out << "index,energy";
    if (vectors)
        for (Eigen::Index j = 0; j < s.size(); ++j) out << ",node_" << j + 1;
    out << '\n';
    for (Eigen::Index n = 0; n < s.size(); ++n) {
        out << n + 1 << ',' << format_double(s.eigenvalues(n));
        if (vectors)
            for (Eigen::Index j = 0; j < s.size(); ++j) out << ',' << format_double(s.eigenvectors(j, n));
        out << '\n';
    }
}

Spectrum<double> read_spectrum_csv(std::istream& in) {
    std::vector<std::string> head;
    const auto rows = read_table(in, {"index", "energy"}, &head);
    const auto n = static_cast<Eigen::Index>(rows.size());
    const bool vectors = head.size() > 2;
    if (vectors && static_cast<Eigen::Index>(head.size()) != n + 2)
        throw ParseError("eigenvector columns do not match row count", 1);
    Spectrum<double> s;
    s.eigenvalues.resize(n);
    if (vectors) s.eigenvectors.resize(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const int line = static_cast<int>(r) + 2;
        s.eigenvalues(r) = parse_double(rows[r][1], line);
        if (vectors)
            for (Eigen::Index j = 0; j < n; ++j) s.eigenvectors(j, r) = parse_double(rows[r][j + 2], line);
    }
    return s;
}

void write_levels_csv(std::ostream& out, const DegeneracySpectrum<double>& ds) {
    out << "energy,degeneracy\n";
    for (const auto& l : ds.levels()) out << format_double(l.energy) << ',' << l.degeneracy << '\n';
}

DegeneracySpectrum<double> read_levels_csv(std::istream& in) {
    const auto rows = read_table(in, {"energy", "degeneracy"});
    std::vector<std::pair<double, int>> levels;
    int line = 1;
    for (const auto& r : rows) {
        ++line;
        const double d = parse_double(r[1], line);
        if (d != static_cast<int>(d) || d < 1) throw ParseError("degeneracy must be a positive integer", line);
        levels.emplace_back(parse_double(r[0], line), static_cast<int>(d));
    }
    const double e_max = levels.empty() ? 0.0 : levels.back().first;
    return DegeneracySpectrum<double>(levels, default_cluster_tolerance(e_max));
}

void write_series_csv(std::ostream& out, const TimeSeries<double>& ts) {
    out << "t,value\n";
    const bool clip = is_probability(ts.observable);
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        double v = ts.values(i);
        if (clip) v = std::clamp(v, 0.0, 1.0);
        out << format_double(ts.times(i)) << ',' << format_double(v) << '\n';
    }
}

SeriesTable read_series_csv(std::istream& in) {
    const auto rows = read_table(in, {"t", "value"});
    SeriesTable table;
    table.times.resize(static_cast<Eigen::Index>(rows.size()));
    table.values.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const int line = static_cast<int>(r) + 2;
        table.times(static_cast<Eigen::Index>(r)) = parse_double(rows[r][0], line);
        table.values(static_cast<Eigen::Index>(r)) = parse_double(rows[r][1], line);
    }
    return table;
}

void write_matrix_csv(std::ostream& out, const MatrixX<double>& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_double(m(i, j));
        out << '\n';
    }
}

MatrixX<double> read_matrix_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        std::vector<double> row;
        for (const auto& f : split(line)) row.push_back(parse_double(f, line_no));
        if (!rows.empty() && row.size() != rows.front().size()) throw ParseError("ragged matrix row", line_no);
        rows.push_back(std::move(row));
    }
    MatrixX<double> m(static_cast<Eigen::Index>(rows.size()),
                      rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    return m;
}

void write_lta_report(std::ostream& out, const LtaReport<double>& r, const std::optional<std::string>& pairwise_file) {
    out << "{\n"
        << "  \"chi_avg_exact\": " << format_double(r.chi_avg_exact) << ",\n"
        << "  \"chi_avg_lower\": " << format_double(r.chi_avg_lower) << ",\n"
        << "  \"equipartition\": " << format_double(r.equipartition) << ",\n"
        << "  \"fourth_moment\": " << format_double(r.fourth_moment) << ",\n"
        << "  \"degenerate_clusters\": " << (r.degenerate_clusters ? "true" : "false");
    if (pairwise_file) out << ",\n  \"pairwise_matrix\": " << nlohmann::json(*pairwise_file).dump();
    out << "\n}\n";
}

LtaSummary read_lta_report(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("LTA report is not valid JSON: ") + e.what(), 0);
    }
    LtaSummary s;
    try {
        s.chi_avg_exact = j.at("chi_avg_exact").get<double>();
        s.chi_avg_lower = j.at("chi_avg_lower").get<double>();
        s.equipartition = j.at("equipartition").get<double>();
        s.fourth_moment = j.value("fourth_moment", 0.0);
        s.degenerate_clusters = j.value("degenerate_clusters", false);
        if (j.contains("pairwise_matrix")) s.pairwise_file = j.at("pairwise_matrix").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("LTA report: ") + e.what(), 0);
    }
    return s;
}

} // namespace ctqw::io
