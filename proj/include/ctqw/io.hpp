#ifndef CTQW_IO_HPP
#define CTQW_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "ctqw/spectrum.hpp"
#include "ctqw/time_series.hpp"
#include "ctqw/transport.hpp"

namespace ctqw::io {

/// 17 significant digits ("%.17g"); parses back to the same double.
std::string format_double(double x);

/// "index,energy" rows, 1-based, plus "node_1..node_N" eigenvector columns
/// when requested and available.
void write_spectrum_csv(std::ostream& out, const Spectrum<double>& s, bool with_eigenvectors = false);
Spectrum<double> read_spectrum_csv(std::istream& in);

/// "energy,degeneracy" rows.
void write_levels_csv(std::ostream& out, const DegeneracySpectrum<double>& ds);
DegeneracySpectrum<double> read_levels_csv(std::istream& in);

/// "t,value" rows. Probability observables are clipped to [0, 1] here and
/// only here.
void write_series_csv(std::ostream& out, const TimeSeries<double>& ts);

struct SeriesTable {
    VectorX<double> times;
    VectorX<double> values;
};
SeriesTable read_series_csv(std::istream& in);

/// Rows of the matrix, comma separated.
void write_matrix_csv(std::ostream& out, const MatrixX<double>& m);
MatrixX<double> read_matrix_csv(std::istream& in);

/// Flat JSON object with chi_avg_exact, chi_avg_lower, equipartition,
/// fourth_moment, degenerate_clusters and an optional pairwise_matrix path.
void write_lta_report(std::ostream& out, const LtaReport<double>& r,
                      const std::optional<std::string>& pairwise_file = std::nullopt);

struct LtaSummary {
    double chi_avg_exact = 0;
    double chi_avg_lower = 0;
    double equipartition = 0;
    double fourth_moment = 0;
    bool degenerate_clusters = false;
    std::optional<std::string> pairwise_file;
};
LtaSummary read_lta_report(std::istream& in);

} // namespace ctqw::io

#endif // CTQW_IO_HPP
