#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "halfline/acoustic.hpp"
#include "halfline/grid.hpp"
#include "halfline/inversion.hpp"
#include "halfline/scattering.hpp"
#include "halfline/spectral.hpp"
#include "halfline/wave.hpp"
#include "halfline/weyl.hpp"

namespace halfline::io {

/// Locale-independent shortest-faithful formatting: 17 significant digits,
/// '.' decimal separator. Identical inputs give byte-identical text.
std::string format_double(double x);

/// One CSV table: header row of column names, then rows of format_double
/// cells, '\n' line endings.
void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> comments;  // leading '#' lines, without the '#'
};

CsvTable read_csv(const std::string& path);

/// FNV-1a hash of a byte string (config/provenance fingerprints).
std::uint64_t fnv1a(const std::string& bytes);

// Module schemas ------------------------------------------------------------

/// response.csv: columns t, r.
void write_response(const std::string& path, const ResponseFunction& r);
ResponseFunction read_response(const std::string& path);

/// sigma.csv: columns lambda, weight, sign, with '# T=...' metadata.
void write_sigma(const std::string& path, const RegularizedSpectralMeasure& sigma);
RegularizedSpectralMeasure read_sigma(const std::string& path);

/// scattering.csv: k, re_s, im_s, eta, a, u; bound states in a JSON sidecar.
void write_scattering(const std::string& csvPath, const std::string& jsonPath,
                      const ScatteringData& data);
ScatteringData read_scattering(const std::string& csvPath, const std::string& jsonPath);

/// weyl.csv: columns k, m.
void write_weyl(const std::string& path, const WeylSamples& w);

/// acoustic.csv: columns t, p_reg; JSON header {deltaCoefficient, a, t_max};
/// the post-flash tail goes to a companion *_tail.csv when present.
void write_acoustic(const std::string& csvPath, const std::string& jsonPath,
                    const AcousticResponse& p);
AcousticResponse read_acoustic(const std::string& csvPath, const std::string& jsonPath);

/// q_recovered.csv: columns x, q, lambda_used, conditioning.
void write_reconstruction(const std::string& path, const ReconstructionResult& rec);

}  // namespace halfline::io
