#include "halfline/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "halfline/errors.hpp"

namespace halfline::io {

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_double(row[i]);
        out << "\n";
    }
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path);
    CsvTable t;
    std::string line;
    bool headerSeen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.comments.push_back(line.substr(1));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!headerSeen) {
            t.columns = cells;
            headerSeen = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            double v = 0.0;
            auto res = std::from_chars(c.data(), c.data() + c.size(), v);
            if (res.ec != std::errc())
                throw std::runtime_error("read_csv: bad numeric cell '" + c + "' in " + path);
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    if (!headerSeen) throw std::runtime_error("read_csv: empty file " + path);
    return t;
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_response(const std::string& path, const ResponseFunction& r) {
    std::vector<std::vector<double>> rows;
    rows.reserve(r.samples.size());
    for (std::size_t i = 0; i < r.samples.size(); ++i)
        rows.push_back({r.samples.grid.node(i), r.samples[i]});
    write_csv(path, {"t", "r"}, rows);
}

ResponseFunction read_response(const std::string& path) {
    CsvTable t = read_csv(path);
    if (t.columns.size() < 2 || t.columns[0] != "t" || t.columns[1] != "r")
        throw std::runtime_error("read_response: expected columns t,r in " + path);
    if (t.rows.size() < 2) throw std::runtime_error("read_response: too few rows");
    double t0 = t.rows.front()[0], t1 = t.rows.back()[0];
    std::vector<double> v;
    v.reserve(t.rows.size());
    for (const auto& row : t.rows) v.push_back(row[1]);
    Grid1D g(t0, t1, v.size());
    // verify uniform sampling
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (std::abs(t.rows[i][0] - g.node(i)) > 1e-9 * std::max(1.0, std::abs(t1)))
            throw std::runtime_error("read_response: t column must be uniform");
    return ResponseFunction(t1, SampledFunction(g, std::move(v)));
}

void write_sigma(const std::string& path, const RegularizedSpectralMeasure& sigma) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_sigma: cannot open " + path);
    out << "# T=" << format_double(sigma.truncationT) << " tag=" << sigma.tag << "\n";
    out << "lambda,weight,sign\n";
    for (const auto& a : sigma.atoms)
        out << format_double(a.lambda) << "," << format_double(a.weight) << "," << a.sign
            << "\n";
}

RegularizedSpectralMeasure read_sigma(const std::string& path) {
    CsvTable t = read_csv(path);
    RegularizedSpectralMeasure sigma;
    sigma.tag = "sigma_custom";
    sigma.truncationT = 0.0;
    for (const auto& c : t.comments) {
        std::size_t pos = c.find("T=");
        if (pos != std::string::npos) {
            sigma.truncationT = std::stod(c.substr(pos + 2));
            std::size_t tagPos = c.find("tag=");
            if (tagPos != std::string::npos) sigma.tag = c.substr(tagPos + 4);
        }
    }
    if (sigma.truncationT <= 0.0)
        throw std::runtime_error("read_sigma: missing '# T=' metadata in " + path);
    for (const auto& row : t.rows) {
        if (row.size() < 3) throw std::runtime_error("read_sigma: short row");
        sigma.atoms.push_back({row[0], row[1], row[2] >= 0 ? +1 : -1});
    }
    return sigma;
}

void write_scattering(const std::string& csvPath, const std::string& jsonPath,
                      const ScatteringData& data) {
    std::vector<std::vector<double>> rows;
    rows.reserve(data.kGrid.count());
    for (std::size_t i = 0; i < data.kGrid.count(); ++i)
        rows.push_back({data.kGrid.node(i), data.S[i].real(), data.S[i].imag(), data.eta[i],
                        data.A[i], data.U[i]});
    write_csv(csvPath, {"k", "re_s", "im_s", "eta", "a", "u"}, rows);

    nlohmann::json j;
    j["bound_states"] = nlohmann::json::array();
    for (const auto& b : data.boundStates)
        j["bound_states"].push_back({{"kappa", b.kappa}, {"C", b.C}, {"beta", b.beta}});
    std::ofstream out(jsonPath, std::ios::binary);
    if (!out) throw std::runtime_error("write_scattering: cannot open " + jsonPath);
    out << j.dump(2) << "\n";
}

ScatteringData read_scattering(const std::string& csvPath, const std::string& jsonPath) {
    CsvTable t = read_csv(csvPath);
    if (t.rows.size() < 2) throw std::runtime_error("read_scattering: too few rows");
    Grid1D kGrid(t.rows.front()[0], t.rows.back()[0], t.rows.size());
    ScatteringData data{{}, kGrid, {}, {}, {}, {}};
    for (const auto& row : t.rows) {
        if (row.size() < 6) throw std::runtime_error("read_scattering: short row");
        data.S.emplace_back(row[1], row[2]);
        data.eta.push_back(row[3]);
        data.A.push_back(row[4]);
        data.U.push_back(row[5]);
    }
    std::ifstream in(jsonPath);
    if (in) {
        nlohmann::json j;
        in >> j;
        for (const auto& b : j.value("bound_states", nlohmann::json::array()))
            data.boundStates.push_back({b.at("kappa").get<double>(), b.at("C").get<double>(),
                                        b.value("beta", 1.0)});
    }
    return data;
}

void write_weyl(const std::string& path, const WeylSamples& w) {
    std::vector<std::vector<double>> rows;
    rows.reserve(w.kGrid.count());
    for (std::size_t i = 0; i < w.kGrid.count(); ++i)
        rows.push_back({w.kGrid.node(i), w.m[i]});
    write_csv(path, {"k", "m"}, rows);
}

void write_acoustic(const std::string& csvPath, const std::string& jsonPath,
                    const AcousticResponse& p) {
    std::vector<std::vector<double>> rows;
    rows.reserve(p.p.size());
    for (std::size_t i = 0; i < p.p.size(); ++i) rows.push_back({p.tGrid.node(i), p.p[i]});
    write_csv(csvPath, {"t", "p_reg"}, rows);

    nlohmann::json j;
    j["deltaCoefficient"] = p.deltaCoefficient;
    j["a"] = p.supportBound;
    j["t_max"] = p.t_max();
    j["mollifier_width"] = p.mollifierWidth;
    j["neg_tail_count"] = p.negTail.size();
    std::ofstream out(jsonPath, std::ios::binary);
    if (!out) throw std::runtime_error("write_acoustic: cannot open " + jsonPath);
    out << j.dump(2) << "\n";

    if (!p.negTail.empty()) {
        std::string tailPath = csvPath;
        std::size_t dot = tailPath.rfind(".csv");
        tailPath = (dot == std::string::npos ? tailPath : tailPath.substr(0, dot)) + "_tail.csv";
        std::vector<std::vector<double>> trows;
        for (std::size_t i = 0; i < p.negTail.size(); ++i)
            trows.push_back({-static_cast<double>(i + 1) * p.h(), p.negTail[i]});
        write_csv(tailPath, {"t", "p_reg"}, trows);
    }
}

AcousticResponse read_acoustic(const std::string& csvPath, const std::string& jsonPath) {
    CsvTable t = read_csv(csvPath);
    if (t.rows.size() < 2) throw std::runtime_error("read_acoustic: too few rows");
    std::vector<double> p;
    p.reserve(t.rows.size());
    for (const auto& row : t.rows) p.push_back(row[1]);
    Grid1D g(t.rows.front()[0], t.rows.back()[0], p.size());
    double deltaC = -1.0, a = 0.0;
    std::ifstream in(jsonPath);
    if (in) {
        nlohmann::json j;
        in >> j;
        deltaC = j.value("deltaCoefficient", -1.0);
        a = j.value("a", 0.0);
    }
    AcousticResponse out{g, std::move(p), deltaC, a, 0.0, {}, {}};
    std::string tailPath = csvPath;
    std::size_t dot = tailPath.rfind(".csv");
    tailPath = (dot == std::string::npos ? tailPath : tailPath.substr(0, dot)) + "_tail.csv";
    std::ifstream tail(tailPath);
    if (tail) {
        CsvTable tt = read_csv(tailPath);
        for (const auto& row : tt.rows) out.negTail.push_back(row[1]);
    }
    return out;
}

void write_reconstruction(const std::string& path, const ReconstructionResult& rec) {
    std::vector<std::vector<double>> rows;
    rows.reserve(rec.x.size());
    for (std::size_t i = 0; i < rec.x.size(); ++i)
        rows.push_back({rec.x[i], rec.q[i], rec.lambdaUsed[i], rec.conditioning[i]});
    write_csv(path, {"x", "q", "lambda_used", "conditioning"}, rows);
}

}  // namespace halfline::io
