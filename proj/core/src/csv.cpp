#include "modalid/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "modalid/errors.hpp"

namespace modalid {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open " + path + " for writing");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open " + path + " for reading");
    return in;
}

// Splits one CSV line; throws when the column count is wrong.
std::vector<double> parse_row(const std::string& line, std::size_t ncols,
                              const std::string& path, std::size_t lineno) {
    std::vector<double> vals;
    vals.reserve(ncols);
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const std::size_t comma = line.find(',', pos);
        const std::string cell =
            line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(cell, &used);
        } catch (const std::exception&) {
            throw data_error(path + ":" + std::to_string(lineno) +
                             ": cannot parse value '" + cell + "'");
        }
        vals.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (vals.size() != ncols)
        throw data_error(path + ":" + std::to_string(lineno) + ": expected " +
                         std::to_string(ncols) + " columns, got " +
                         std::to_string(vals.size()));
    return vals;
}

void expect_header(std::ifstream& in, const std::string& expected,
                   const std::string& path) {
    std::string header;
    if (!std::getline(in, header))
        throw data_error(path + ": empty file");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header != expected)
        throw data_error(path + ": expected header '" + expected + "', got '" +
                         header + "'");
}

}  // namespace

TimeSeries read_time_series_csv(const std::string& path) {
    auto in = open_in(path);
    expect_header(in, "t,value", path);

    std::vector<double> t, v;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto row = parse_row(line, 2, path, lineno);
        t.push_back(row[0]);
        v.push_back(row[1]);
    }
    if (t.size() < 2) throw data_error(path + ": need at least 2 samples");

    TimeSeries ts;
    ts.t0 = t.front();
    ts.dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    if (!(ts.dt > 0.0)) throw data_error(path + ": time column is not increasing");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (std::abs(t[i] - ts.time_at(i)) > 1e-6 * ts.dt)
            throw data_error(path + ": non-uniform sampling near row " +
                             std::to_string(i + 2));
    }
    ts.samples = std::move(v);
    return ts;
}

void write_time_series_csv(const std::string& path, const TimeSeries& ts) {
    auto out = open_out(path);
    out << "t,value\n";
    for (std::size_t i = 0; i < ts.size(); ++i)
        out << fmt(ts.time_at(i)) << ',' << fmt(ts.samples[i]) << '\n';
}

ModalTrajectory read_modal_csv(const std::string& path) {
    auto in = open_in(path);
    expect_header(in, "t,amplitude,T2,chi,omega_n,h,valid", path);

    ModalTrajectory traj;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto row = parse_row(line, 7, path, lineno);
        traj.t.push_back(row[0]);
        traj.amplitude.push_back(row[1]);
        traj.T2.push_back(row[2]);
        traj.chi.push_back(row[3]);
        traj.omega_n.push_back(row[4]);
        traj.h.push_back(row[5]);
        traj.valid.push_back(row[6] != 0.0 ? 1 : 0);
    }
    return traj;
}

void write_modal_csv(const std::string& path, const ModalTrajectory& traj) {
    auto out = open_out(path);
    out << "t,amplitude,T2,chi,omega_n,h,valid\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out << fmt(traj.t[i]) << ',' << fmt(traj.amplitude[i]) << ',' << fmt(traj.T2[i])
            << ',' << fmt(traj.chi[i]) << ',' << fmt(traj.omega_n[i]) << ','
            << fmt(traj.h[i]) << ',' << (traj.valid[i] ? 1 : 0) << '\n';
    }
}

BackboneCurve read_backbone_csv(const std::string& path) {
    auto in = open_in(path);
    expect_header(in, "amplitude,omega_n,h,n_samples", path);

    BackboneCurve curve;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto row = parse_row(line, 4, path, lineno);
        curve.amplitude.push_back(row[0]);
        curve.omega_n.push_back(row[1]);
        curve.h.push_back(row[2]);
        curve.n_samples.push_back(static_cast<int>(row[3]));
        curve.source_run_ids.emplace_back();
    }
    return curve;
}

void write_backbone_csv(const std::string& path, const BackboneCurve& curve) {
    auto out = open_out(path);
    out << "amplitude,omega_n,h,n_samples\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        out << fmt(curve.amplitude[i]) << ',' << fmt(curve.omega_n[i]) << ','
            << fmt(curve.h[i]) << ',' << curve.n_samples[i] << '\n';
    }
}

std::vector<BackboneSample> read_backbone_samples_csv(const std::string& path) {
    auto in = open_in(path);
    expect_header(in, "amplitude,omega_n", path);

    std::vector<BackboneSample> samples;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto row = parse_row(line, 2, path, lineno);
        samples.push_back({row[0], row[1]});
    }
    return samples;
}

void write_backbone_samples_csv(const std::string& path,
                                const std::vector<BackboneSample>& samples) {
    auto out = open_out(path);
    out << "amplitude,omega_n\n";
    for (const auto& s : samples)
        out << fmt(s.amplitude) << ',' << fmt(s.omega_n) << '\n';
}

}  // namespace modalid
