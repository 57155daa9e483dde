#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "tribell/optimize.hpp"

namespace tribell {

inline constexpr const char* kToolVersion = "0.1.0";

/// Locale-independent decimal formatting, 12 significant digits.
inline std::string format_sig(double v, int digits = 12) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

// ---------------------------------------------------------------------------
// CSV emission.

inline std::string table_csv(const ModularProbabilityTable& t) {
    std::string out = "i,j,k,r,p\n";
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k)
                for (int r = 0; r < t.d; ++r)
                    out += std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                           "," + std::to_string(r) + "," + format_sig(t.at(i, j, k, r)) + "\n";
    return out;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "xi,beta,value,bound,ratio,converged\n";
    for (const auto& r : rows) {
        out += format_sig(r.xi) + ",";
        out += std::isnan(r.beta) ? "" : format_sig(r.beta);
        out += "," + format_sig(r.value) + "," + format_sig(r.bound) + "," + format_sig(r.ratio) +
               "," + (r.converged ? "1" : "0") + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Self-contained SVG polyline plots.

struct PlotSeries {
    std::string label;
    std::vector<double> x, y;
};

inline std::string polyline_svg(const std::string& title, const std::string& xlabel,
                                const std::string& ylabel, const std::vector<PlotSeries>& series) {
    const int W = 640, H = 440, ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (size_t n = 0; n < s.x.size(); ++n) {
            xmin = std::min(xmin, s.x[n]);
            xmax = std::max(xmax, s.x[n]);
            ymin = std::min(ymin, s.y[n]);
            ymax = std::max(ymax, s.y[n]);
        }
    if (xmin > xmax) {
        xmin = 0;
        xmax = 1;
        ymin = 0;
        ymax = 1;
    }
    if (xmax - xmin < 1e-12) xmax = xmin + 1;
    if (ymax - ymin < 1e-12) ymax = ymin + 1;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) +
           "\" height=\"" + std::to_string(H) + "\" viewBox=\"0 0 " + std::to_string(W) + " " +
           std::to_string(H) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + std::to_string(W / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
           title + "</text>\n";
    // axes
    svg += "<line x1=\"" + std::to_string(ml) + "\" y1=\"" + std::to_string(H - mb) + "\" x2=\"" +
           std::to_string(W - mr) + "\" y2=\"" + std::to_string(H - mb) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + std::to_string(ml) + "\" y1=\"" + std::to_string(mt) + "\" x2=\"" +
           std::to_string(ml) + "\" y2=\"" + std::to_string(H - mb) + "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 5; ++tick) {
        double xv = xmin + (xmax - xmin) * tick / 5.0;
        double yv = ymin + (ymax - ymin) * tick / 5.0;
        svg += "<line x1=\"" + format_sig(px(xv), 6) + "\" y1=\"" + std::to_string(H - mb) +
               "\" x2=\"" + format_sig(px(xv), 6) + "\" y2=\"" + std::to_string(H - mb + 5) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + format_sig(px(xv), 6) + "\" y=\"" + std::to_string(H - mb + 18) +
               "\" text-anchor=\"middle\" font-size=\"11\">" + format_sig(xv, 4) + "</text>\n";
        svg += "<line x1=\"" + std::to_string(ml - 5) + "\" y1=\"" + format_sig(py(yv), 6) +
               "\" x2=\"" + std::to_string(ml) + "\" y2=\"" + format_sig(py(yv), 6) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + std::to_string(ml - 8) + "\" y=\"" + format_sig(py(yv) + 4, 6) +
               "\" text-anchor=\"end\" font-size=\"11\">" + format_sig(yv, 4) + "</text>\n";
    }
    svg += "<text x=\"" + std::to_string((W + ml - mr) / 2) + "\" y=\"" + std::to_string(H - 12) +
           "\" text-anchor=\"middle\" font-size=\"13\">" + xlabel + "</text>\n";
    svg += "<text x=\"18\" y=\"" + std::to_string((H + mt - mb) / 2) +
           "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " +
           std::to_string((H + mt - mb) / 2) + ")\">" + ylabel + "</text>\n";
    for (size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        std::string pts;
        for (size_t n = 0; n < s.x.size(); ++n)
            pts += format_sig(px(s.x[n]), 8) + "," + format_sig(py(s.y[n]), 8) + " ";
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(colors[si % 4]) +
               "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        svg += "<text x=\"" + std::to_string(W - mr - 8) + "\" y=\"" +
               std::to_string(mt + 16 + 16 * static_cast<int>(si)) +
               "\" text-anchor=\"end\" font-size=\"12\" fill=\"" + colors[si % 4] + "\">" + s.label +
               "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

// ---------------------------------------------------------------------------
// Run manifests: every file artifact gets a sidecar describing the run, so the
// artifact itself stays byte-identical across reruns.

struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    std::uint64_t seed = 0;
    long long duration_ms = 0;

    std::string text() const {
        std::string out;
        out += "command=" + command + "\n";
        out += "argv=";
        for (size_t i = 0; i < argv.size(); ++i) out += (i ? " " : "") + argv[i];
        out += "\n";
        out += "seed=" + std::to_string(seed) + "\n";
        out += std::string("version=") + kToolVersion + "\n";
        out += "duration_ms=" + std::to_string(duration_ms) + "\n";
        return out;
    }
};

inline void write_with_manifest(const std::string& path, const std::string& content,
                                const RunManifest& manifest) {
    write_file(path, content);
    write_file(path + ".manifest", manifest.text());
}

// ---------------------------------------------------------------------------
// Optimizer config files: `key = value` lines, '#' comments.

inline OptimizationConfig parse_config_text(const std::string& text) {
    OptimizationConfig c;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            size_t b = s.find_first_not_of(" \t\r");
            size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        if (key == "restarts")
            c.restarts = std::stoi(val);
        else if (key == "max_iterations")
            c.max_iterations = std::stoi(val);
        else if (key == "tolerance")
            c.tolerance = std::stod(val);
        else if (key == "symmetric_parties")
            c.symmetric_parties = val == "true" || val == "1";
        else if (key == "seed")
            c.seed = std::stoull(val);
        else if (key == "threads")
            c.threads = std::stoi(val);
        else
            throw std::invalid_argument("unknown config key: " + key);
    }
    if (c.restarts < 1 || c.tolerance <= 0)
        throw std::invalid_argument("config requires restarts >= 1 and tolerance > 0");
    return c;
}

inline OptimizationConfig parse_config_file(const std::string& path) {
    return parse_config_text(read_file(path));
}

}  // namespace tribell
