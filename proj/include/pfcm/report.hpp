#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "pfcm/csv.hpp"
#include "pfcm/errors.hpp"
#include "pfcm/experiment.hpp"

namespace pfcm {

namespace detail {

// Minimal SVG line chart: one polyline per series, labelled axes, legend.
inline void write_line_chart(const std::string& path, const std::string& title,
                             const std::string& y_label, const std::vector<double>& xs,
                             const std::vector<std::pair<std::string, std::vector<double>>>& series) {
    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    const double width = 640, height = 480;
    const double ml = 70, mr = 20, mt = 40, mb = 50;
    double ymin = 0.0, ymax = 1.0, xmin = 0.0, xmax = 1.0;
    bool first = true;
    for (const auto& [name, ys] : series)
        for (std::size_t i = 0; i < ys.size(); ++i) {
            if (first) {
                ymin = ymax = ys[i];
                xmin = xmax = xs[i];
                first = false;
            }
            ymin = std::min(ymin, ys[i]);
            ymax = std::max(ymax, ys[i]);
            xmin = std::min(xmin, xs[i]);
            xmax = std::max(xmax, xs[i]);
        }
    if (ymax - ymin < 1e-12) {
        ymax += 1.0;
        ymin -= 1.0;
    }
    if (xmax - xmin < 1e-12) xmax += 1.0;
    const auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    const auto sy = [&](double y) {
        return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
    };

    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "' viewBox='0 0 " << width << " " << height << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n"
        << "<text x='" << width / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
        << "</text>\n";
    // axes
    out << "<line x1='" << ml << "' y1='" << height - mb << "' x2='" << width - mr << "' y2='"
        << height - mb << "' stroke='black'/>\n"
        << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << height - mb
        << "' stroke='black'/>\n";
    for (int tick = 0; tick <= 5; ++tick) {
        const double fy = ymin + (ymax - ymin) * tick / 5.0;
        out << "<text x='" << ml - 8 << "' y='" << sy(fy) + 4
            << "' text-anchor='end' font-size='11'>" << format_double(std::round(fy * 100) / 100)
            << "</text>\n"
            << "<line x1='" << ml - 4 << "' y1='" << sy(fy) << "' x2='" << ml << "' y2='" << sy(fy)
            << "' stroke='black'/>\n";
    }
    for (const double x : xs)
        out << "<text x='" << sx(x) << "' y='" << height - mb + 18
            << "' text-anchor='middle' font-size='11'>" << format_double(x) << "</text>\n"
            << "<line x1='" << sx(x) << "' y1='" << height - mb << "' x2='" << sx(x) << "' y2='"
            << height - mb + 4 << "' stroke='black'/>\n";
    out << "<text x='" << width / 2 << "' y='" << height - 12
        << "' text-anchor='middle' font-size='13'>missing fraction</text>\n"
        << "<text x='18' y='" << height / 2 << "' text-anchor='middle' font-size='13' transform='rotate(-90 18 "
        << height / 2 << ")'>" << y_label << "</text>\n";
    std::size_t si = 0;
    for (const auto& [name, ys] : series) {
        const char* color = kColors[si % 4];
        out << "<polyline fill='none' stroke='" << color << "' stroke-width='2' points='";
        for (std::size_t i = 0; i < ys.size(); ++i) out << sx(xs[i]) << "," << sy(ys[i]) << " ";
        out << "'/>\n";
        for (std::size_t i = 0; i < ys.size(); ++i)
            out << "<circle cx='" << sx(xs[i]) << "' cy='" << sy(ys[i]) << "' r='3' fill='"
                << color << "'/>\n";
        out << "<rect x='" << width - mr - 130 << "' y='" << mt + 20.0 * si << "' width='12' height='12' fill='"
            << color << "'/>\n"
            << "<text x='" << width - mr - 112 << "' y='" << mt + 20.0 * si + 10
            << "' font-size='12'>" << name << "</text>\n";
        ++si;
    }
    out << "</svg>\n";
}

}  // namespace detail

// Reads a trials.csv previously written by emit_report, for re-aggregation.
inline std::vector<TrialRecord> load_trials(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) ||
        line != "strategy,fraction,trial,status,accuracy,iterations,centroid_error,converged")
        throw DataError("'" + path + "' is not a trials.csv file");
    std::vector<TrialRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        while (cells.size() < 8) cells.emplace_back();
        TrialRecord r;
        const auto bad = [&](const std::string& what) {
            return DataError("'" + path + "' line " + std::to_string(lineno) + ": " + what);
        };
        if (cells[0] == "ocs")
            r.strategy = Strategy::OCS;
        else if (cells[0] == "nps")
            r.strategy = Strategy::NPS;
        else
            throw bad("unknown strategy '" + cells[0] + "'");
        try {
            r.fraction = std::stod(cells[1]);
            r.trial = std::stoul(cells[2]);
            if (cells[3] == "ok") {
                r.accuracy = std::stod(cells[4]);
                r.iterations = std::stoul(cells[5]);
                r.centroid_error = std::stod(cells[6]);
                r.converged = cells[7] == "1";
            } else if (cells[3].rfind("error:", 0) == 0) {
                r.ok = false;
                r.error = cells[3].substr(6);
            } else {
                throw bad("unknown status '" + cells[3] + "'");
            }
        } catch (const std::invalid_argument&) {
            throw bad("malformed numeric field");
        }
        records.push_back(std::move(r));
    }
    if (records.empty()) throw DataError("'" + path + "' contains no records");
    return records;
}

// Writes trials.csv (canonical, byte-stable across reruns), timings.csv
// (wall-clock, informational), summary.csv, the three per-metric plot-data
// files and, when requested, SVG line charts.
inline void emit_report(const std::vector<AggregateRecord>& aggregates,
                        const std::vector<TrialRecord>& records, const std::string& out_dir,
                        bool plots = false) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw DataError("cannot create output directory '" + out_dir + "'");
    const auto file = [&](const std::string& name) { return (fs::path(out_dir) / name).string(); };

    {
        std::ofstream out(file("trials.csv"));
        if (!out) throw DataError("cannot write trials.csv");
        out << "strategy,fraction,trial,status,accuracy,iterations,centroid_error,converged\n";
        for (const auto& r : records) {
            out << strategy_name(r.strategy) << ',' << format_double(r.fraction) << ',' << r.trial
                << ',';
            if (r.ok)
                out << "ok," << format_double(r.accuracy) << ',' << r.iterations << ','
                    << format_double(r.centroid_error) << ',' << (r.converged ? 1 : 0);
            else
                out << "error:" << r.error << ",,,,";
            out << '\n';
        }
    }
    {
        std::ofstream out(file("timings.csv"));
        out << "strategy,fraction,trial,wall_ms\n";
        for (const auto& r : records)
            out << strategy_name(r.strategy) << ',' << format_double(r.fraction) << ',' << r.trial
                << ',' << format_double(r.wall_ms) << '\n';
    }
    {
        std::ofstream out(file("summary.csv"));
        out << "strategy,fraction,count";
        for (const char* metric : {"accuracy", "iterations", "centroid_error"})
            out << ',' << metric << "_mean," << metric << "_min," << metric << "_max," << metric
                << "_stddev";
        out << '\n';
        for (const auto& a : aggregates) {
            out << strategy_name(a.strategy) << ',' << format_double(a.fraction) << ',' << a.count;
            for (const MetricStats* st : {&a.accuracy, &a.iterations, &a.centroid_error})
                out << ',' << format_double(st->mean) << ',' << format_double(st->min) << ','
                    << format_double(st->max) << ',' << format_double(st->stddev);
            out << '\n';
        }
    }

    // Per-metric plot data: rows = fraction ascending, one column per strategy mean.
    std::vector<double> fractions;
    std::vector<Strategy> strategies;
    for (const auto& a : aggregates) {
        if (std::find(fractions.begin(), fractions.end(), a.fraction) == fractions.end())
            fractions.push_back(a.fraction);
        if (std::find(strategies.begin(), strategies.end(), a.strategy) == strategies.end())
            strategies.push_back(a.strategy);
    }
    std::sort(fractions.begin(), fractions.end());
    std::sort(strategies.begin(), strategies.end());
    const auto mean_of = [&](Strategy s, double f, auto metric) {
        for (const auto& a : aggregates)
            if (a.strategy == s && a.fraction == f) return metric(a).mean;
        return std::numeric_limits<double>::quiet_NaN();
    };
    struct MetricFile {
        const char* name;
        const char* label;
        MetricStats AggregateRecord::* member;
    };
    const MetricFile metric_files[] = {
        {"accuracy", "mean accuracy (%)", &AggregateRecord::accuracy},
        {"iterations", "mean iterations", &AggregateRecord::iterations},
        {"centroid_error", "mean centroid error", &AggregateRecord::centroid_error},
    };
    for (const auto& mf : metric_files) {
        std::ofstream out(file(std::string(mf.name) + ".csv"));
        out << "fraction";
        for (const Strategy s : strategies) out << ',' << strategy_name(s);
        out << '\n';
        for (const double f : fractions) {
            out << format_double(f);
            for (const Strategy s : strategies)
                out << ','
                    << format_double(mean_of(s, f, [&](const AggregateRecord& a) { return a.*(mf.member); }));
            out << '\n';
        }
        if (plots) {
            std::vector<std::pair<std::string, std::vector<double>>> series;
            for (const Strategy s : strategies) {
                std::vector<double> ys;
                for (const double f : fractions)
                    ys.push_back(mean_of(s, f, [&](const AggregateRecord& a) { return a.*(mf.member); }));
                series.emplace_back(strategy_name(s), std::move(ys));
            }
            detail::write_line_chart(file(std::string(mf.name) + ".svg"), mf.name, mf.label,
                                     fractions, series);
        }
    }
}

}  // namespace pfcm
