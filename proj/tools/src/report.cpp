#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "manifoldwalk/errors.hpp"

namespace mwcli {
namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw mw::IoError("cannot open " + path + " for writing");
    return out;
}

std::string fmt(const char* spec, double v) {
    // tiny negatives from float cancellation would print as "-0.000000"
    if (std::abs(v) < 1e-12) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

}  // namespace

std::string format_accuracy(double v) { return fmt("%.4f", v); }
std::string format_distance(double v) { return fmt("%.6f", v); }
std::string format_sigma(double v) { return fmt("%.3f", v); }

void write_tables_csv(const std::vector<TableRow>& rows, const std::string& path) {
    auto out = open_out(path);
    out << "dataset,per_class,noise_level,sigma,mean_acc_no_tl,mean_acc_tl,"
           "measured_distance,gated_fraction,iterations,seed\n";
    for (const auto& r : rows) {
        out << r.dataset << ',' << r.per_class << ',' << r.noise_level << ','
            << format_sigma(r.sigma) << ',' << format_accuracy(r.mean_acc_no_tl) << ','
            << format_accuracy(r.mean_acc_tl) << ',' << format_distance(r.measured_distance)
            << ',' << format_accuracy(r.gated_fraction) << ',' << r.iterations << ',' << r.seed
            << '\n';
    }
    if (!out) throw mw::IoError("write failed for " + path);
}

void write_tables_markdown(const std::vector<TableRow>& rows, const std::string& path) {
    auto out = open_out(path);
    out << "| dataset | labels/class | noise | sigma | accuracy (no TL) | accuracy (TL) | "
           "distance | gated |\n";
    out << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
        out << "| " << r.dataset << " | " << r.per_class << " | " << r.noise_level << " | "
            << format_sigma(r.sigma) << " | " << format_accuracy(r.mean_acc_no_tl) << " | "
            << format_accuracy(r.mean_acc_tl) << " | " << format_distance(r.measured_distance)
            << " | " << format_accuracy(r.gated_fraction) << " |\n";
    }
    if (!out) throw mw::IoError("write failed for " + path);
}

void write_figure1_csv(const std::vector<Figure1Row>& rows, const std::string& path) {
    auto out = open_out(path);
    out << "noise_level,sigma,measure,mean_distance,std_distance\n";
    for (const auto& r : rows) {
        out << r.noise_level << ',' << format_sigma(r.sigma) << ',' << r.measure << ','
            << format_distance(r.mean_distance) << ',' << format_distance(r.std_distance)
            << '\n';
    }
    if (!out) throw mw::IoError("write failed for " + path);
}

void write_study_csv(const std::vector<StudyRow>& rows, const std::string& path) {
    auto out = open_out(path);
    out << "grid_size,n_superpixels,distance\n";
    for (const auto& r : rows)
        out << r.grid_size << ',' << r.n_superpixels << ',' << format_distance(r.distance)
            << '\n';
    if (!out) throw mw::IoError("write failed for " + path);
}

void write_rank_rows(const std::vector<RankRow>& rows, std::ostream& out) {
    out << "path,distance\n";
    for (const auto& r : rows) out << r.path << ',' << format_distance(r.distance) << '\n';
}

void write_rank_csv(const std::vector<RankRow>& rows, const std::string& path) {
    auto out = open_out(path);
    write_rank_rows(rows, out);
    if (!out) throw mw::IoError("write failed for " + path);
}

}  // namespace mwcli
