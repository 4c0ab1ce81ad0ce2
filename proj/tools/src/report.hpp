#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace mwcli {

// One (dataset, per_class, noise) cell of an experiment run.
struct TableRow {
    std::string dataset;
    int per_class = 0;
    int noise_level = 0;
    double sigma = 0.0;
    double mean_acc_no_tl = 0.0;
    double mean_acc_tl = 0.0;
    double measured_distance = 0.0;
    double gated_fraction = 0.0;
    int iterations = 0;
    std::uint64_t seed = 0;
};

struct Figure1Row {
    int noise_level = 0;
    double sigma = 0.0;
    std::string measure;
    double mean_distance = 0.0;
    double std_distance = 0.0;
};

struct StudyRow {
    std::string grid_size;  // "original" or the grid side length
    int n_superpixels = 0;  // 0 for the original row
    double distance = 0.0;
};

struct RankRow {
    std::string path;
    double distance = 0.0;
};

// All writers emit UTF-8 with a header row and LF line endings.
void write_tables_csv(const std::vector<TableRow>& rows, const std::string& path);
void write_tables_markdown(const std::vector<TableRow>& rows, const std::string& path);
void write_figure1_csv(const std::vector<Figure1Row>& rows, const std::string& path);
void write_study_csv(const std::vector<StudyRow>& rows, const std::string& path);
void write_rank_rows(const std::vector<RankRow>& rows, std::ostream& out);
void write_rank_csv(const std::vector<RankRow>& rows, const std::string& path);

std::string format_accuracy(double v);
std::string format_distance(double v);
std::string format_sigma(double v);

}  // namespace mwcli
