#pragma once

#include <string>
#include <vector>

#include "frap/model.hpp"

namespace frap {

// Panel CSV: header "t_1,...,t_n", then one 0/1 row per replicate.  The grid
// is not stored in the file; t0/delta come from the caller (the command line
// records them in the run manifest).  Parse errors cite 1-based data row and
// column.
BinaryPanel load_panel(const std::string& path, double t0 = 0.0,
                       double delta = 1.0);
void save_panel(const BinaryPanel& panel, const std::string& path);

// Free-form numeric CSV, one series per row; '#' lines and a non-numeric
// header line are skipped.  Rows may differ in length.
std::vector<Eigen::VectorXd> load_series_csv(const std::string& path);

// Retained-draw table: "# frap-samples v1" marker line, then a header
// H,tau,sigma,phi,g_1,...,g_n and one row per retained draw.  Identical runs
// produce byte-identical files.
void save_samples(const PosteriorSamples& samples, const std::string& path);

// Reads a samples file back; grid, seed and acceptance metadata are restored
// from "<path>.manifest.json" when that file exists.
PosteriorSamples load_samples(const std::string& path);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

// Shortest deterministic decimal form that round-trips a double.
std::string format_double(double x);

}  // namespace frap
