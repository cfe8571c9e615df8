#include "frap/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace frap {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim surrounding blanks
    size_t a = field.find_first_not_of(" \t\r");
    size_t b = field.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? "" : field.substr(a, b - a + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

bool parse_double(const std::string& s, double& out) {
  try {
    size_t used = 0;
    out = std::stod(s, &used);
    return used == s.size();
  } catch (...) {
    return false;
  }
}

}  // namespace

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

BinaryPanel load_panel(const std::string& path, double t0, double delta) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open panel file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("panel file is empty: " + path);
  const auto header = split_csv(line);
  const int n = static_cast<int>(header.size());
  if (n < 2)
    throw std::runtime_error("panel header needs at least two columns: " +
                             path);

  std::vector<std::vector<int>> rows;
  int rownum = 0;
  while (std::getline(in, line)) {
    ++rownum;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_csv(line);
    if (static_cast<int>(fields.size()) != n) {
      std::ostringstream msg;
      msg << path << ": row " << rownum << " has " << fields.size()
          << " fields, expected " << n;
      throw std::runtime_error(msg.str());
    }
    std::vector<int> row(n);
    for (int c = 0; c < n; ++c) {
      if (fields[c] == "0")
        row[c] = 0;
      else if (fields[c] == "1")
        row[c] = 1;
      else {
        std::ostringstream msg;
        msg << path << ": row " << rownum << ", column " << c + 1
            << ": entry '" << fields[c] << "' is not 0/1";
        throw std::runtime_error(msg.str());
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty())
    throw std::runtime_error("panel file has no data rows: " + path);

  Eigen::MatrixXi data(rows.size(), n);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < n; ++c) data(static_cast<int>(r), c) = rows[r][c];
  return BinaryPanel(std::move(data), TimeGrid(t0, delta, n));
}

void save_panel(const BinaryPanel& panel, const std::string& path) {
  std::ostringstream out;
  for (int i = 1; i <= panel.length(); ++i)
    out << (i > 1 ? "," : "") << "t_" << i;
  out << "\n";
  for (int r = 0; r < panel.replicates(); ++r) {
    for (int i = 0; i < panel.length(); ++i)
      out << (i > 0 ? "," : "") << panel.data(r, i);
    out << "\n";
  }
  write_text(path, out.str());
}

std::vector<Eigen::VectorXd> load_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open series file: " + path);
  std::vector<Eigen::VectorXd> out;
  std::string line;
  bool first_content = true;
  int rownum = 0;
  while (std::getline(in, line)) {
    ++rownum;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_csv(line);
    std::vector<double> vals;
    vals.reserve(fields.size());
    bool ok = true;
    for (const auto& f : fields) {
      double v;
      if (!parse_double(f, v)) {
        ok = false;
        break;
      }
      vals.push_back(v);
    }
    if (!ok) {
      if (first_content) {  // tolerate one leading header line
        first_content = false;
        continue;
      }
      std::ostringstream msg;
      msg << path << ": row " << rownum << " is not numeric";
      throw std::runtime_error(msg.str());
    }
    first_content = false;
    Eigen::VectorXd v(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) v[static_cast<int>(i)] = vals[i];
    out.push_back(std::move(v));
  }
  if (out.empty())
    throw std::runtime_error("series file has no numeric rows: " + path);
  return out;
}

void save_samples(const PosteriorSamples& samples, const std::string& path) {
  std::ostringstream out;
  out << "# frap-samples v1\n";
  out << "H,tau,sigma,phi";
  for (int i = 1; i <= samples.n(); ++i) out << ",g_" << i;
  out << "\n";
  for (int l = 0; l < samples.size(); ++l) {
    out << format_double(samples.hurst[l]) << ','
        << format_double(samples.tau[l]) << ','
        << format_double(samples.sigma[l]) << ','
        << format_double(samples.phi[l]);
    for (int i = 0; i < samples.n(); ++i)
      out << ',' << format_double(samples.g(i, l));
    out << "\n";
  }
  write_text(path, out.str());
}

PosteriorSamples load_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open samples file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "# frap-samples v1")
    throw std::runtime_error(path + ": not a frap-samples v1 file");
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": missing header row");
  const auto header = split_csv(line);
  if (header.size() < 5 || header[0] != "H" || header[1] != "tau" ||
      header[2] != "sigma" || header[3] != "phi")
    throw std::runtime_error(path + ": unexpected samples header");
  const int n = static_cast<int>(header.size()) - 4;

  std::vector<std::vector<double>> rows;
  int rownum = 2;
  while (std::getline(in, line)) {
    ++rownum;
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size()) {
      std::ostringstream msg;
      msg << path << ": row " << rownum << " has " << fields.size()
          << " fields, expected " << header.size();
      throw std::runtime_error(msg.str());
    }
    std::vector<double> vals(fields.size());
    for (size_t c = 0; c < fields.size(); ++c) {
      if (!parse_double(fields[c], vals[c])) {
        std::ostringstream msg;
        msg << path << ": row " << rownum << ", column " << c + 1
            << ": not a number";
        throw std::runtime_error(msg.str());
      }
    }
    rows.push_back(std::move(vals));
  }
  if (rows.empty()) throw std::runtime_error(path + ": no sample rows");

  PosteriorSamples s;
  s.g.resize(n, rows.size());
  for (size_t l = 0; l < rows.size(); ++l) {
    s.hurst.push_back(rows[l][0]);
    s.tau.push_back(rows[l][1]);
    s.sigma.push_back(rows[l][2]);
    s.phi.push_back(rows[l][3]);
    for (int i = 0; i < n; ++i) s.g(i, static_cast<int>(l)) = rows[l][4 + i];
  }

  double t0 = 0.0, delta = 1.0;
  const std::string mpath = path + ".manifest.json";
  if (std::filesystem::exists(mpath)) {
    const auto j = nlohmann::json::parse(read_text(mpath));
    if (j.contains("grid")) {
      t0 = j["grid"].value("t0", 0.0);
      delta = j["grid"].value("delta", 1.0);
    }
    s.seed = j.value("seed", std::uint64_t{0});
    s.iterations = j.value("iterations", long{0});
    s.burn_in = j.value("burn_in", long{0});
    s.thin = j.value("thin", 1);
    s.nu = j.value("nu", 1e-3);
    if (j.contains("acceptance")) {
      s.accept_beta = j["acceptance"].value("beta", 0.0);
      s.accept_eta = j["acceptance"].value("eta", 0.0);
    }
  }
  s.grid = TimeGrid(t0, delta, n);
  return s;
}

}  // namespace frap
