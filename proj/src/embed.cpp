#include "gcdmd/embed.hpp"

#include "gcdmd/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace gcdmd {

TimeSeries::TimeSeries(Matrix d, double step, std::vector<std::string> names)
    : data(std::move(d)), dt(step), labels(std::move(names)) {
  if (data.cols() < 2) throw Error("time series needs at least 2 samples");
  if (!(dt > 0.0)) throw Error("time series dt must be positive");
  require_finite(data, "time series");
  if (labels.empty())
    for (int i = 0; i < data.rows(); ++i) labels.push_back("ch" + std::to_string(i));
  if (static_cast<Eigen::Index>(labels.size()) != data.rows()) throw Error("label count does not match channels");
  if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size())
    throw Error("channel labels must be unique");
}

TimeSeries TimeSeries::slice(int begin, int count) const {
  if (begin < 0 || count < 2 || begin + count > samples()) throw Error("slice out of range");
  return TimeSeries(data.middleCols(begin, count), dt, labels);
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && errno != ERANGE;
}

}

TimeSeries load_csv(const std::string& path, double dt) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_row(line);
    if (width == 0) width = cells.size();
    if (cells.size() != width)
      throw Error(path + ": ragged row " + std::to_string(lineno) + " (" + std::to_string(cells.size()) +
                  " cells, expected " + std::to_string(width) + ")");
    std::vector<double> vals(cells.size());
    bool numeric = true;
    for (std::size_t c = 0; c < cells.size() && numeric; ++c) numeric = parse_double(cells[c], vals[c]);
    if (!numeric && rows.empty() && labels.empty()) {
      labels = cells;
      continue;
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v = 0.0;
      if (!parse_double(cells[c], v))
        throw Error(path + ": non-numeric cell at row " + std::to_string(lineno) + ", column " + std::to_string(c + 1));
      if (!std::isfinite(v))
        throw Error(path + ": non-finite value at row " + std::to_string(lineno) + ", column " + std::to_string(c + 1));
      vals[c] = v;
    }
    rows.push_back(std::move(vals));
  }
  if (rows.size() < 2) throw Error(path + ": fewer than 2 samples");
  Matrix data(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t t = 0; t < rows.size(); ++t)
    for (std::size_t c = 0; c < width; ++c) data(c, t) = rows[t][c];
  return TimeSeries(std::move(data), dt, labels);
}

std::string to_csv(const TimeSeries& ts) {
  std::string out;
  for (int c = 0; c < ts.channels(); ++c) {
    if (c) out += ',';
    out += ts.labels[c];
  }
  out += '\n';
  for (int t = 0; t < ts.samples(); ++t) {
    for (int c = 0; c < ts.channels(); ++c) {
      if (c) out += ',';
      out += format_double(ts.data(c, t));
    }
    out += '\n';
  }
  return out;
}

void write_csv(const TimeSeries& ts, const std::string& path) {
  write_file_atomic(path, to_csv(ts));
}

HankelPair build_hankel(const Matrix& data, int lag) {
  const int n = static_cast<int>(data.rows());
  const int m = static_cast<int>(data.cols());
  if (lag < 1 || lag > m - 1) throw Error("build_hankel: lag " + std::to_string(lag) + " outside [1, m-1]");
  const int cols = m - lag + 1;
  HankelPair hp;
  hp.lag = lag;
  hp.xh.resize(n * lag, cols);
  for (int i = 0; i < lag; ++i) hp.xh.middleRows(i * n, n) = data.middleCols(i, cols);
  hp.x1 = hp.xh.leftCols(cols - 1);
  hp.x2 = hp.xh.rightCols(cols - 1);
  return hp;
}

HankelPair build_hankel(const TimeSeries& ts, int lag) { return build_hankel(ts.data, lag); }

PeVerdict check_pe(const Matrix& data, int lag) {
  HankelPair hp = build_hankel(data, lag);
  const int n = static_cast<int>(data.rows());
  const int m = static_cast<int>(data.cols());
  PeVerdict v;
  v.lag = lag;
  v.achieved_rank = numeric_rank(hp.xh);
  v.required_rank = n * lag;
  v.length_bound_ok = m >= (n + 1) * lag - 1;
  v.satisfied = v.achieved_rank == v.required_rank && v.length_bound_ok;
  return v;
}

PeVerdict check_pe(const TimeSeries& ts, int lag) { return check_pe(ts.data, lag); }

}
