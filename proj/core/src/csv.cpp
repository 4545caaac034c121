#include "vgp/csv.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "vgp/errors.hpp"

namespace vgp {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

// strips a trailing carriage return so windows-style files parse too
bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

double parse_number(const std::string& field, const char* column, std::size_t row) {
  const std::string text = trim(field);
  if (text.empty())
    throw InputError("row " + std::to_string(row) + ": empty " + column + " field");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v))
    throw InputError("row " + std::to_string(row) + ": cannot parse " + column + " value '" +
                     text + "'");
  return v;
}

void check_header(const std::vector<std::string>& fields,
                  const std::vector<std::string>& expected, const std::string& path) {
  if (fields.size() != expected.size())
    throw InputError(path + ": expected header '" + [&] {
      std::string h;
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) h += ',';
        h += expected[i];
      }
      return h;
    }() + "'");
  for (std::size_t i = 0; i < expected.size(); ++i)
    if (fields[i] != expected[i])
      throw InputError(path + ": header column " + std::to_string(i + 1) + " is '" + fields[i] +
                       "', expected '" + expected[i] + "'");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  return out;
}

void print_number(std::ofstream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

Dataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");

  std::string line;
  if (!read_line(in, line)) throw InputError(path + ": empty file");
  check_header(split_fields(line), {"x", "y", "value"}, path);

  Dataset data;
  std::size_t row = 0;
  while (read_line(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    const std::vector<std::string> f = split_fields(line);
    if (f.size() != 3)
      throw InputError("row " + std::to_string(row) + ": expected 3 fields, got " +
                       std::to_string(f.size()));
    Point p;
    p.x = parse_number(f[0], "x", row);
    p.y = parse_number(f[1], "y", row);
    data.points.push_back(p);
    data.values.push_back(parse_number(f[2], "value", row));
  }
  if (data.size() == 0) throw InputError(path + ": no data rows");
  return data;
}

PointList read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");

  std::string line;
  if (!read_line(in, line)) throw InputError(path + ": empty file");
  check_header(split_fields(line), {"x", "y"}, path);

  PointList points;
  std::size_t row = 0;
  while (read_line(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    const std::vector<std::string> f = split_fields(line);
    if (f.size() != 2)
      throw InputError("row " + std::to_string(row) + ": expected 2 fields, got " +
                       std::to_string(f.size()));
    Point p;
    p.x = parse_number(f[0], "x", row);
    p.y = parse_number(f[1], "y", row);
    points.push_back(p);
  }
  return points;
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
  std::ofstream out = open_out(path);
  out << "x,y,value\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    print_number(out, data.points[i].x);
    out << ',';
    print_number(out, data.points[i].y);
    out << ',';
    print_number(out, data.values[i]);
    out << '\n';
  }
}

void write_points_csv(const std::string& path, const PointList& points) {
  std::ofstream out = open_out(path);
  out << "x,y\n";
  for (const Point& p : points) {
    print_number(out, p.x);
    out << ',';
    print_number(out, p.y);
    out << '\n';
  }
}

void write_predictions_csv(const std::string& path, const PredictionSet& pred) {
  std::ofstream out = open_out(path);
  out << "x,y,mean,sd,lower,upper,flag\n";
  for (std::size_t i = 0; i < pred.size(); ++i) {
    print_number(out, pred.locations[i].x);
    out << ',';
    print_number(out, pred.locations[i].y);
    out << ',';
    print_number(out, pred.mean[i]);
    out << ',';
    print_number(out, pred.sd[i]);
    out << ',';
    print_number(out, pred.lower[i]);
    out << ',';
    print_number(out, pred.upper[i]);
    out << ',' << pred.flag[i] << '\n';
  }
}

void write_variogram_csv(const std::string& path, const VariogramEstimate& vg) {
  std::ofstream out = open_out(path);
  out << "bin_center,semivariance,count\n";
  for (std::size_t i = 0; i < vg.bin_centers.size(); ++i) {
    print_number(out, vg.bin_centers[i]);
    out << ',';
    print_number(out, vg.semivariance[i]);
    out << ',' << vg.counts[i] << '\n';
  }
}

}  // namespace vgp
