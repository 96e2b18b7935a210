// Copyright 2026 The liftkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "liftkit/measurement.hpp"

namespace liftkit {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("record csv: bad ") + what + " '" + s + "'");
  }
}

}  // namespace

void write_record_csv(std::ostream& out, const MeasurementRecord& rec) {
  const int d = rec.signal_dim;
  std::string label = rec.source_label;
  for (char& c : label)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  out << "d,m,seed,label\n";
  out << d << ',' << rec.m() << ',' << rec.seed << ',' << label << '\n';
  out << 'i';
  for (int j = 0; j < d; ++j) out << ",re_" << j;
  for (int j = 0; j < d; ++j) out << ",im_" << j;
  out << ",y\n";
  out << std::setprecision(17);
  out << 0;
  for (int j = 0; j < 2 * d; ++j) out << ',';
  out << ',' << rec.intensity << '\n';
  for (int i = 0; i < rec.m(); ++i) {
    const auto& a = rec.vectors[i];
    out << i + 1;
    for (int j = 0; j < d; ++j) out << ',' << a(j).real();
    for (int j = 0; j < d; ++j) out << ',' << a(j).imag();
    out << ',' << rec.amplitudes[i] << '\n';
  }
}

MeasurementRecord read_record_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "d,m,seed,label")
    throw std::invalid_argument("record csv: missing 'd,m,seed,label' header");
  if (!std::getline(in, line)) throw std::invalid_argument("record csv: missing metadata row");
  const auto meta = split_csv(line);
  if (meta.size() < 3) throw std::invalid_argument("record csv: malformed metadata row");
  MeasurementRecord rec;
  int m = 0;
  try {
    rec.signal_dim = std::stoi(meta[0]);
    m = std::stoi(meta[1]);
    rec.seed = std::stoull(meta[2]);
  } catch (const std::exception&) {
    throw std::invalid_argument("record csv: malformed metadata row '" + line + "'");
  }
  rec.source_label = meta.size() > 3 ? meta[3] : "";
  const int d = rec.signal_dim;
  if (d < 1 || m < 0) throw std::invalid_argument("record csv: bad d or m");
  if (!std::getline(in, line)) throw std::invalid_argument("record csv: missing column header");
  const auto columns = static_cast<std::size_t>(2 * d + 2);
  if (split_csv(line).size() != columns) throw std::invalid_argument("record csv: column header width");
  if (!std::getline(in, line)) throw std::invalid_argument("record csv: missing intensity row");
  auto cells = split_csv(line);
  if (cells.size() != columns || cells[0] != "0")
    throw std::invalid_argument("record csv: malformed intensity row");
  rec.intensity = parse_double(cells.back(), "intensity");
  for (int i = 1; i <= m; ++i) {
    if (!std::getline(in, line)) throw std::invalid_argument("record csv: missing row " + std::to_string(i));
    cells = split_csv(line);
    if (cells.size() != columns) throw std::invalid_argument("record csv: row " + std::to_string(i) + " width");
    ComplexVec a(d);
    for (int j = 0; j < d; ++j)
      a(j) = cplx(parse_double(cells[1 + j], "real part"), parse_double(cells[1 + d + j], "imaginary part"));
    rec.vectors.push_back(std::move(a));
    rec.amplitudes.push_back(parse_double(cells.back(), "amplitude"));
  }
  return rec;
}

void save_record(const std::string& path, const MeasurementRecord& rec) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_record_csv(out, rec);
  if (!out) throw std::runtime_error("write failed: " + path);
}

MeasurementRecord load_record(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_record_csv(in);
}

}  // namespace liftkit
