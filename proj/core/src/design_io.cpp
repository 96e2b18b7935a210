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
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "liftkit/designs.hpp"

namespace liftkit {

namespace {

constexpr const char* kMagic = "LIFTKIT-DESIGN v1";

}  // namespace

// Layout:
//   LIFTKIT-DESIGN v1
//   # label: <free text>        (optional; lines starting with '#' are skipped)
//   d N t
//   w re_0 im_0 re_1 im_1 ...   (N lines)
void write_design(std::ostream& out, const DesignEnsemble& e) {
  out << kMagic << '\n';
  if (!e.label.empty()) out << "# label: " << e.label << '\n';
  out << e.dim << ' ' << e.size() << ' ' << e.order_claim << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < e.size(); ++i) {
    out << e.weights[i];
    for (Eigen::Index j = 0; j < e.dim; ++j)
      out << ' ' << e.vectors[i](j).real() << ' ' << e.vectors[i](j).imag();
    out << '\n';
  }
}

DesignEnsemble read_design(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMagic)
    throw std::invalid_argument("design file: missing '" + std::string(kMagic) + "' header");
  std::string label;
  const auto next_data_line = [&](std::string& out_line) {
    while (std::getline(in, out_line)) {
      if (out_line.rfind("# label: ", 0) == 0) {
        label = out_line.substr(9);
        continue;
      }
      if (out_line.empty() || out_line[0] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_data_line(line)) throw std::invalid_argument("design file: missing 'd N t' line");
  int d = 0;
  long long n = 0;
  int t = 0;
  {
    std::istringstream hdr(line);
    if (!(hdr >> d >> n >> t) || d < 1 || n < 1)
      throw std::invalid_argument("design file: malformed 'd N t' line: " + line);
  }
  std::vector<ComplexVec> vectors;
  std::vector<double> weights;
  vectors.reserve(n);
  weights.reserve(n);
  for (long long i = 0; i < n; ++i) {
    if (!next_data_line(line))
      throw std::invalid_argument("design file: expected " + std::to_string(n) + " vectors, got " +
                                  std::to_string(i));
    std::istringstream row(line);
    double w = 0.0;
    if (!(row >> w)) throw std::invalid_argument("design file: bad weight on vector " + std::to_string(i));
    ComplexVec v(d);
    for (int j = 0; j < d; ++j) {
      double re = 0.0, im = 0.0;
      if (!(row >> re >> im))
        throw std::invalid_argument("design file: vector " + std::to_string(i) + " is short");
      v(j) = cplx(re, im);
    }
    vectors.push_back(std::move(v));
    weights.push_back(w);
  }
  return make_ensemble(d, t, std::move(vectors), std::move(weights), label.empty() ? "file" : label);
}

void save_design(const std::string& path, const DesignEnsemble& e) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_design(out, e);
  if (!out) throw std::runtime_error("write failed: " + path);
}

DesignEnsemble load_design(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_design(in);
}

}  // namespace liftkit
