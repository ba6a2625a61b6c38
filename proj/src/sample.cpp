#include "monodens/sample.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace monodens {

Sample ingest(std::vector<double> raw) {
  if (raw.empty()) throw std::invalid_argument("empty sample");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i]))
      throw std::invalid_argument("non-finite value at index " +
                                  std::to_string(i));
    if (raw[i] < 0.0)
      throw std::invalid_argument("negative value at index " +
                                  std::to_string(i));
  }
  std::sort(raw.begin(), raw.end());
  return Sample{std::move(raw)};
}

Sample load_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sample file: " + path);
  std::vector<double> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    std::istringstream ss(line.substr(start));
    double v;
    std::string extra;
    if (!(ss >> v) || (ss >> extra))
      throw std::invalid_argument("malformed number in " + path + " line " +
                                  std::to_string(lineno));
    raw.push_back(v);
  }
  return ingest(std::move(raw));
}

void save_sample_file(const Sample& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out.precision(17);
  for (double v : s.values) out << v << '\n';
}

}  // namespace monodens
