#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace monodens {

// Sorted nonnegative observations.  Construct through ingest() so the
// ordering and finiteness invariants always hold.
struct Sample {
  std::vector<double> values;  // ascending

  std::size_t size() const { return values.size(); }
  double min() const { return values.front(); }
  double max() const { return values.back(); }
};

// Validates and sorts raw observations.  Throws std::invalid_argument naming
// the first offending index, e.g. "negative value at index 1".
Sample ingest(std::vector<double> raw);

// Reads one observation per line; blank lines and lines starting with '#'
// are skipped.  Throws std::runtime_error on unreadable files and
// std::invalid_argument on malformed numbers.
Sample load_sample_file(const std::string& path);

void save_sample_file(const Sample& s, const std::string& path);

}  // namespace monodens
