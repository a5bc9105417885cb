#ifndef PITMAN_SAMPLE_STATS_HPP
#define PITMAN_SAMPLE_STATS_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pitman/error.hpp"
#include "pitman/functional.hpp"

namespace pitman {

/// A nonempty sequence of finite observations X₁..Xₙ.
class Dataset {
 public:
  explicit Dataset(std::vector<double> values) : values_(std::move(values)) {
    require(!values_.empty(), "dataset must contain at least one observation");
    for (double v : values_) require(std::isfinite(v), "dataset values must be finite");
  }

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/**
 * Partition statistics of a sample.
 *
 * `distinct` lists the distinct values in order of first appearance and
 * `mult` their multiplicities N_{n,j}. `occupancy[l-1]` is Z_{n,l}, the
 * number of distinct values seen at least l times, for l = 1..max(mult).
 */
struct PartitionSummary {
  std::size_t n = 0;
  std::vector<double> distinct;
  std::vector<std::size_t> mult;
  std::vector<std::size_t> occupancy;

  std::size_t k() const noexcept { return distinct.size(); }

  /// Z_{n,l}; zero beyond the largest multiplicity.
  std::size_t z(std::size_t l) const noexcept {
    return (l >= 1 && l <= occupancy.size()) ? occupancy[l - 1] : 0;
  }
};

/// Occupancy counts Z_l from multiplicities.
inline std::vector<std::size_t> occupancy_from(std::span<const std::size_t> mult) {
  std::size_t top = 0;
  for (auto m : mult) top = std::max(top, m);
  // count of values with multiplicity exactly m, then suffix-accumulate
  std::vector<std::size_t> z(top, 0);
  for (auto m : mult) ++z[m - 1];
  for (std::size_t l = top; l-- > 1;) z[l - 1] += z[l];
  return z;
}

/// Distinct values compare by exact bit pattern.
inline PartitionSummary summarize(std::span<const double> values) {
  require(!values.empty(), "summarize: empty sample");
  PartitionSummary s;
  s.n = values.size();
  std::unordered_map<std::uint64_t, std::size_t> index;
  index.reserve(values.size() / 4 + 16);
  for (double v : values) {
    auto [it, inserted] = index.try_emplace(std::bit_cast<std::uint64_t>(v), s.distinct.size());
    if (inserted) {
      s.distinct.push_back(v);
      s.mult.push_back(1);
    } else {
      ++s.mult[it->second];
    }
  }
  s.occupancy = occupancy_from(s.mult);
  return s;
}

inline PartitionSummary summarize(const Dataset& data) { return summarize(data.values()); }

/// Build a summary directly from multiplicities (distinct values 1..K).
inline PartitionSummary summary_from_counts(std::span<const std::size_t> mult) {
  require(!mult.empty(), "summary_from_counts: at least one block required");
  PartitionSummary s;
  for (std::size_t j = 0; j < mult.size(); ++j) {
    require(mult[j] >= 1, "summary_from_counts: multiplicities must be positive");
    s.distinct.push_back(static_cast<double>(j + 1));
    s.mult.push_back(mult[j]);
    s.n += mult[j];
  }
  s.occupancy = occupancy_from(s.mult);
  return s;
}

/// P̃ₙf: the average of f over the distinct values.
inline double ptilde(const PartitionSummary& s, const Functional& f) {
  double acc = 0.0;
  for (double x : s.distinct) acc += f(x);
  return acc / static_cast<double>(s.k());
}

/// ℙₙf: the average of f over the raw sample.
inline double empirical(std::span<const double> values, const Functional& f) {
  double acc = 0.0;
  for (double x : values) acc += f(x);
  return acc / static_cast<double>(values.size());
}

inline double empirical(const Dataset& data, const Functional& f) { return empirical(data.values(), f); }

/// ℙₙf computed from the partition (Σ N_j f(X̃_j) / n).
inline double empirical(const PartitionSummary& s, const Functional& f) {
  double acc = 0.0;
  for (std::size_t j = 0; j < s.k(); ++j) acc += static_cast<double>(s.mult[j]) * f(s.distinct[j]);
  return acc / static_cast<double>(s.n);
}

/**
 * Read a one-column CSV. A first line that does not parse as a number is
 * treated as a header; blank lines are skipped. Extra columns are ignored.
 */
inline Dataset read_dataset_csv(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto comma = line.find(',');
    std::string cell = line.substr(0, comma);
    const auto b = cell.find_first_not_of(" \t\"");
    if (b == std::string::npos) continue;
    cell = cell.substr(b, cell.find_last_not_of(" \t\"") - b + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != cell.size()) {
      if (lineno == 1) continue;
      throw ConfigError("dataset CSV line " + std::to_string(lineno) + ": not a number: " + cell);
    }
    values.push_back(v);
  }
  return Dataset(std::move(values));
}

inline Dataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dataset " + path);
  return read_dataset_csv(in);
}

}  // namespace pitman

#endif  // PITMAN_SAMPLE_STATS_HPP
