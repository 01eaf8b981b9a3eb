#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pfopt/losses.hpp"

namespace pfopt {

struct Dataset {
  std::vector<Sample> samples;
  int dim = 0;  // max feature index; includes the bias column once augmented
  Task task = Task::regression;
  std::string name;
};

/// Fixed 70/15/15 split fractions plus the permutation seed. The permutation
/// is a Fisher-Yates shuffle driven by std::mt19937_64 so the same seed gives
/// the same split on every platform.
struct SplitSpec {
  double train_frac = 0.70;
  double valid_frac = 0.15;
  double test_frac = 0.15;
  std::uint64_t seed = 0;
};

struct Split {
  std::vector<Sample> train;
  std::vector<Sample> valid;
  std::vector<Sample> test;
};

/// Parse LIBSVM sparse text: `label idx:val idx:val ...`, one sample per
/// line, strictly increasing 1-based indices, `#` starts a comment.
/// Classification labels are remapped onto {-1,+1} ({0,1} and {1,2} schemes
/// accepted). Throws DataError with the offending line number.
Dataset parse_libsvm(std::istream& in, Task task, std::string name);
Dataset parse_libsvm_file(const std::string& path, Task task, std::string name);

/// Serialize back to LIBSVM text with 17 significant digits, enough for an
/// exact double round trip.
void write_libsvm(const Dataset& ds, std::ostream& out);

/// Rescale every sample to norm sqrt(2)/2 and append a constant bias
/// coordinate of sqrt(2)/2 at index dim+1, giving unit-norm samples.
/// Zero-vector samples receive only the bias term.
Dataset normalize_augment(Dataset ds);

/// Seeded permutation, then contiguous partition: train = floor(0.70 n),
/// valid = floor(0.15 n), test = remainder. Requires n >= 3.
Split split(const Dataset& ds, const SplitSpec& spec);

struct ManifestEntry {
  std::string name;
  std::string path;  // resolved relative to the manifest file
  Task task = Task::regression;
};

/// Plain-text registry: `name path task` per line, task in {reg, cls},
/// `#` comments ignored.
std::vector<ManifestEntry> load_manifest(const std::string& path);

}  // namespace pfopt
