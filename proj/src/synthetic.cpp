#include "groupform/synthetic.hpp"

#include <stdexcept>
#include <string>

#include "groupform/random.hpp"

namespace groupform {

namespace {

std::string padded(const char* prefix, std::size_t value, std::size_t count) {
  const std::size_t width = std::to_string(count > 0 ? count - 1 : 0).size();
  std::string digits = std::to_string(value);
  return prefix + std::string(width - digits.size(), '0') + digits;
}

}  // namespace

void SyntheticSpec::validate() const {
  if (participants == 0 || groups == 0 || codes == 0 || tasks == 0) {
    throw std::invalid_argument("synthetic sizes must be positive");
  }
  if (groups > participants) {
    throw std::invalid_argument("more groups than participants");
  }
  if (!(overlap_density >= 0.0 && overlap_density <= 1.0)) {
    throw std::invalid_argument("overlap density must lie in [0, 1]");
  }
}

std::vector<InteractionRecord> generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  auto task = [&] {
    return padded("t", static_cast<std::size_t>(uniform01(rng) * static_cast<double>(spec.tasks)),
                  spec.tasks);
  };

  std::vector<InteractionRecord> records;
  for (std::size_t p = 0; p < spec.participants; ++p) {
    const std::string name = padded("p", p, spec.participants);
    const std::size_t g = p % spec.groups;
    const std::string group = padded("g", g, spec.groups);
    records.push_back({name, group, task(), "private-" + name});
    for (std::size_t c = 0; c < spec.codes; ++c) {
      // draw unconditionally so the stream does not depend on density
      const double u = uniform01(rng);
      const std::string t = task();
      if (u < spec.overlap_density) {
        records.push_back({name, group, t, padded("c", c, spec.codes)});
      }
    }
  }
  return records;
}

}  // namespace groupform
