#ifndef SOFIC_TESTS_TEST_SUPPORT_HPP
#define SOFIC_TESTS_TEST_SUPPORT_HPP

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "sofic/group_io.hpp"

namespace sofic::testing {

inline std::string fixture(const std::string& relative) {
  return std::string(SOFIC_FIXTURE_DIR) + "/" + relative;
}

inline Group fixture_group(const std::string& relative) {
  return load_group_file(fixture(relative)).group;
}

/// Every finite table fixture, sorted by file name.
inline std::vector<std::string> finite_fixture_files() {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(fixture("groups/finite"))) {
    if (entry.path().extension() == ".json") out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline GroupElement el(std::int64_t x) { return GroupElement{{x}}; }
inline GroupElement el(std::int64_t x, std::int64_t y) { return GroupElement{{x, y}}; }

}  // namespace sofic::testing

#endif  // SOFIC_TESTS_TEST_SUPPORT_HPP
