#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "unfsum/textio.hpp"

namespace unfsum::test {

inline std::string data_path(const std::string& name) { return std::string(UNFSUM_TEST_DATA) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Product load(const std::string& name) { return parse_system(read_text(data_path(name))); }

}  // namespace unfsum::test
