#include "slabmix/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace slabmix {

std::string fmt17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);  // keep LF endings everywhere
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  return os;
}

}  // namespace slabmix
