#pragma once

#include <fstream>
#include <string>

namespace slabmix {

/// Shortest decimal string that round-trips the double (up to 17 significant
/// digits).
std::string fmt17(double value);

/// Opens an output file for UTF-8/LF text, throwing on failure.
std::ofstream open_output(const std::string& path);

}  // namespace slabmix
