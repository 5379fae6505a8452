// io.hpp — Deterministic CSV emission (shortest-round-trip doubles), content
// hashing, and stderr logging gated by QMELAB_LOG.

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "qmelab/types.hpp"

namespace qmelab {

// Shortest decimal string that round-trips the double ('.' decimal point,
// locale independent).
std::string format_double(double x);

// RFC-4180-style CSV with '\n' line ends; every cell already stringified.
class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header,
              const std::string& comment = "");
    void row(const std::vector<std::string>& cells);
    void row_doubles(const std::vector<double>& cells);
    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t width_;
};

std::string sha256_file(const std::filesystem::path& path);

enum class LogLevel { quiet = 0, info = 1, debug = 2 };
LogLevel log_level(); // parsed once from QMELAB_LOG (quiet|info|debug)
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

} // namespace qmelab
