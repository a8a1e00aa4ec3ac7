#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace nlpol {

// Comma-separated, '.' decimal, LF line ends, one header row with units in brackets,
// e.g. "k [1/m]".
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  void row(const std::vector<double>& values);
  void close();
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
  std::size_t columns_;
  std::ofstream out_;
};

std::string format_number(double value);

}  // namespace nlpol
