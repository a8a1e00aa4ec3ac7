#include "nlpol/csv.hpp"

#include <cmath>
#include <cstdio>

#include "nlpol/error.hpp"

namespace nlpol {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), columns_(header.size()), out_(path, std::ios::binary) {
  if (!out_) throw IoError("cannot open " + path + " for writing");
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw std::logic_error("CSV row width does not match header");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
  out_ << '\n';
  if (!out_) throw IoError("failed writing " + path_);
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw IoError("failed closing " + path_);
}

}  // namespace nlpol
