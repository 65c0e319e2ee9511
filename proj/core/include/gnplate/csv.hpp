#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>

namespace gnplate {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Minimal comma-separated writer; cells are written verbatim.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header);

  CsvWriter& cell(double value);
  CsvWriter& cell(std::string_view text);
  CsvWriter& empty();
  void end_row();

 private:
  std::ofstream os_;
  bool first_ = true;
};

}  // namespace gnplate
