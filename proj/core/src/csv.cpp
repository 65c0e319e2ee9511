#include "gnplate/csv.hpp"

#include <array>
#include <charconv>

#include "gnplate/errors.hpp"

namespace gnplate {

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) fail(ErrorCode::InvalidArgument, "cannot format number");
  std::string out(buf.data(), end);
  // to_chars pads the exponent to two digits; 1e-09 -> 1e-9.
  const auto e = out.find('e');
  if (e != std::string::npos) {
    std::size_t digits = e + 1;
    if (digits < out.size() && (out[digits] == '-' || out[digits] == '+')) ++digits;
    while (digits + 1 < out.size() && out[digits] == '0') out.erase(digits, 1);
  }
  return out;
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     std::initializer_list<std::string_view> header)
    : os_(path) {
  if (!os_) fail(ErrorCode::InvalidArgument, "cannot open " + path.string());
  for (auto h : header) cell(h);
  end_row();
}

CsvWriter& CsvWriter::cell(double value) { return cell(format_double(value)); }

CsvWriter& CsvWriter::cell(std::string_view text) {
  if (!first_) os_ << ',';
  os_ << text;
  first_ = false;
  return *this;
}

CsvWriter& CsvWriter::empty() { return cell(std::string_view{}); }

void CsvWriter::end_row() {
  os_ << '\n';
  first_ = true;
}

}  // namespace gnplate
