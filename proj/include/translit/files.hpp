#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace translit {

/// Reads a UTF-8 text file as lines (LF or CRLF). Throws IoError.
std::vector<std::string> read_lines(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);

/// Writes to "<path>.tmp" and renames over `path` on commit(), so readers
/// never see a partial file. Uncommitted temporaries are removed.
class AtomicFileWriter {
 public:
  explicit AtomicFileWriter(std::filesystem::path path);
  ~AtomicFileWriter();
  AtomicFileWriter(const AtomicFileWriter&) = delete;
  AtomicFileWriter& operator=(const AtomicFileWriter&) = delete;

  std::ostream& stream() { return out_; }
  void commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// RFC 4180 field quoting: quoted only when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view field);
/// Splits one CSV record (no embedded newlines).
std::vector<std::string> parse_csv_record(std::string_view line);

}  // namespace translit
