#pragma once

// CSV tables with shortest round-trip number formatting, SHA-256 digests
// and the per-directory run manifest.

#include <json.hpp>

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace zeno::io {

// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

class CsvTable {
 public:
  using Cell = std::variant<double, std::string>;

  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row);
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }
  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string sha256_hex(const std::string& bytes);

// Writes through a temporary file and a rename.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

struct OutputFile {
  std::string name;
  std::string contents;
};

// Records one command's outputs in <dir>/manifest.json, keeping the entries
// of other commands that still reference files on disk.
void write_manifest(const std::filesystem::path& dir, const std::string& command,
                    const nlohmann::json& run_record, const std::vector<OutputFile>& files);

}  // namespace zeno::io
