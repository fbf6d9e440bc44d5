#include "zeno/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace zeno::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

void CsvTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw std::invalid_argument("CsvTable: row width mismatch");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ',';
    out += columns_[i];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const auto* d = std::get_if<double>(&row[i]))
        out += format_double(*d);
      else
        out += std::get<std::string>(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i)
    os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {
std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}
}  // namespace

void write_manifest(const std::filesystem::path& dir, const std::string& command,
                    const nlohmann::json& run_record, const std::vector<OutputFile>& files) {
  using nlohmann::json;
  const auto path = dir / "manifest.json";
  json manifest = json::object();
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    manifest = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (manifest.is_discarded() || !manifest.is_object()) manifest = json::object();
  }
  manifest["tool"] = "zeno-trap";
  manifest["version"] = ZENO_TRAP_VERSION;
  if (!manifest.contains("runs") || !manifest["runs"].is_object()) manifest["runs"] = json::object();

  json entry = run_record;
  entry["timestamp"] = utc_timestamp();
  json listed = json::array();
  for (const auto& f : files)
    listed.push_back({{"name", f.name}, {"sha256", sha256_hex(f.contents)},
                      {"bytes", f.contents.size()}});
  entry["files"] = listed;
  manifest["runs"][command] = entry;

  // Drop stale runs whose files are gone.
  for (auto it = manifest["runs"].begin(); it != manifest["runs"].end();) {
    bool present = true;
    for (const auto& f : (*it)["files"])
      present = present && std::filesystem::exists(dir / f["name"].get<std::string>());
    it = present ? std::next(it) : manifest["runs"].erase(it);
  }
  write_atomic(path, manifest.dump(2) + "\n");
}

}  // namespace zeno::io
