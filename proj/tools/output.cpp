#include "output.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <system_error>

#include <unistd.h>

namespace carnot::cli {

std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<double>& times,
                      const std::vector<const Eigen::MatrixXd*>& blocks) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (std::size_t r = 0; r < times.size(); ++r) {
    out += format_double(times[r]);
    for (const auto* b : blocks)
      for (Eigen::Index c = 0; c < b->cols(); ++c) {
        out += ',';
        out += format_double((*b)(static_cast<Eigen::Index>(r), c));
      }
    out += '\n';
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename into " + path.string() + ": " + ec.message());
  }
}

std::vector<std::filesystem::path> OutputSet::commit() const {
  std::filesystem::create_directories(dir_);
  std::vector<std::filesystem::path> written;
  for (const auto& [name, contents] : files_) {
    const auto path = dir_ / name;
    write_atomic(path, contents);
    written.push_back(path);
  }
  return written;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace carnot::cli
