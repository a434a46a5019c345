#include "splitstep/report_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace splitstep {

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string csv_string(const Trajectory& trajectory) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : trajectory.records) {
    out += std::to_string(r.n);
    for (double v : {r.t, r.l2, r.h1, r.kinetic_tk, r.energy_hk}) {
      out += ',';
      out += format_real(v);
    }
    out += ',';
    if (r.h1_lower_bound) out += format_real(*r.h1_lower_bound);
    out += ',';
    if (r.membership_defect) out += format_real(*r.membership_defect);
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw std::runtime_error(path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": " + std::strerror(errno));
  out << text;
  out.flush();
  if (!out) throw std::runtime_error(path.string() + ": " + std::strerror(errno));
}

void emit_csv(const Trajectory& trajectory, const std::filesystem::path& path) {
  write_text(path, csv_string(trajectory));
}

void emit_json(const nlohmann::json& document, const std::filesystem::path& path) {
  write_text(path, document.dump(2) + "\n");
}

void emit_json(const ExperimentSummary& summary, const std::filesystem::path& path) {
  emit_json(to_json(summary), path);
}

}  // namespace splitstep
