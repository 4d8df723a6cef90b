#include "fpx/records.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fpx {

std::string format_real(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

void write_grid_function_csv(const std::string& path, const GridFunction& u,
                             const std::string& config_hash) {
  std::ostringstream out;
  out << "# config_hash=" << config_hash << "\n";
  out << "value\n";
  for (Index i = 0; i < u.values.size(); ++i) out << format_real(u.values[i]) << "\n";
  write_text_atomic(path, out.str());
}

Vector read_grid_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open function file '" + path + "'");
  std::vector<Real> vals;
  if (std::filesystem::path(path).extension() == ".json") {
    nlohmann::json j;
    in >> j;
    if (!j.is_array())
      throw std::runtime_error("function file '" + path + "' is not a JSON array");
    for (const auto& v : j) vals.push_back(v.get<Real>());
  } else {
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      try {
        size_t pos = 0;
        const Real v = std::stod(line, &pos);
        vals.push_back(v);
      } catch (const std::exception&) {
        // a non-numeric header row is allowed once; anything else is malformed
        if (!vals.empty())
          throw std::runtime_error("malformed value line in '" + path + "': " + line);
      }
    }
  }
  Vector out(static_cast<Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) out[static_cast<Index>(i)] = vals[i];
  return out;
}

std::string RunRecord::to_json() const {
  nlohmann::ordered_json j;
  j["config_hash"] = config_hash;
  j["command"] = command;
  nlohmann::ordered_json out_scalars = nlohmann::ordered_json::object();
  for (const auto& [k, v] : scalars) out_scalars[k] = v;
  nlohmann::ordered_json out_files = nlohmann::ordered_json::object();
  for (const auto& [k, v] : files) out_files[k] = v;
  j["outputs"] = {{"scalars", out_scalars}, {"files", out_files}};
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metadata) meta[k] = v;
  j["metadata"] = meta;
  return j.dump(2) + "\n";
}

}  // namespace fpx
