#include "rsl/curve_io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rsl {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(line.substr(start));
      return parts;
    }
    parts.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw std::invalid_argument("curve file: bad numeric field '" + s + "'");
  return v;
}

long parse_long(const std::string& s) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0')
    throw std::invalid_argument("curve file: bad integer field '" + s + "'");
  return v;
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (i > 0) out += ';';
    out += flags[i];
  }
  return out;
}

json value_to_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double value_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_double(j.get<std::string>());
  throw std::invalid_argument("curve json: bad numeric value");
}

}  // namespace

FileFormat format_from_string(const std::string& s) {
  if (s == "csv") return FileFormat::kCsv;
  if (s == "json") return FileFormat::kJson;
  throw std::invalid_argument("unknown format '" + s + "' (expected csv|json)");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const EnergyCurve& curve, std::ostream& out) {
  curve.validate();
  out << "# n=" << curve.n << '\n';
  out << "# model=" << to_string(curve.model) << '\n';
  out << "# source=" << to_string(curve.source) << '\n';
  for (const auto& [key, value] : curve.metadata) {
    if (key == "n" || key == "model" || key == "source") continue;
    out << "# " << key << '=' << value << '\n';
  }
  const bool mc = curve.source == CurveSource::kMc;
  out << (mc ? "depth,value,log_value,stderr,flags" : "depth,value,log_value") << '\n';
  for (const auto& row : curve.rows) {
    out << row.depth << ',' << format_double(row.value) << ',' << format_double(row.log_value);
    if (mc) out << ',' << format_double(*row.stderr_value) << ',' << join_flags(row.flags);
    out << '\n';
  }
}

EnergyCurve read_csv(std::istream& in) {
  EnergyCurve curve;
  std::string line;
  bool header_seen = false;
  bool mc_columns = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t start = line.find_first_not_of(" \t", 1);
      if (start == std::string::npos) continue;
      const std::size_t eq = line.find('=', start);
      if (eq == std::string::npos)
        throw std::invalid_argument("curve csv: malformed metadata line '" + line + "'");
      curve.metadata[line.substr(start, eq - start)] = line.substr(eq + 1);
      continue;
    }
    if (!header_seen) {
      if (line == "depth,value,log_value,stderr,flags") {
        mc_columns = true;
      } else if (line != "depth,value,log_value") {
        throw std::invalid_argument("curve csv: unexpected column header '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != (mc_columns ? 5u : 3u))
      throw std::invalid_argument("curve csv: wrong field count in '" + line + "'");
    CurveRow row;
    row.depth = parse_long(fields[0]);
    row.value = parse_double(fields[1]);
    row.log_value = parse_double(fields[2]);
    if (mc_columns) {
      row.stderr_value = parse_double(fields[3]);
      if (!fields[4].empty()) row.flags = split(fields[4], ';');
    }
    curve.rows.push_back(std::move(row));
  }
  if (!header_seen) throw std::invalid_argument("curve csv: missing column header");

  const auto take = [&](const char* key) {
    const auto it = curve.metadata.find(key);
    if (it == curve.metadata.end())
      throw std::invalid_argument(std::string("curve csv: missing metadata '") + key + "'");
    std::string v = it->second;
    curve.metadata.erase(it);
    return v;
  };
  curve.n = parse_long(take("n"));
  curve.model = model_from_string(take("model"));
  curve.source = source_from_string(take("source"));
  curve.validate();
  return curve;
}

void write_json(const EnergyCurve& curve, std::ostream& out) {
  curve.validate();
  json j;
  j["n"] = curve.n;
  j["model"] = to_string(curve.model);
  j["source"] = to_string(curve.source);
  j["metadata"] = curve.metadata;
  json rows = json::array();
  for (const auto& row : curve.rows) {
    json r;
    r["depth"] = row.depth;
    r["value"] = value_to_json(row.value);
    r["log_value"] = value_to_json(row.log_value);
    if (row.stderr_value) r["stderr"] = value_to_json(*row.stderr_value);
    if (!row.flags.empty()) r["flags"] = row.flags;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  out << j.dump(2) << '\n';
}

EnergyCurve read_json(std::istream& in) {
  json j = json::parse(in);
  EnergyCurve curve;
  curve.n = j.at("n").get<long>();
  curve.model = model_from_string(j.at("model").get<std::string>());
  curve.source = source_from_string(j.at("source").get<std::string>());
  if (j.contains("metadata"))
    curve.metadata = j["metadata"].get<std::map<std::string, std::string>>();
  for (const auto& r : j.at("rows")) {
    CurveRow row;
    row.depth = r.at("depth").get<long>();
    row.value = value_from_json(r.at("value"));
    row.log_value = value_from_json(r.at("log_value"));
    if (r.contains("stderr")) row.stderr_value = value_from_json(r["stderr"]);
    if (r.contains("flags")) row.flags = r["flags"].get<std::vector<std::string>>();
    curve.rows.push_back(std::move(row));
  }
  curve.validate();
  return curve;
}

void write_curve_file(const EnergyCurve& curve, const std::string& path, FileFormat format) {
  const auto write = [&](std::ostream& out) {
    if (format == FileFormat::kCsv) {
      write_csv(curve, out);
    } else {
      write_json(curve, out);
    }
  };
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  write(out);
  if (!out) throw std::runtime_error("error writing '" + path + "'");
}

EnergyCurve read_curve_file(const std::string& path, FileFormat format) {
  const auto read = [&](std::istream& in) {
    return format == FileFormat::kCsv ? read_csv(in) : read_json(in);
  };
  if (path == "-") return read(std::cin);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
  return read(in);
}

}  // namespace rsl
