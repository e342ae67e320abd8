#include "momstab/system_io.hpp"

#include <fstream>
#include <sstream>

namespace momstab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw InvalidInput(origin + ": " + what);
}

// line/column of a byte offset, for syntax error reports
std::pair<int, int> line_of(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

double number_at(const json& j, const std::string& origin,
                 const std::string& field) {
  if (!j.is_number()) fail(origin, "field " + field + " must be a number");
  return j.get<double>();
}

Eigen::MatrixXd matrix_field(const json& j, int n, const std::string& origin,
                             const std::string& field) {
  if (!j.is_array()) fail(origin, "field " + field + " must be an array");
  Eigen::MatrixXd m(n, n);
  if (static_cast<int>(j.size()) == n && (n == 0 || j[0].is_array())) {
    for (int i = 0; i < n; ++i) {
      const json& row = j[i];
      const std::string row_name = field + "[" + std::to_string(i) + "]";
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        fail(origin, "field " + row_name + " must be a row of " +
                         std::to_string(n) + " numbers");
      for (int c = 0; c < n; ++c)
        m(i, c) = number_at(row[c],  origin,
                            row_name + "[" + std::to_string(c) + "]");
    }
    return m;
  }
  if (static_cast<int>(j.size()) == n * n) {  // flat row-major
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < n; ++c)
        m(i, c) = number_at(j[i * n + c], origin,
                            field + "[" + std::to_string(i * n + c) + "]");
    return m;
  }
  fail(origin, "field " + field + " must be " + std::to_string(n) + "x" +
                   std::to_string(n) + " rows or a flat array of " +
                   std::to_string(n * n) + " numbers");
}

}  // namespace

LinearSDESystem system_from_json_text(const std::string& text,
                                      const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_of(text, e.byte > 0 ? e.byte - 1 : 0);
    fail(origin, "syntax error at line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) fail(origin, "top level must be an object");

  for (const char* key : {"dim", "noise_count", "drift", "noise"})
    if (!doc.contains(key)) fail(origin, std::string("missing field ") + key);

  LinearSDESystem sys;
  if (!doc["dim"].is_number_integer())
    fail(origin, "field dim must be an integer");
  sys.dim = doc["dim"].get<int>();
  if (sys.dim < 1) fail(origin, "field dim must be >= 1");
  if (!doc["noise_count"].is_number_integer())
    fail(origin, "field noise_count must be an integer");
  sys.noise_count = doc["noise_count"].get<int>();
  if (sys.noise_count < 0) fail(origin, "field noise_count must be >= 0");

  sys.drift = matrix_field(doc["drift"], sys.dim, origin, "drift");

  const json& noise = doc["noise"];
  if (!noise.is_array())
    fail(origin, "field noise must be an array of matrices");
  if (static_cast<int>(noise.size()) != sys.noise_count)
    fail(origin, "field noise has " + std::to_string(noise.size()) +
                     " matrices, expected noise_count = " +
                     std::to_string(sys.noise_count));
  for (int a = 0; a < sys.noise_count; ++a)
    sys.noise.push_back(matrix_field(noise[a], sys.dim, origin,
                                     "noise[" + std::to_string(a) + "]"));

  const auto violations = validate_system(sys);
  if (!violations.empty()) {
    std::string msg = "invalid system:";
    for (const auto& v : violations) msg += "\n  - " + v;
    fail(origin, msg);
  }
  return sys;
}

LinearSDESystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return system_from_json_text(buf.str(), path);
}

json system_to_json(const LinearSDESystem& sys) {
  json doc;
  doc["dim"] = sys.dim;
  doc["noise_count"] = sys.noise_count;
  json drift = json::array();
  for (int i = 0; i < sys.dim; ++i) {
    json row = json::array();
    for (int j = 0; j < sys.dim; ++j) row.push_back(sys.drift(i, j));
    drift.push_back(std::move(row));
  }
  doc["drift"] = std::move(drift);
  json noise = json::array();
  for (const auto& r : sys.noise) {
    json matrix = json::array();
    for (int i = 0; i < sys.dim; ++i) {
      json row = json::array();
      for (int j = 0; j < sys.dim; ++j) row.push_back(r(i, j));
      matrix.push_back(std::move(row));
    }
    noise.push_back(std::move(matrix));
  }
  doc["noise"] = std::move(noise);
  return doc;
}

void save_system(const LinearSDESystem& sys, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput(path + ": cannot open for writing");
  out << system_to_json(sys).dump(2) << "\n";
}

}  // namespace momstab
