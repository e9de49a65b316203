#include "pherm/matrixio.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pherm {

namespace {

Matrix from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries")) {
    throw ParseError("matrix document must contain \"n\" and \"entries\"");
  }
  if (!doc["n"].is_number_integer()) {
    throw ParseError("\"n\" must be an integer");
  }
  const int n = doc["n"].get<int>();
  if (n < 1) throw ParseError("\"n\" must be positive");
  if (n > kMaxDim) {
    throw TooLarge("matrix dimension " + std::to_string(n) +
                   " exceeds the maximum of " + std::to_string(kMaxDim));
  }
  const auto& rows = doc["entries"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw ParseError("\"entries\" must hold exactly n rows");
  }
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ParseError("row " + std::to_string(i) +
                       " does not hold exactly n entries");
    }
    for (int j = 0; j < n; ++j) {
      const auto& e = row[j];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number()) {
        throw ParseError("entry (" + std::to_string(i) + "," +
                         std::to_string(j) + ") must be a [re, im] pair");
      }
      m(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  check_finite(m);
  return m;
}

}  // namespace

Matrix parse_matrix(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid matrix document: ") + e.what());
  }
  return from_json(doc);
}

Matrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

std::string format_matrix(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  nlohmann::json doc;
  doc["n"] = m.rows();
  doc["entries"] = std::move(rows);
  return doc.dump();
}

void write_matrix(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open file for writing: " + path);
  out << format_matrix(m) << "\n";
}

std::string matrix_digest(const Matrix& m) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const char* data, size_t len) {
    for (size_t i = 0; i < len; ++i) {
      h ^= static_cast<unsigned char>(data[i]);
      h *= 1099511628211ULL;
    }
  };
  char buf[64];
  int n = std::snprintf(buf, sizeof(buf), "%lldx%lld;",
                        static_cast<long long>(m.rows()),
                        static_cast<long long>(m.cols()));
  mix(buf, static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      n = std::snprintf(buf, sizeof(buf), "%.17g,%.17g;", m(i, j).real(),
                        m(i, j).imag());
      mix(buf, static_cast<size_t>(n));
    }
  }
  n = std::snprintf(buf, sizeof(buf), "%016llx",
                    static_cast<unsigned long long>(h));
  return std::string(buf, static_cast<size_t>(n));
}

}  // namespace pherm
