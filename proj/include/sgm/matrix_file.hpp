#ifndef SGM_MATRIX_FILE_HPP
#define SGM_MATRIX_FILE_HPP

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sgm/linalg.hpp"

// Matrix interchange format:
//   {"n": 3, "complex": true, "data_re": [...9 row-major...], "data_im": [...]}
// data_im is omitted for real matrices. Doubles are written with the shortest
// representation that reads back to the same bits.
namespace sgm {

using json = nlohmann::json;

inline json matrix_to_json(const Matrix& m) {
  require_square(m, "matrix file payload");
  const Index n = m.rows();
  json re = json::array();
  json im = json::array();
  bool complex = false;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
      if (m(i, j).imag() != 0.0) complex = true;
    }
  }
  json out{{"n", n}, {"complex", complex}, {"data_re", std::move(re)}};
  if (complex) out["data_im"] = std::move(im);
  return out;
}

namespace detail {

inline std::vector<double> read_entries(const json& j, const char* key, Index count) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw Error(ErrorKind::ParseError, std::string("missing array '") + key + "'");
  }
  const auto& arr = j[key];
  if (static_cast<Index>(arr.size()) != count) {
    throw Error(ErrorKind::ParseError, std::string("'") + key + "' has " +
                                           std::to_string(arr.size()) + " entries, expected " +
                                           std::to_string(count));
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) throw Error(ErrorKind::ParseError, std::string("non-numeric entry in ") + key);
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw Error(ErrorKind::ParseError, "non-finite entry");
    out.push_back(d);
  }
  return out;
}

}  // namespace detail

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "matrix file must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw Error(ErrorKind::ParseError, "missing integer 'n'");
  }
  const auto n = j["n"].get<long long>();
  if (n < 1 || n > 4096) throw Error(ErrorKind::ParseError, "'n' out of range");
  bool complex = false;
  if (j.contains("complex")) {
    if (!j["complex"].is_boolean()) throw Error(ErrorKind::ParseError, "'complex' must be boolean");
    complex = j["complex"].get<bool>();
  }
  if (!complex && j.contains("data_im")) {
    throw Error(ErrorKind::ParseError, "'data_im' present on a real matrix");
  }
  const Index count = static_cast<Index>(n * n);
  const auto re = detail::read_entries(j, "data_re", count);
  std::vector<double> im;
  if (complex) im = detail::read_entries(j, "data_im", count);
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < n; ++k) {
      const auto idx = static_cast<std::size_t>(i * n + k);
      m(i, k) = Complex(re[idx], complex ? im[idx] : 0.0);
    }
  }
  return m;
}

inline Matrix parse_matrix(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return matrix_from_json(j);
}

inline Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_matrix(ss.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

inline void write_matrix_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << matrix_to_json(m).dump(2) << '\n';
}

inline PositiveDefiniteMatrix read_pd_file(const std::string& path) {
  return PositiveDefiniteMatrix(HermitianMatrix(read_matrix_file(path)));
}

}  // namespace sgm

#endif  // SGM_MATRIX_FILE_HPP
