#include "gnewton/cli/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "gnewton/errors.hpp"

namespace gnewton::cli {

Matrix parse_matrix_text(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) {
      size_t used = 0;
      double v;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size())
        throw Error(ErrorKind::InvalidInput, "line " + std::to_string(lineno) + ": not a number '" + tok + "'");
      if (!std::isfinite(v))
        throw Error(ErrorKind::InvalidInput, "line " + std::to_string(lineno) + ": non-finite entry");
      row.push_back(v);
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error(ErrorKind::InvalidInput, "line " + std::to_string(lineno) + ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorKind::InvalidInput, "empty matrix");
  Matrix m(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_matrix_text(ss.str());
}

std::string format_matrix(const Matrix& m) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << "\n";
  }
  return out.str();
}

}  // namespace gnewton::cli
