#include "pidpp/matrix_io.hpp"

#include "pidpp/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <vector>

namespace pidpp {

namespace {

std::vector<std::string> tokens_without_comments(std::string_view text) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  return tokens;
}

std::size_t parse_order(const std::string& tok) {
  Rational n = parse_rational(tok);
  if (n.get_den() != 1 || n < 0 || !n.get_num().fits_ulong_p()) {
    throw ParseError("matrix order must be a nonnegative integer, got '" + tok + "'");
  }
  return n.get_num().get_ui();
}

}  // namespace

Matrix parse_matrix_text(std::string_view text) {
  std::vector<std::string> tokens = tokens_without_comments(text);
  if (tokens.empty()) throw ParseError("missing matrix order");
  const std::size_t n = parse_order(tokens[0]);
  if (tokens.size() != 1 + n * n) {
    throw ParseError("expected " + std::to_string(n * n) + " entries, found " + std::to_string(tokens.size() - 1));
  }
  std::vector<Rational> entries;
  entries.reserve(n * n);
  for (std::size_t i = 1; i < tokens.size(); ++i) entries.push_back(parse_rational(tokens[i]));
  return Matrix(n, n, std::move(entries));
}

std::string format_matrix_text(const Matrix& m) {
  std::ostringstream out;
  out << m.order() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << to_string(m(i, j));
    }
    out << '\n';
  }
  return out.str();
}

Matrix parse_matrix_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON matrix: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries")) {
    throw ParseError("JSON matrix needs fields \"n\" and \"entries\"");
  }
  if (!doc["n"].is_number_unsigned() && !doc["n"].is_number_integer()) throw ParseError("\"n\" must be an integer");
  const long long n = doc["n"].get<long long>();
  if (n < 0) throw ParseError("\"n\" must be nonnegative");
  const auto& rows = doc["entries"];
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n)) throw ParseError("\"entries\" must have n rows");
  std::vector<Rational> entries;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) throw ParseError("each row must have n entries");
    for (const auto& x : row) {
      if (x.is_string()) {
        entries.push_back(parse_rational(x.get<std::string>()));
      } else if (x.is_number_integer()) {
        entries.push_back(Rational(std::to_string(x.get<long long>())));
      } else {
        throw ParseError("entries must be strings \"p/q\" or integers");
      }
    }
  }
  return Matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n), std::move(entries));
}

std::string format_matrix_json(const Matrix& m) {
  nlohmann::json doc;
  doc["n"] = m.order();
  doc["entries"] = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    doc["entries"].push_back(std::move(row));
  }
  return doc.dump();
}

Matrix parse_matrix(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_matrix_json(text);
  return parse_matrix_text(text);
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_matrix(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace pidpp
