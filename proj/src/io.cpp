#include "gausstv/io.hpp"

#include <charconv>
#include <cmath>
#include <json.hpp>
#include <string>

#include "gausstv/error.hpp"

namespace gausstv::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw Error(ErrorKind::InvalidInput, message);
}

bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size() && std::isfinite(out);
}

json parse_json(std::string_view text, std::string_view source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is the 1-based offset of the offending character.
    const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string reason = e.what();
    if (const auto pos = reason.find(": "); pos != std::string::npos) {
      reason = reason.substr(pos + 2);
    }
    fail(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(column) +
         ": malformed JSON: " + reason);
  }
}

const json& member(const json& obj, const char* key, std::string_view source) {
  if (!obj.is_object()) fail(std::string(source) + ": top level must be a JSON object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(std::string(source) + ": missing key \"" + key + "\"");
  return *it;
}

std::vector<double> numbers(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& x : v) {
    if (!x.is_number()) fail(where + " must contain only numbers");
    const double d = x.get<double>();
    if (!std::isfinite(d)) fail(where + " contains a non-finite number");
    out.push_back(d);
  }
  return out;
}

Eigen::VectorXd vector_from(const json& v, const std::string& where) {
  const std::vector<double> xs = numbers(v, where);
  return Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

Eigen::MatrixXd matrix_from(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where + " must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  Eigen::MatrixXd m;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::vector<double> row =
        numbers(v[static_cast<std::size_t>(i)], where + " row " + std::to_string(i));
    if (i == 0) m.resize(rows, static_cast<Eigen::Index>(row.size()));
    if (static_cast<Eigen::Index>(row.size()) != m.cols()) fail(where + " has ragged rows");
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = row[static_cast<std::size_t>(j)];
  }
  return m;
}

}  // namespace

double parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  double value = 0.0;
  if (slash == std::string_view::npos) {
    if (!parse_double(text, value)) fail("cannot parse number '" + std::string(text) + "'");
    return value;
  }
  double num = 0.0, den = 0.0;
  if (!parse_double(text.substr(0, slash), num) || !parse_double(text.substr(slash + 1), den)) {
    fail("cannot parse rational '" + std::string(text) + "'");
  }
  if (den == 0.0) fail("zero denominator in '" + std::string(text) + "'");
  value = num / den;
  if (!std::isfinite(value)) fail("rational '" + std::string(text) + "' overflows");
  return value;
}

std::pair<GaussianParams, GaussianParams> parse_gaussian_pair(std::string_view text,
                                                              std::string_view source) {
  const json doc = parse_json(text, source);
  const std::string s(source);
  GaussianParams p1{vector_from(member(doc, "mu1", source), s + ": mu1"),
                    matrix_from(member(doc, "sigma1", source), s + ": sigma1")};
  GaussianParams p2{vector_from(member(doc, "mu2", source), s + ": mu2"),
                    matrix_from(member(doc, "sigma2", source), s + ": sigma2")};
  return {std::move(p1), std::move(p2)};
}

std::vector<DiscreteDistributionPair> parse_discrete_pairs(std::string_view text,
                                                           std::string_view source) {
  const json doc = parse_json(text, source);
  const std::string s(source);
  const json& list = member(doc, "pairs", source);
  if (!list.is_array() || list.empty()) fail(s + ": \"pairs\" must be a nonempty array");
  std::vector<DiscreteDistributionPair> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = s + ": pairs[" + std::to_string(i) + "]";
    out.push_back(DiscreteDistributionPair{numbers(member(list[i], "p", where), where + ".p"),
                                           numbers(member(list[i], "q", where), where + ".q")});
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace gausstv::io
