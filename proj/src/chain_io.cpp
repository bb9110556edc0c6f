#include "walkmix/chain_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace walkmix {

namespace {

using nlohmann::json;

Eigen::MatrixXd parse_matrix(const json& doc) {
  if (!doc.is_object()) {
    throw ParseError("chain file must be a JSON object");
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw ParseError("chain file is missing the integer key \"n\"");
  }
  const long n = doc["n"].get<long>();
  if (n < 1) {
    throw ParseError("n must be at least 1, got " + std::to_string(n));
  }
  if (!doc.contains("p") || !doc["p"].is_array()) {
    throw ParseError("chain file is missing the array key \"p\"");
  }
  const json& rows = doc["p"];
  if (static_cast<long>(rows.size()) != n) {
    throw ParseError("\"p\" has " + std::to_string(rows.size()) + " rows, expected " +
                     std::to_string(n));
  }
  Eigen::MatrixXd p(n, n);
  for (long x = 0; x < n; ++x) {
    const json& row = rows[x];
    if (!row.is_array() || static_cast<long>(row.size()) != n) {
      throw ParseError("row " + std::to_string(x) + " of \"p\" does not have " +
                       std::to_string(n) + " entries");
    }
    for (long y = 0; y < n; ++y) {
      if (!row[y].is_number()) {
        throw ParseError("entry p[" + std::to_string(x) + "][" + std::to_string(y) +
                         "] is not a number");
      }
      p(x, y) = row[y].get<double>();
    }
  }
  return p;
}

std::vector<std::string> parse_labels(const json& doc, long n) {
  std::vector<std::string> labels;
  if (!doc.contains("labels")) {
    return labels;
  }
  const json& arr = doc["labels"];
  if (!arr.is_array() || static_cast<long>(arr.size()) != n) {
    throw ParseError("\"labels\" must be an array of " + std::to_string(n) + " strings");
  }
  for (long i = 0; i < n; ++i) {
    if (!arr[i].is_string()) {
      throw ParseError("label " + std::to_string(i) + " is not a string");
    }
    labels.push_back(arr[i].get<std::string>());
  }
  return labels;
}

}  // namespace

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

MarkovChain parse_chain_text(const std::string& text, const ChainFileOptions& options) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  Eigen::MatrixXd p = parse_matrix(doc);
  std::vector<std::string> labels = parse_labels(doc, p.rows());
  if (options.normalize_rows) {
    for (long x = 0; x < p.rows(); ++x) {
      const double sum = p.row(x).sum();
      if (sum > 0.0 && std::abs(sum - 1.0) <= 1e-6) {
        p.row(x) /= sum;
      }
    }
  }
  return MarkovChain(std::move(p), std::move(labels));
}

MarkovChain read_chain_file(const std::string& path, const ChainFileOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open chain file: " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_chain_text(buffer.str(), options);
}

std::string chain_to_text(const MarkovChain& chain) {
  const int n = chain.size();
  // Numbers are emitted through format_full so files round-trip bit-exactly.
  std::ostringstream out;
  out << "{\n  \"n\": " << n << ",\n  \"p\": [\n";
  for (int x = 0; x < n; ++x) {
    out << "    [";
    for (int y = 0; y < n; ++y) {
      out << format_full(chain.prob(x, y));
      if (y + 1 < n) out << ", ";
    }
    out << (x + 1 < n ? "],\n" : "]\n");
  }
  out << "  ]";
  if (!chain.labels().empty()) {
    out << ",\n  \"labels\": [";
    for (int i = 0; i < n; ++i) {
      out << json(chain.labels()[i]).dump();
      if (i + 1 < n) out << ", ";
    }
    out << "]";
  }
  out << "\n}\n";
  return out.str();
}

}  // namespace walkmix
