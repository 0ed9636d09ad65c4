#include "ordlab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace ordlab::io {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& message) {
  fail(ErrorKind::ParseError, where + ": " + message);
}

double entry_to_double(const json& node, const std::string& where, bool* exact) {
  if (node.is_number()) {
    if (exact != nullptr) *exact = false;
    return node.get<double>();
  }
  if (node.is_string()) {
    return to_double(rational_from_string(node.get<std::string>()));
  }
  parse_fail(where, "expected a number or rational string");
}

Rational entry_to_rational(const json& node, const std::string& where) {
  if (node.is_string()) return rational_from_string(node.get<std::string>());
  if (node.is_number_integer()) return Rational(node.get<long long>());
  parse_fail(where, "expected a rational string");
}

}  // namespace

ParsedDist parse_dist(const json& node, const std::string& where) {
  if (!node.is_array() || node.empty()) {
    parse_fail(where, "expected a nonempty array");
  }
  bool all_exact = true;
  std::vector<double> values;
  for (std::size_t i = 0; i < node.size(); ++i) {
    bool exact = true;
    values.push_back(entry_to_double(node[i], where + "[" + std::to_string(i) + "]", &exact));
    all_exact = all_exact && exact;
  }
  ParsedDist out{Dist::from_raw(values), std::nullopt};
  if (all_exact) {
    std::vector<Rational> rats;
    for (std::size_t i = 0; i < node.size(); ++i) {
      rats.push_back(entry_to_rational(node[i], where));
    }
    out.exact = RatDist::from_raw(std::move(rats));
  }
  return out;
}

ScoreVector parse_scores(const json& node, const std::string& where) {
  if (!node.is_array() || node.empty()) {
    parse_fail(where, "expected a nonempty array");
  }
  std::vector<double> values;
  for (std::size_t i = 0; i < node.size(); ++i) {
    values.push_back(entry_to_double(node[i], where + "[" + std::to_string(i) + "]", nullptr));
  }
  return ScoreVector::from_raw(std::move(values));
}

poset::FinitePreorder parse_poset(const json& node, const std::string& where) {
  if (!node.is_object() || !node.contains("n") || !node["n"].is_number_unsigned()) {
    parse_fail(where, "expected an object with \"n\"");
  }
  const std::size_t n = node["n"].get<std::size_t>();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (node.contains("pairs")) {
    if (!node["pairs"].is_array()) parse_fail(where, "\"pairs\" must be an array");
    for (std::size_t k = 0; k < node["pairs"].size(); ++k) {
      const auto& pair = node["pairs"][k];
      if (!pair.is_array() || pair.size() != 2) {
        parse_fail(where, "pairs[" + std::to_string(k) + "] must be [i, j]");
      }
      pairs.emplace_back(pair[0].get<std::size_t>(), pair[1].get<std::size_t>());
    }
  }
  try {
    return poset::FinitePreorder::from_relation(n, pairs);
  } catch (const Error& e) {
    parse_fail(where, e.what());
  }
}

ParsedChain parse_chain(const json& node, const std::string& where) {
  if (!node.is_object() || !node.contains("p0") || !node.contains("mats")) {
    parse_fail(where, "expected an object with \"p0\" and \"mats\"");
  }
  const ParsedDist p0 = parse_dist(node["p0"], where + ".p0");
  if (!node["mats"].is_array()) parse_fail(where, "\"mats\" must be an array");
  ParsedChain out{{p0.value, {}}, std::nullopt};
  bool all_exact = p0.exact.has_value();
  std::vector<fluct::RatTransitionMatrix> exact_mats;
  for (std::size_t k = 0; k < node["mats"].size(); ++k) {
    const std::string mat_where = where + ".mats[" + std::to_string(k) + "]";
    const auto& mat = node["mats"][k];
    if (!mat.is_array() || mat.empty()) parse_fail(mat_where, "expected a matrix");
    std::vector<std::vector<double>> rows;
    bool exact_mat = true;
    std::vector<Rational> rat_entries;
    const std::size_t n = mat.size();
    for (std::size_t x = 0; x < n; ++x) {
      if (!mat[x].is_array() || mat[x].size() != n) {
        parse_fail(mat_where, "row " + std::to_string(x) + " has the wrong length");
      }
      std::vector<double> row;
      for (std::size_t y = 0; y < n; ++y) {
        bool exact = true;
        row.push_back(entry_to_double(
            mat[x][y], mat_where + "[" + std::to_string(x) + "][" + std::to_string(y) + "]",
            &exact));
        exact_mat = exact_mat && exact;
      }
      rows.push_back(std::move(row));
    }
    try {
      out.chain.mats.push_back(fluct::TransitionMatrix::from_rows(std::move(rows)));
    } catch (const Error& e) {
      parse_fail(mat_where, e.what());
    }
    if (exact_mat && all_exact) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          rat_entries.push_back(entry_to_rational(mat[x][y], mat_where));
        }
      }
      try {
        exact_mats.push_back(fluct::rat_matrix(n, std::move(rat_entries)));
        rat_entries.clear();
      } catch (const Error& e) {
        parse_fail(mat_where, e.what());
      }
    } else {
      all_exact = false;
    }
  }
  if (all_exact) {
    out.exact = fluct::RatChainSpec{*p0.exact, std::move(exact_mats)};
  }
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, path + ": cannot open file");
  json node;
  try {
    in >> node;
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
  return node;
}

ParsedDist load_dist_file(const std::string& path) {
  return parse_dist(load_json_file(path), path);
}

ScoreVector load_scores_file(const std::string& path) {
  return parse_scores(load_json_file(path), path);
}

poset::FinitePreorder load_poset_file(const std::string& path) {
  return parse_poset(load_json_file(path), path);
}

ParsedChain load_chain_file(const std::string& path) {
  return parse_chain(load_json_file(path), path);
}

std::vector<double> load_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, path + ": cannot open file");
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    try {
      out.push_back(std::stod(line));
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, path + ":" + std::to_string(lineno) + ": not a number");
    }
  }
  return out;
}

json dist_to_json(const Dist& p) { return json(p.probs()); }

json rat_dist_to_json(const RatDist& p) {
  json out = json::array();
  for (std::size_t i = 0; i < p.size(); ++i) out.push_back(to_string(p[i]));
  return out;
}

json poset_to_json(const poset::FinitePreorder& p) {
  json pairs = json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (i != j && p.leq(i, j)) pairs.push_back({i, j});
    }
  }
  return json{{"n", p.size()}, {"pairs", pairs}};
}

std::string format_double(double v) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, end);
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_double(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace ordlab::io
