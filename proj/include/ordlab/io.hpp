#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ordlab/dist.hpp"
#include "ordlab/fluct.hpp"
#include "ordlab/poset.hpp"

namespace ordlab::io {

using nlohmann::json;

/// Float value plus the exact reading when every entry was written as a
/// rational string ("a/b") or decimal literal.
struct ParsedDist {
  Dist value;
  std::optional<RatDist> exact;
};

/// Distributions are JSON arrays of numbers or rational strings.
ParsedDist parse_dist(const json& node, const std::string& where);
ScoreVector parse_scores(const json& node, const std::string& where);

/// {"n": int, "pairs": [[i,j],...], "labels": [...] optional}
poset::FinitePreorder parse_poset(const json& node, const std::string& where);

struct ParsedChain {
  fluct::MarkovChainSpec chain;
  std::optional<fluct::RatChainSpec> exact;
};

/// {"p0": [...], "mats": [[[row], ...], ...]}
ParsedChain parse_chain(const json& node, const std::string& where);

json load_json_file(const std::string& path);
ParsedDist load_dist_file(const std::string& path);
ScoreVector load_scores_file(const std::string& path);
poset::FinitePreorder load_poset_file(const std::string& path);
ParsedChain load_chain_file(const std::string& path);

/// One real per line; blank lines and lines starting with '#' are skipped.
std::vector<double> load_samples_csv(const std::string& path);

json dist_to_json(const Dist& p);
json rat_dist_to_json(const RatDist& p);
json poset_to_json(const poset::FinitePreorder& p);

/// Renders a table as CSV: header row then data rows; fields are written
/// with shortest round-trip formatting.
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows);

std::string format_double(double v);

}  // namespace ordlab::io
