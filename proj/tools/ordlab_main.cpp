// ordlab: order-theoretic decision-making toolkit. Subcommands mirror the
// library modules; all results print as {"result": ..., "meta": ...} JSON or
// as headered CSV where the output is tabular.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ordlab/domain.hpp"
#include "ordlab/fluct.hpp"
#include "ordlab/io.hpp"
#include "ordlab/majorization.hpp"
#include "ordlab/maxent.hpp"
#include "ordlab/poset.hpp"
#include "ordlab/rng.hpp"

using namespace ordlab;
using nlohmann::json;

namespace {

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string emit = "json";
  unsigned jobs = 0;  // 0: take ORDLAB_JOBS or 1
};

unsigned effective_jobs(const GlobalOptions& options) {
  if (options.jobs > 0) return options.jobs;
  if (const char* env = std::getenv("ORDLAB_JOBS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed > 0) return static_cast<unsigned>(parsed);
  }
  return 1;
}

void emit_json(const GlobalOptions& options, json result) {
  const json payload = {
      {"result", std::move(result)},
      {"meta", {{"seed", options.seed}, {"version", ORDLAB_VERSION}}},
  };
  std::cout << payload.dump(2) << '\n';
}

void emit_table(const GlobalOptions& options, const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& rows, const char* rows_key) {
  if (options.emit == "csv") {
    std::cout << io::to_csv(header, rows);
    return;
  }
  json table = json::array();
  for (const auto& row : rows) {
    json entry;
    for (std::size_t i = 0; i < header.size(); ++i) entry[header[i]] = row[i];
    table.push_back(std::move(entry));
  }
  emit_json(options, json{{rows_key, std::move(table)}});
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t next = text.find(',', pos);
    const std::string field = text.substr(pos, next == std::string::npos ? next : next - pos);
    if (!field.empty()) out.push_back(std::stoul(field));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

domain::RationalInterval parse_interval(const std::string& text) {
  const auto comma = text.find(',');
  require(comma != std::string::npos, ErrorKind::ParseError,
          "interval must be \"lo,hi\": " + text);
  return domain::RationalInterval::make(rational_from_string(text.substr(0, comma)),
                                        rational_from_string(text.substr(comma + 1)));
}

domain::CantorWord parse_word(const std::string& text) {
  return domain::CantorWord::parse(text);
}

json interval_to_json(const domain::RationalInterval& interval) {
  return json{{"lo", to_string(interval.lo)}, {"hi", to_string(interval.hi)}};
}

poset::RealFamily parse_family(const json& node, const std::string& where) {
  require(node.is_array(), ErrorKind::ParseError, where + ": expected an array of arrays");
  poset::RealFamily family;
  for (const auto& f : node) {
    family.push_back(f.get<std::vector<double>>());
  }
  return family;
}

majo::Order parse_order(const std::string& name, const std::string& d_file) {
  if (name == "u") return majo::Order::u();
  if (name == "m") return majo::Order::m();
  if (name == "d") {
    require(!d_file.empty(), ErrorKind::ParseError, "--order d needs --d FILE");
    const auto parsed = io::load_dist_file(d_file);
    return majo::Order::relative(parsed.exact.value_or(snap_dist(parsed.value)));
  }
  fail(ErrorKind::ParseError, "unknown order '" + name + "' (use u, m, or d)");
}

// --- subcommand registration ---

void add_dist_commands(CLI::App& app, GlobalOptions& options) {
  auto* dist = app.add_subcommand("dist", "distribution primitives");
  dist->require_subcommand(1);

  static std::string input;
  auto* check = dist->add_subcommand("new", "validate a distribution file");
  check->add_option("input", input)->required();
  check->callback([&options] {
    const auto parsed = io::load_dist_file(input);
    json result = {{"dist", io::dist_to_json(parsed.value)},
                   {"exact", parsed.exact.has_value()}};
    if (parsed.exact) result["exact_dist"] = io::rat_dist_to_json(*parsed.exact);
    emit_json(options, result);
  });

  auto* sort = dist->add_subcommand("sort", "non-increasing rearrangement");
  sort->add_option("input", input)->required();
  sort->callback([&options] {
    emit_json(options,
              json{{"dist", io::dist_to_json(sorted_desc(io::load_dist_file(input).value))}});
  });

  auto* partials = dist->add_subcommand("partials", "partial-sum utilities u_i");
  partials->add_option("input", input)->required();
  partials->callback([&options] {
    emit_json(options, json{{"u", partial_sum_utilities(io::load_dist_file(input).value)}});
  });

  auto* entropy = dist->add_subcommand("entropy", "Shannon entropy in nats");
  entropy->add_option("input", input)->required();
  entropy->callback([&options] {
    emit_json(options, json{{"H", shannon_entropy(io::load_dist_file(input).value)}});
  });

  static double beta = 1.0;
  static std::string scores;
  auto* gibbs = dist->add_subcommand("boltzmann", "p* prop exp(beta U)");
  gibbs->add_option("--scores", scores)->required();
  gibbs->add_option("--beta", beta)->required();
  gibbs->callback([&options] {
    emit_json(options, json{{"dist", io::dist_to_json(boltzmann(
                                         io::load_scores_file(scores), beta))}});
  });
}

void add_majo_commands(CLI::App& app, GlobalOptions& options) {
  auto* majo_cmd = app.add_subcommand("majo", "majorization and d-majorization");
  majo_cmd->require_subcommand(1);

  static std::string order_name = "m", d_file, p_file, q_file, batch_file;
  auto* compare = majo_cmd->add_subcommand("compare", "order verdict for p vs q");
  compare->add_option("--order", order_name, "u, m, or d");
  compare->add_option("--d", d_file);
  compare->add_option("--batch", batch_file, "CSV with 2n values per row");
  compare->add_option("p", p_file);
  compare->add_option("q", q_file);
  compare->callback([&options] {
    const majo::Order order = parse_order(order_name, d_file);
    if (!batch_file.empty()) {
      std::ifstream in(batch_file);
      require(static_cast<bool>(in), ErrorKind::ParseError, batch_file + ": cannot open");
      std::string line;
      std::vector<std::string> verdicts;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> values;
        std::size_t pos = 0;
        while (pos < line.size()) {
          const auto comma = line.find(',', pos);
          values.push_back(std::stod(line.substr(pos, comma - pos)));
          if (comma == std::string::npos) break;
          pos = comma + 1;
        }
        require(values.size() % 2 == 0, ErrorKind::ParseError,
                batch_file + ": rows need 2n values");
        const std::size_t n = values.size() / 2;
        const Dist p = Dist::from_raw({values.begin(), values.begin() + n});
        const Dist q = Dist::from_raw({values.begin() + n, values.end()});
        verdicts.push_back(majo::verdict_name(majo::compare(p, q, order)));
      }
      if (options.emit == "csv") {
        std::cout << "verdict\n";
        for (const auto& v : verdicts) std::cout << v << '\n';
      } else {
        emit_json(options, json{{"verdicts", verdicts}});
      }
      return;
    }
    require(!p_file.empty() && !q_file.empty(), ErrorKind::ParseError,
            "compare needs p and q files (or --batch)");
    const Dist p = io::load_dist_file(p_file).value;
    const Dist q = io::load_dist_file(q_file).value;
    emit_json(options, json{{"verdict", majo::verdict_name(majo::compare(p, q, order))}});
  });

  static std::size_t max_steps = 64;
  auto* path = majo_cmd->add_subcommand("transfer-path", "Pigou-Dalton synthesis");
  path->add_option("p", p_file)->required();
  path->add_option("q", q_file)->required();
  path->add_option("--max-steps", max_steps);
  path->callback([&options] {
    const auto steps = majo::pigou_dalton_path(io::load_dist_file(p_file).value,
                                               io::load_dist_file(q_file).value, max_steps);
    if (!steps) {
      emit_json(options, json{{"related", false}});
      return;
    }
    json list = json::array();
    for (const auto& step : *steps) {
      list.push_back({{"from", step.from_index}, {"to", step.to_index}, {"mass", step.mass}});
    }
    emit_json(options, json{{"related", true}, {"steps", std::move(list)}});
  });

  auto* embed = majo_cmd->add_subcommand("embed", "Lambda_d cell-splitting embedding");
  embed->add_option("--d", d_file)->required();
  embed->add_option("p", p_file)->required();
  embed->callback([&options] {
    const auto d = io::load_dist_file(d_file);
    const auto p = io::load_dist_file(p_file);
    const RatDist rd = d.exact.value_or(snap_dist(d.value));
    if (p.exact) {
      emit_json(options,
                json{{"dist", io::rat_dist_to_json(majo::lambda_d_embed(*p.exact, rd))}});
    } else {
      emit_json(options,
                json{{"dist", io::dist_to_json(majo::lambda_d_embed(p.value, d.value))}});
    }
  });

  auto* oracle = majo_cmd->add_subcommand("oracle", "stochastic-matrix feasibility oracle");
  oracle->add_option("--d", d_file)->required();
  oracle->add_option("p", p_file)->required();
  oracle->add_option("q", q_file)->required();
  oracle->callback([&options] {
    const auto load_exact = [](const std::string& file) {
      const auto parsed = io::load_dist_file(file);
      return parsed.exact.value_or(snap_dist(parsed.value));
    };
    const RatDist p = load_exact(p_file);
    const RatDist q = load_exact(q_file);
    const RatDist d = load_exact(d_file);
    emit_json(options, json{{"feasible", majo::d_majorization_oracle(p, q, d)},
                            {"embedding_route", majo::d_majorization_leq(p, q, d)}});
  });

  static std::string family_name = "topsums", pairs_file;
  static std::size_t rational_count = 20;
  auto* laws = majo_cmd->add_subcommand("second-laws", "family-of-second-laws check");
  laws->add_option("--family", family_name, "topsums, entropy, or ui-rh");
  laws->add_option("--rationals", rational_count);
  laws->add_option("--order", order_name, "u, m, or d");
  laws->add_option("--d", d_file);
  laws->add_option("--pairs", pairs_file)->required();
  laws->callback([&options] {
    const json node = io::load_json_file(pairs_file);
    require(node.is_array(), ErrorKind::ParseError, pairs_file + ": expected [[p, q], ...]");
    std::vector<std::pair<Dist, Dist>> pairs;
    std::size_t n = 0;
    for (const auto& entry : node) {
      require(entry.is_array() && entry.size() == 2, ErrorKind::ParseError,
              pairs_file + ": expected [[p, q], ...]");
      pairs.emplace_back(io::parse_dist(entry[0], pairs_file).value,
                         io::parse_dist(entry[1], pairs_file).value);
      n = pairs.back().first.size();
    }
    std::vector<majo::ScalarFn> family;
    if (family_name == "topsums") {
      for (std::size_t i = 0; i + 1 < n; ++i) {
        family.push_back([i](const Dist& p) { return top_sums(p)[i]; });
      }
    } else if (family_name == "entropy") {
      family.push_back([](const Dist& p) { return shannon_entropy(p); });
    } else if (family_name == "ui-rh") {
      family = majo::ui_plus_rh_family(n, majo::positive_rationals(rational_count));
    } else {
      fail(ErrorKind::ParseError, "unknown family '" + family_name + "'");
    }
    const auto report =
        majo::check_second_laws_family(family, pairs, parse_order(order_name, d_file));
    json violations = json::array();
    for (const auto& v : report.violations) {
      violations.push_back({{"pair", v.pair_index},
                            {"clause", v.clause},
                            {"verdict", majo::verdict_name(v.verdict)},
                            {"detail", v.detail}});
    }
    emit_json(options, json{{"ok", report.ok()},
                            {"pairs_checked", report.pairs_checked},
                            {"violations", std::move(violations)}});
  });
}

void add_poset_commands(CLI::App& app, GlobalOptions& options) {
  auto* cmd = app.add_subcommand("poset", "finite preorders and partial orders");
  cmd->require_subcommand(1);

  static std::string input, aux_file, subset_text, mode_name = "mu";
  static double radix = 0.25;
  static std::size_t max_k = 4;

  auto* closure = cmd->add_subcommand("closure", "reflexive-transitive closure");
  closure->add_option("input", input)->required();
  closure->callback([&options] {
    emit_json(options, io::poset_to_json(io::load_poset_file(input)));
  });

  auto* dim = cmd->add_subcommand("dim", "Dushnik-Miller dimension");
  dim->add_option("input", input)->required();
  dim->add_option("--max-k", max_k);
  dim->callback([&options] {
    const auto value = poset::dm_dimension(io::load_poset_file(input), max_k);
    emit_json(options, value ? json{{"dimension", *value}}
                             : json{{"dimension", "unknown"}, {"max_k", max_k}});
  });

  auto* extend = cmd->add_subcommand("extend", "linear extension guided by a monotone");
  extend->add_option("input", input)->required();
  extend->add_option("--u", aux_file)->required();
  extend->callback([&options] {
    const auto u = io::load_json_file(aux_file).get<std::vector<double>>();
    emit_json(options, json{{"extension",
                             poset::linear_extension_by_monotone(
                                 io::load_poset_file(input), u)}});
  });

  auto* classify = cmd->add_subcommand("classify", "monotone / strict / injective flags");
  classify->add_option("input", input)->required();
  classify->add_option("--f", aux_file)->required();
  classify->callback([&options] {
    const auto f = io::load_json_file(aux_file).get<std::vector<double>>();
    const auto flags = poset::classify_monotone(io::load_poset_file(input), f);
    emit_json(options, json{{"monotone", flags.monotone},
                            {"strict_monotone", flags.strict_monotone},
                            {"injective_monotone", flags.injective_monotone}});
  });

  auto* check = cmd->add_subcommand("check", "multi-utility and thermo checks");
  check->add_option("input", input)->required();
  check->add_option("--family", aux_file)->required();
  check->add_option("--mode", mode_name, "mu, smu, or thermo");
  check->callback([&options] {
    const auto p = io::load_poset_file(input);
    const json node = io::load_json_file(aux_file);
    if (mode_name == "thermo") {
      auto conserved = parse_family(node.at("g"), aux_file);
      const auto entropy = node.at("s").get<std::vector<double>>();
      const bool ok = poset::is_thermo_representation(p, conserved, entropy);
      json result = {{"ok", ok}};
      if (ok) {
        result["multi_utility"] = poset::thermo_to_multi_utility(p, conserved, entropy);
      }
      emit_json(options, result);
      return;
    }
    const auto family = parse_family(node, aux_file);
    const bool ok = mode_name == "smu" ? poset::is_strict_monotone_multi_utility(p, family)
                                       : poset::is_multi_utility(p, family);
    emit_json(options, json{{"ok", ok}});
  });

  auto* from_sets = cmd->add_subcommand("from-sets", "monotone from increasing sets");
  from_sets->add_option("input", input)->required();
  from_sets->add_option("--sets", aux_file)->required();
  from_sets->add_option("--r", radix);
  from_sets->callback([&options] {
    const auto sets =
        io::load_json_file(aux_file).get<std::vector<std::vector<std::size_t>>>();
    const auto p = io::load_poset_file(input);
    emit_json(options, json{{"valid_family", poset::increasing_family_valid(p, sets)},
                            {"f", poset::monotone_from_increasing_sets(p, sets, radix)}});
  });

  auto* separation = cmd->add_subcommand("separation", "increasing-set separation check");
  separation->add_option("input", input)->required();
  separation->add_option("--sets", aux_file)->required();
  separation->add_option("--mode", mode_name, "mu, strict, or injective");
  separation->callback([&options] {
    const auto sets =
        io::load_json_file(aux_file).get<std::vector<std::vector<std::size_t>>>();
    const auto mode = mode_name == "strict" ? poset::SeparationMode::Strict
                      : mode_name == "injective" ? poset::SeparationMode::Injective
                                                 : poset::SeparationMode::MultiUtility;
    emit_json(options,
              json{{"ok", poset::separation_check(io::load_poset_file(input), sets, mode)}});
  });

  auto* density = cmd->add_subcommand("density", "order-density check");
  density->add_option("input", input)->required();
  density->add_option("--subset", subset_text);
  density->add_option("--mode", mode_name, "order, debreu, upper, or debreu-upper");
  density->callback([&options] {
    const auto mode = mode_name == "order" ? poset::DensityMode::OrderDense
                      : mode_name == "upper" ? poset::DensityMode::UpperDense
                      : mode_name == "debreu-upper" ? poset::DensityMode::DebreuUpperDense
                                                    : poset::DensityMode::DebreuDense;
    emit_json(options, json{{"ok", poset::density_check(io::load_poset_file(input),
                                                        parse_index_list(subset_text), mode)}});
  });

  auto* connected = cmd->add_subcommand("cond-connected", "conditional connectedness");
  connected->add_option("input", input)->required();
  connected->callback([&options] {
    emit_json(options,
              json{{"ok", poset::is_conditionally_connected(io::load_poset_file(input))}});
  });

  auto* realizer = cmd->add_subcommand("realizer", "validate a realizer");
  realizer->add_option("input", input)->required();
  realizer->add_option("--extensions", aux_file)->required();
  realizer->callback([&options] {
    const poset::Realizer r{
        io::load_json_file(aux_file).get<std::vector<std::vector<std::size_t>>>()};
    emit_json(options, json{{"ok", poset::realizer_is_valid(io::load_poset_file(input), r)}});
  });

  auto* realizer_mu = cmd->add_subcommand("realizer-mu", "multi-utility from a realizer");
  realizer_mu->add_option("input", input)->required();
  realizer_mu->add_option("--extensions", aux_file)->required();
  realizer_mu->callback([&options] {
    const poset::Realizer r{
        io::load_json_file(aux_file).get<std::vector<std::vector<std::size_t>>>()};
    emit_json(options, json{{"family", poset::multi_utility_from_realizer(
                                           io::load_poset_file(input), r)}});
  });

  auto* limit = cmd->add_subcommand("limit", "limit of a relation sequence");
  limit->add_option("input", input, "{\"n\": n, \"relations\": [[[i,j],...], ...]}")
      ->required();
  limit->callback([&options] {
    const json node = io::load_json_file(input);
    const std::size_t n = node.at("n").get<std::size_t>();
    std::vector<poset::BinaryRelation> sequence;
    for (const auto& rel_pairs : node.at("relations")) {
      poset::BinaryRelation rel = poset::BinaryRelation::empty(n);
      for (const auto& pair : rel_pairs) {
        rel.set(pair[0].get<std::size_t>(), pair[1].get<std::size_t>());
      }
      sequence.push_back(std::move(rel));
    }
    const auto lim = poset::limit_of_relations(sequence);
    json pairs = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (lim.at(i, j)) pairs.push_back({i, j});
      }
    }
    emit_json(options, json{{"n", n}, {"pairs", std::move(pairs)}});
  });

  auto* opt = cmd->add_subcommand("opt-check", "optimization-principle subset sweep");
  opt->add_option("input", input)->required();
  opt->add_option("--f", aux_file)->required();
  opt->callback([&options] {
    const auto f = io::load_json_file(aux_file).get<std::vector<double>>();
    emit_json(options, json{{"ok", poset::optimization_principle_check(
                                       io::load_poset_file(input), f)}});
  });

  auto* maximal = cmd->add_subcommand("maximal", "maximal elements of a subset");
  maximal->add_option("input", input)->required();
  maximal->add_option("--subset", subset_text)->required();
  maximal->callback([&options] {
    emit_json(options, json{{"maximal", poset::maximal_elements(
                                            io::load_poset_file(input),
                                            parse_index_list(subset_text))}});
  });
}

void add_maxent_commands(CLI::App& app, GlobalOptions& options) {
  auto* cmd = app.add_subcommand("maxent", "maximum-entropy solvers");
  cmd->require_subcommand(1);

  static std::string energy_file, utility_file;
  static double target = 0.0, tol = maxent::kDefaultMomentTol;
  static double entropy_floor = -1.0, utility_floor = 0.0;
  static std::size_t grid = 3001;

  auto* solve = cmd->add_subcommand("solve", "entropy maximizer on <E> = target");
  solve->add_option("--E", energy_file)->required();
  solve->add_option("--target", target)->required();
  solve->add_option("--tol", tol);
  solve->callback([&options] {
    const auto solution = maxent::solve_maxent({io::load_scores_file(energy_file), target}, tol);
    emit_json(options, json{{"p", io::dist_to_json(solution.p)},
                            {"beta", solution.beta},
                            {"H", shannon_entropy(solution.p)}});
  });

  auto* bounded = cmd->add_subcommand("bounded", "bounded-rational Boltzmann solver");
  bounded->add_option("--U", utility_file)->required();
  auto* hf = bounded->add_option("--entropy-floor", entropy_floor);
  auto* uf = bounded->add_option("--utility-floor", utility_floor);
  bounded->callback([&options, hf, uf] {
    require(hf->count() + uf->count() == 1, ErrorKind::ParseError,
            "give exactly one of --entropy-floor / --utility-floor");
    const auto bound = hf->count() ? maxent::Bound::entropy_floor(entropy_floor)
                                   : maxent::Bound::utility_floor(utility_floor);
    const auto solution = maxent::solve_bounded_rational(
        io::load_scores_file(utility_file), bound, tol);
    emit_json(options, json{{"p", io::dist_to_json(solution.p)}, {"beta", solution.beta}});
  });

  auto* segment = cmd->add_subcommand("maximal-segment", "grid scan of the constraint slice");
  segment->add_option("--E", energy_file)->required();
  segment->add_option("--target", target)->required();
  segment->add_option("--grid", grid);
  segment->callback([&options] {
    const auto energy = io::load_scores_file(energy_file);
    const auto maximal = maxent::maximal_on_segment(energy, target, grid);
    std::vector<std::string> header;
    for (std::size_t i = 0; i < energy.size(); ++i) header.push_back("p" + std::to_string(i));
    header.push_back("H");
    std::vector<std::vector<double>> rows;
    for (const Dist& p : maximal) {
      std::vector<double> row = p.probs();
      row.push_back(shannon_entropy(p));
      rows.push_back(std::move(row));
    }
    emit_table(options, header, rows, "maximal");
  });
}

void add_fluct_commands(CLI::App& app, GlobalOptions& options) {
  auto* cmd = app.add_subcommand("fluct", "Markov chains and fluctuation theorems");
  cmd->require_subcommand(1);

  static std::string chain_file, aux_file, backward_file, path_text, kind_name = "quad";
  static double beta = 1.0, level = 0.99, at_value = 0.0, param = 0.0, delta_f = 0.0,
                peak = 8.0;
  static std::size_t count = 10000, resamples = 1000, grid = 101, trials = 26, states = 13,
                     trial_index = 0;
  static bool use_mc = false, use_exact = false, backward = false;
  static std::string stat_name = "mean";
  static std::optional<double> bandwidth;
  static double bandwidth_value = 0.0;

  auto* inspect = cmd->add_subcommand("inspect", "stationary + balance report");
  inspect->add_option("chain", chain_file)->required();
  inspect->callback([&options] {
    const auto spec = io::load_chain_file(chain_file).chain;
    json mats = json::array();
    for (const auto& m : spec.mats) {
      json entry = {{"irreducible", fluct::is_irreducible(m)}};
      if (fluct::is_irreducible(m)) {
        const Dist p = fluct::stationary_dist(m);
        entry["stationary"] = io::dist_to_json(p);
        entry["detailed_balance"] = fluct::satisfies_detailed_balance(m, p);
      }
      mats.push_back(std::move(entry));
    }
    emit_json(options, json{{"p0", io::dist_to_json(spec.p0)}, {"mats", std::move(mats)}});
  });

  auto* energies = cmd->add_subcommand("energies", "Z = 1 gauge energy family");
  energies->add_option("chain", chain_file)->required();
  energies->add_option("--beta", beta);
  energies->callback([&options] {
    const auto family =
        fluct::energy_family_from_chain(io::load_chain_file(chain_file).chain, beta);
    emit_json(options, json{{"beta", family.beta},
                            {"energies", family.energies},
                            {"delta_F", fluct::delta_F(family)}});
  });

  auto* work = cmd->add_subcommand("work", "work of one path");
  work->add_option("chain", chain_file)->required();
  work->add_option("--beta", beta);
  work->add_option("--path", path_text)->required();
  work->callback([&options] {
    const auto spec = io::load_chain_file(chain_file).chain;
    const auto family = fluct::energy_family_from_chain(spec, beta);
    emit_json(options,
              json{{"W", fluct::work_of_path(parse_index_list(path_text), family)}});
  });

  auto* dist_cmd = cmd->add_subcommand("work-dist", "exact work distribution");
  dist_cmd->add_option("chain", chain_file)->required();
  dist_cmd->add_option("--beta", beta);
  dist_cmd->add_flag("--backward", backward);
  dist_cmd->callback([&options] {
    const auto spec = io::load_chain_file(chain_file).chain;
    const auto family = fluct::energy_family_from_chain(spec, beta);
    const auto dist = fluct::exact_work_distribution(
        spec, family, backward ? fluct::Direction::Backward : fluct::Direction::Forward);
    std::vector<std::vector<double>> rows;
    for (const auto& [w, p] : dist.support) rows.push_back({w, p});
    emit_table(options, {"w", "prob"}, rows, "support");
  });

  auto* jarz = cmd->add_subcommand("jarzynski", "E[exp(-beta (W - dF))]");
  jarz->add_option("chain", chain_file)->required();
  jarz->add_option("--beta", beta);
  jarz->add_flag("--exact", use_exact);
  jarz->add_flag("--mc", use_mc);
  jarz->add_option("--count", count);
  jarz->callback([&options] {
    const auto parsed = io::load_chain_file(chain_file);
    const auto family = fluct::energy_family_from_chain(parsed.chain, beta);
    json result;
    if (use_mc) {
      result["estimate"] = fluct::jarzynski_mc(parsed.chain, family, count, options.seed,
                                               effective_jobs(options));
      result["count"] = count;
    } else {
      result["value"] = fluct::jarzynski_exact(parsed.chain, family);
      if (parsed.exact) {
        result["exact"] = to_string(fluct::jarzynski_exact(*parsed.exact));
      }
    }
    emit_json(options, result);
  });

  auto* crooks = cmd->add_subcommand("crooks", "Crooks identity at every support point");
  crooks->add_option("chain", chain_file)->required();
  crooks->add_option("--beta", beta);
  crooks->add_flag("--exact", use_exact);
  crooks->callback([&options] {
    const auto parsed = io::load_chain_file(chain_file);
    const auto family = fluct::energy_family_from_chain(parsed.chain, beta);
    const auto report = fluct::crooks_check(parsed.chain, family);
    std::vector<std::vector<double>> rows;
    for (const auto& point : report.points) {
      rows.push_back({point.w, point.log_ratio, point.beta_gap,
                      std::abs(point.log_ratio - point.beta_gap)});
    }
    if (options.emit == "csv") {
      std::cout << io::to_csv({"w", "lhs", "rhs", "gap"}, rows);
      return;
    }
    json result = {{"max_gap", report.max_gap}};
    json points = json::array();
    for (const auto& row : rows) {
      points.push_back({{"w", row[0]}, {"lhs", row[1]}, {"rhs", row[2]}, {"gap", row[3]}});
    }
    result["points"] = std::move(points);
    if (parsed.exact) result["exact_identity"] = fluct::crooks_exact_check(*parsed.exact);
    emit_json(options, result);
  });

  auto* metro = cmd->add_subcommand("metropolis", "acceptance matrix for a target");
  metro->add_option("--target", chain_file)->required();
  metro->add_option("--proposal", aux_file)->required();
  metro->callback([&options] {
    const Dist target = io::load_dist_file(chain_file).value;
    const json node = io::load_json_file(aux_file);
    const auto proposal =
        fluct::TransitionMatrix::from_rows(node.get<std::vector<std::vector<double>>>());
    const auto m = fluct::metropolis_matrix(target, proposal);
    std::vector<std::vector<double>> rows(m.size(), std::vector<double>(m.size()));
    for (std::size_t x = 0; x < m.size(); ++x) {
      for (std::size_t y = 0; y < m.size(); ++y) rows[x][y] = m(x, y);
    }
    emit_json(options, json{{"matrix", rows},
                            {"detailed_balance", fluct::satisfies_detailed_balance(
                                                     m, fluct::stationary_dist(m))}});
  });

  auto* sample = cmd->add_subcommand("sample", "path samples");
  sample->add_option("chain", chain_file)->required();
  sample->add_option("--count", count);
  sample->callback([&options] {
    const auto spec = io::load_chain_file(chain_file).chain;
    const auto paths = fluct::sample_paths(spec, count, options.seed, effective_jobs(options));
    if (options.emit == "csv") {
      std::cout << "path\n";
      for (const auto& path : paths) {
        for (std::size_t i = 0; i < path.size(); ++i) std::cout << (i ? " " : "") << path[i];
        std::cout << '\n';
      }
      return;
    }
    emit_json(options, json{{"paths", paths}});
  });

  auto* boot = cmd->add_subcommand("bootstrap", "percentile bootstrap CI");
  boot->add_option("--samples", aux_file)->required();
  boot->add_option("--resamples", resamples);
  boot->add_option("--level", level);
  boot->add_option("--stat", stat_name, "mean or expneg");
  boot->add_option("--beta", beta);
  boot->callback([&options] {
    const auto samples = io::load_samples_csv(aux_file);
    const auto stat = stat_name == "expneg" ? fluct::Statistic::mean_exp_neg(beta)
                                            : fluct::Statistic::mean();
    const auto [lo, hi] = fluct::bootstrap_ci(samples, resamples, level, stat, options.seed);
    emit_json(options, json{{"lo", lo}, {"hi", hi}, {"level", level}});
  });

  auto* kde = cmd->add_subcommand("kde", "Gaussian kernel density");
  kde->add_option("--samples", aux_file)->required();
  auto* bw_opt = kde->add_option("--bandwidth", bandwidth_value);
  kde->add_option("--at", at_value)->required();
  kde->callback([&options, bw_opt] {
    const auto samples = io::load_samples_csv(aux_file);
    bandwidth = bw_opt->count() ? std::optional<double>(bandwidth_value) : std::nullopt;
    const auto rho = fluct::kde_density(samples, bandwidth);
    emit_json(options, json{{"density", rho(at_value)}, {"bandwidth", rho.bandwidth()}});
  });

  auto* curve = cmd->add_subcommand("crooks-curve", "KDE work-relation curve");
  curve->add_option("--forward", aux_file)->required();
  curve->add_option("--backward", backward_file)->required();
  curve->add_option("--beta", beta);
  curve->add_option("--delta-f", delta_f);
  curve->add_option("--grid", grid);
  curve->callback([&options] {
    const auto fw = io::load_samples_csv(aux_file);
    const auto bw = io::load_samples_csv(backward_file);
    const auto points = fluct::crooks_mc_curve(fw, bw, beta, delta_f, grid);
    std::vector<std::vector<double>> rows;
    for (const auto& point : points) rows.push_back({point.w, point.lhs, point.rhs});
    emit_table(options, {"w", "lhs", "rhs"}, rows, "curve");
  });

  auto* loss = cmd->add_subcommand("loss", "sensorimotor loss value");
  loss->add_option("--kind", kind_name, "quad or hat");
  loss->add_option("--param", param, "bias b or width sigma");
  loss->add_option("--theta", aux_file)->required();
  loss->add_option("--trial", trial_index);
  loss->add_option("--at", at_value)->required();
  loss->callback([&options] {
    const auto theta = io::load_json_file(aux_file).get<std::vector<double>>();
    const auto model = kind_name == "hat" ? fluct::LossModel::mexican_hat(param, theta)
                                          : fluct::LossModel::exp_quadratic(param, theta);
    emit_json(options, json{{"E", fluct::loss_energy(model, trial_index, at_value)}});
  });

  auto* simulate = cmd->add_subcommand("simulate", "synthetic adaptation protocol");
  simulate->add_option("--trials", trials);
  simulate->add_option("--peak", peak);
  simulate->add_option("--bias", param);
  simulate->add_option("--beta", beta);
  simulate->add_option("--states", states);
  simulate->add_option("--cycles", count)->default_val(20);
  simulate->add_option("--schedule", aux_file, "JSON array overriding the schedule");
  simulate->add_option("--resamples", resamples);
  simulate->add_option("--level", level);
  simulate->callback([&options] {
    const auto theta = aux_file.empty()
                           ? fluct::triangular_schedule(trials, peak)
                           : io::load_json_file(aux_file).get<std::vector<double>>();
    const fluct::ProtocolConfig config{fluct::LossModel::exp_quadratic(param, theta), beta,
                                       states, -1.5 * peak, 1.5 * peak};
    const auto protocol = fluct::build_protocol(config);
    const unsigned jobs = effective_jobs(options);
    const auto forward = fluct::simulate_works(protocol, fluct::Direction::Forward, count,
                                               options.seed, jobs);
    const auto backward = fluct::simulate_works(protocol, fluct::Direction::Backward, count,
                                                options.seed + 1, jobs);
    const auto ci = fluct::bootstrap_ci(forward, resamples, level,
                                        fluct::Statistic::mean_exp_neg(beta), options.seed);
    if (options.emit == "csv") {
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < forward.size(); ++i) {
        rows.push_back({forward[i], backward[i]});
      }
      std::cout << io::to_csv({"forward_work", "backward_work"}, rows);
      return;
    }
    emit_json(options, json{{"forward_works", forward},
                            {"backward_works", backward},
                            {"jarzynski_ci", {{"lo", ci.first}, {"hi", ci.second}}},
                            {"theta", theta}});
  });
}

void add_domain_commands(CLI::App& app, GlobalOptions& options) {
  auto* cmd = app.add_subcommand("domain", "interval and Cantor domains");
  cmd->require_subcommand(1);

  static std::string a_text, b_text, poly_text, input, subset_text;
  static std::vector<std::string> interval_texts;
  static std::string lo_text = "0", hi_text = "1", eps_text = "1/1024";
  static std::size_t x_index = 0, y_index = 0;
  static std::uint64_t pn = 0, pm = 0, pk = 0;

  auto* leq = cmd->add_subcommand("interval-leq", "reversed inclusion");
  leq->add_option("--a", a_text)->required();
  leq->add_option("--b", b_text)->required();
  leq->callback([&options] {
    emit_json(options,
              json{{"ok", domain::interval_leq(parse_interval(a_text), parse_interval(b_text))}});
  });

  auto* sup = cmd->add_subcommand("interval-sup", "intersection of a directed family");
  sup->add_option("--interval", interval_texts)->required();
  sup->callback([&options] {
    std::vector<domain::RationalInterval> family;
    for (const auto& text : interval_texts) family.push_back(parse_interval(text));
    emit_json(options, interval_to_json(domain::interval_sup(family)));
  });

  auto* wb = cmd->add_subcommand("way-below", "strict interior containment");
  wb->add_option("--a", a_text)->required();
  wb->add_option("--b", b_text)->required();
  wb->callback([&options] {
    emit_json(options, json{{"ok", domain::interval_way_below(parse_interval(a_text),
                                                              parse_interval(b_text))}});
  });

  auto* bisect = cmd->add_subcommand("bisect", "exact bisection trace");
  bisect->add_option("--poly", poly_text, "coefficients, ascending degree")->required();
  bisect->add_option("--lo", lo_text);
  bisect->add_option("--hi", hi_text);
  bisect->add_option("--eps", eps_text);
  bisect->callback([&options] {
    const json coeffs = json::parse(poly_text);
    domain::RatPolynomial poly;
    for (const auto& c : coeffs) {
      poly.coeffs.push_back(c.is_string() ? rational_from_string(c.get<std::string>())
                                          : Rational(c.get<long long>()));
    }
    const auto trace = domain::bisection_run(poly, rational_from_string(lo_text),
                                             rational_from_string(hi_text),
                                             rational_from_string(eps_text));
    json intervals = json::array();
    for (const auto& interval : trace) intervals.push_back(interval_to_json(interval));
    emit_json(options, json{{"trace", std::move(intervals)},
                            {"halvings", trace.size() - 1}});
  });

  auto* cleq = cmd->add_subcommand("cantor-leq", "prefix order");
  cleq->add_option("--x", a_text)->required();
  cleq->add_option("--y", b_text)->required();
  cleq->callback([&options] {
    emit_json(options, json{{"ok", domain::cantor_leq(parse_word(a_text), parse_word(b_text))}});
  });

  auto* csup = cmd->add_subcommand("cantor-sup", "supremum of compatible words");
  csup->add_option("--word", interval_texts)->required();
  csup->callback([&options] {
    std::vector<domain::CantorWord> family;
    for (const auto& text : interval_texts) family.push_back(parse_word(text));
    emit_json(options, json{{"sup", domain::cantor_sup(family).str()}});
  });

  auto* cwb = cmd->add_subcommand("cantor-way-below", "finite-prefix way-below");
  cwb->add_option("--x", a_text)->required();
  cwb->add_option("--y", b_text)->required();
  cwb->callback([&options] {
    emit_json(options, json{{"ok", domain::cantor_way_below(parse_word(a_text),
                                                            parse_word(b_text))}});
  });

  auto* fwb = cmd->add_subcommand("finite-way-below", "directed-subset sweep");
  fwb->add_option("input", input)->required();
  fwb->add_option("--x", x_index)->required();
  fwb->add_option("--y", y_index)->required();
  fwb->callback([&options] {
    const auto d = domain::FiniteDcpo::from_order(io::load_poset_file(input));
    emit_json(options, json{{"ok", domain::finite_way_below(d, x_index, y_index)}});
  });

  auto* opens = cmd->add_subcommand("scott-opens", "all Scott-open sets");
  opens->add_option("input", input)->required();
  opens->callback([&options] {
    const auto d = domain::FiniteDcpo::from_order(io::load_poset_file(input));
    emit_json(options, json{{"opens", domain::scott_opens(d)}});
  });

  auto* topo = cmd->add_subcommand("order-topo", "order-from-opens biconditional");
  topo->add_option("input", input)->required();
  topo->callback([&options] {
    const auto d = domain::FiniteDcpo::from_order(io::load_poset_file(input));
    emit_json(options, json{{"ok", domain::order_from_opens_check(d)}});
  });

  auto* basis = cmd->add_subcommand("weak-basis", "weak-basis check");
  basis->add_option("input", input)->required();
  basis->add_option("--basis", subset_text)->required();
  basis->callback([&options] {
    const auto d = domain::FiniteDcpo::from_order(io::load_poset_file(input));
    emit_json(options,
              json{{"ok", domain::weak_basis_check(d, parse_index_list(subset_text))}});
  });

  auto* compact = cmd->add_subcommand("compact", "compact elements K(P)");
  compact->add_option("input", input)->required();
  compact->callback([&options] {
    const auto d = domain::FiniteDcpo::from_order(io::load_poset_file(input));
    emit_json(options, json{{"compact", domain::compact_elements(d)}});
  });

  auto* pair = cmd->add_subcommand("pair", "Cantor pairing");
  pair->add_option("--n", pn)->required();
  pair->add_option("--m", pm)->required();
  pair->callback([&options] { emit_json(options, json{{"k", domain::cantor_pair(pn, pm)}}); });

  auto* unpair = cmd->add_subcommand("unpair", "Cantor unpairing");
  unpair->add_option("--k", pk)->required();
  unpair->callback([&options] {
    const auto [n, m] = domain::cantor_unpair(pk);
    emit_json(options, json{{"n", n}, {"m", m}});
  });
}

void enable_fallthrough(CLI::App* app) {
  // Global options (--seed/--emit/--jobs) may appear after the subcommand.
  for (CLI::App* sub : app->get_subcommands({})) {
    sub->fallthrough();
    enable_fallthrough(sub);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordlab: order-theoretic decision-making toolkit"};
  app.require_subcommand(1);
  GlobalOptions options;
  app.add_option("--seed", options.seed, "root seed for all randomness");
  app.add_option("--emit", options.emit, "json or csv");
  app.add_option("--jobs", options.jobs, "worker count (ORDLAB_JOBS fallback)");

  add_dist_commands(app, options);
  add_majo_commands(app, options);
  add_poset_commands(app, options);
  add_maxent_commands(app, options);
  add_fluct_commands(app, options);
  add_domain_commands(app, options);
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
