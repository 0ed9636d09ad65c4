// pybind11 surface: the main ordlab operations on plain Python containers.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "ordlab/domain.hpp"
#include "ordlab/fluct.hpp"
#include "ordlab/majorization.hpp"
#include "ordlab/maxent.hpp"
#include "ordlab/poset.hpp"

namespace py = pybind11;
using namespace ordlab;

namespace {

Dist as_dist(const std::vector<double>& raw) { return Dist::from_raw(raw); }

RatDist as_rat_dist(const std::vector<std::string>& raw) {
  std::vector<Rational> values;
  for (const auto& s : raw) values.push_back(rational_from_string(s));
  return RatDist::from_raw(std::move(values));
}

majo::Order order_from_name(const std::string& name,
                            const std::optional<std::vector<double>>& d) {
  if (name == "u") return majo::Order::u();
  if (name == "m") return majo::Order::m();
  if (name == "d") {
    require(d.has_value(), ErrorKind::ZeroReference, "order 'd' needs a reference");
    return majo::Order::relative(snap_dist(as_dist(*d)));
  }
  fail(ErrorKind::ParseError, "unknown order '" + name + "'");
}

fluct::MarkovChainSpec as_chain(const std::vector<double>& p0,
                                const std::vector<std::vector<std::vector<double>>>& mats) {
  fluct::MarkovChainSpec spec{as_dist(p0), {}};
  for (const auto& rows : mats) spec.mats.push_back(fluct::TransitionMatrix::from_rows(rows));
  return spec;
}

std::vector<std::vector<double>> matrix_rows(const fluct::TransitionMatrix& m) {
  std::vector<std::vector<double>> rows(m.size(), std::vector<double>(m.size()));
  for (std::size_t x = 0; x < m.size(); ++x) {
    for (std::size_t y = 0; y < m.size(); ++y) rows[x][y] = m(x, y);
  }
  return rows;
}

domain::RatPolynomial as_poly(const std::vector<std::string>& coeffs) {
  domain::RatPolynomial poly;
  for (const auto& c : coeffs) poly.coeffs.push_back(rational_from_string(c));
  return poly;
}

}  // namespace

PYBIND11_MODULE(_ordlab, m) {
  m.doc() = "order-theoretic decision-making toolkit";
  m.attr("__version__") = ORDLAB_VERSION;

  py::register_exception<Error>(m, "OrdlabError");

  // --- distributions ---
  m.def("new_dist", [](const std::vector<double>& raw) { return as_dist(raw).probs(); });
  m.def("sorted_desc",
        [](const std::vector<double>& p) { return sorted_desc(as_dist(p)).probs(); });
  m.def("partial_sum_utilities",
        [](const std::vector<double>& p) { return partial_sum_utilities(as_dist(p)); });
  m.def("shannon_entropy",
        [](const std::vector<double>& p) { return shannon_entropy(as_dist(p)); });
  m.def("boltzmann", [](const std::vector<double>& scores, double beta) {
    return boltzmann(ScoreVector::from_raw(scores), beta).probs();
  });

  // --- majorization ---
  m.def("uncertainty_leq", [](const std::vector<double>& p, const std::vector<double>& q) {
    return majo::uncertainty_leq(as_dist(p), as_dist(q));
  });
  m.def("majorized_by", [](const std::vector<double>& p, const std::vector<double>& q) {
    return majo::majorized_by(as_dist(p), as_dist(q));
  });
  m.def(
      "compare",
      [](const std::vector<double>& p, const std::vector<double>& q, const std::string& order,
         const std::optional<std::vector<double>>& d) {
        return std::string(
            majo::verdict_name(majo::compare(as_dist(p), as_dist(q), order_from_name(order, d))));
      },
      py::arg("p"), py::arg("q"), py::arg("order") = "m", py::arg("d") = std::nullopt);
  m.def(
      "pigou_dalton_path",
      [](const std::vector<double>& p, const std::vector<double>& q, std::size_t max_steps)
          -> std::optional<std::vector<std::tuple<std::size_t, std::size_t, double>>> {
        const auto path = majo::pigou_dalton_path(as_dist(p), as_dist(q), max_steps);
        if (!path) return std::nullopt;
        std::vector<std::tuple<std::size_t, std::size_t, double>> out;
        for (const auto& step : *path) out.emplace_back(step.from_index, step.to_index, step.mass);
        return out;
      },
      py::arg("p"), py::arg("q"), py::arg("max_steps") = 64);
  m.def("lambda_d_embed", [](const std::vector<double>& p, const std::vector<double>& d) {
    return majo::lambda_d_embed(as_dist(p), as_dist(d)).probs();
  });
  m.def("d_majorization_leq",
        [](const std::vector<double>& p, const std::vector<double>& q,
           const std::vector<double>& d) {
          return majo::d_majorization_leq(as_dist(p), as_dist(q), as_dist(d));
        });
  m.def("d_majorization_oracle",
        [](const std::vector<double>& p, const std::vector<double>& q,
           const std::vector<double>& d) {
          return majo::d_majorization_oracle(snap_dist(as_dist(p)), snap_dist(as_dist(q)),
                                             snap_dist(as_dist(d)));
        });
  m.def("d_majorization_oracle_exact",
        [](const std::vector<std::string>& p, const std::vector<std::string>& q,
           const std::vector<std::string>& d) {
          return majo::d_majorization_oracle(as_rat_dist(p), as_rat_dist(q), as_rat_dist(d));
        });

  // --- posets ---
  py::class_<poset::FinitePreorder>(m, "FinitePreorder")
      .def_static("from_relation", &poset::FinitePreorder::from_relation)
      .def_static("chain", &poset::FinitePreorder::chain)
      .def_static("antichain", &poset::FinitePreorder::antichain)
      .def_static("v_poset", &poset::FinitePreorder::v_poset)
      .def_static("standard_example_3", &poset::FinitePreorder::standard_example_3)
      .def_static("counterexample_poset", &poset::FinitePreorder::counterexample_poset)
      .def_static("reciprocal_pair_poset", &poset::FinitePreorder::reciprocal_pair_poset)
      .def("__len__", &poset::FinitePreorder::size)
      .def("leq", &poset::FinitePreorder::leq)
      .def("strict", &poset::FinitePreorder::strict)
      .def("incomparable", &poset::FinitePreorder::incomparable)
      .def("is_total", &poset::FinitePreorder::is_total)
      .def("is_antisymmetric", &poset::FinitePreorder::is_antisymmetric);
  m.def("reciprocal_pair_multi_utility", &poset::reciprocal_pair_multi_utility);
  m.def("classify_monotone",
        [](const poset::FinitePreorder& p, const std::vector<double>& f) {
          const auto flags = poset::classify_monotone(p, f);
          return py::make_tuple(flags.monotone, flags.strict_monotone,
                                flags.injective_monotone);
        });
  m.def("is_multi_utility", &poset::is_multi_utility);
  m.def("is_strict_monotone_multi_utility", &poset::is_strict_monotone_multi_utility);
  m.def("is_thermo_representation", &poset::is_thermo_representation);
  m.def("thermo_to_multi_utility", &poset::thermo_to_multi_utility);
  m.def("monotone_from_increasing_sets", &poset::monotone_from_increasing_sets);
  m.def("is_conditionally_connected", &poset::is_conditionally_connected);
  m.def("linear_extension_by_monotone", &poset::linear_extension_by_monotone);
  m.def("maximal_elements", &poset::maximal_elements);
  m.def("optimization_principle_check", &poset::optimization_principle_check);
  m.def(
      "dm_dimension",
      [](const poset::FinitePreorder& p, std::size_t max_k) {
        return poset::dm_dimension(p, max_k);
      },
      py::arg("p"), py::arg("max_k") = 4);
  m.def("realizer_is_valid",
        [](const poset::FinitePreorder& p, const std::vector<std::vector<std::size_t>>& exts) {
          return poset::realizer_is_valid(p, poset::Realizer{exts});
        });
  m.def("multi_utility_from_realizer",
        [](const poset::FinitePreorder& p, const std::vector<std::vector<std::size_t>>& exts) {
          return poset::multi_utility_from_realizer(p, poset::Realizer{exts});
        });

  // --- maxent ---
  m.def(
      "solve_maxent",
      [](const std::vector<double>& energy, double target, double tol) {
        const auto solution =
            maxent::solve_maxent({ScoreVector::from_raw(energy), target}, tol);
        return py::make_tuple(solution.p.probs(), solution.beta);
      },
      py::arg("energy"), py::arg("target"), py::arg("tol") = maxent::kDefaultMomentTol);
  m.def(
      "solve_bounded_rational",
      [](const std::vector<double>& utility, std::optional<double> entropy_floor,
         std::optional<double> utility_floor, double tol) {
        require(entropy_floor.has_value() != utility_floor.has_value(),
                ErrorKind::InfeasibleBound, "give exactly one floor");
        const auto bound = entropy_floor ? maxent::Bound::entropy_floor(*entropy_floor)
                                         : maxent::Bound::utility_floor(*utility_floor);
        const auto solution =
            maxent::solve_bounded_rational(ScoreVector::from_raw(utility), bound, tol);
        return py::make_tuple(solution.p.probs(), solution.beta);
      },
      py::arg("utility"), py::arg("entropy_floor") = std::nullopt,
      py::arg("utility_floor") = std::nullopt, py::arg("tol") = maxent::kDefaultMomentTol);
  m.def(
      "maximal_on_segment",
      [](const std::vector<double>& energy, double target, std::size_t grid) {
        std::vector<std::vector<double>> out;
        for (const Dist& p : maxent::maximal_on_segment(ScoreVector::from_raw(energy), target,
                                                        grid)) {
          out.push_back(p.probs());
        }
        return out;
      },
      py::arg("energy"), py::arg("target"), py::arg("grid") = 3001);

  // --- fluctuation theorems ---
  m.def("stationary_dist", [](const std::vector<std::vector<double>>& rows) {
    return fluct::stationary_dist(fluct::TransitionMatrix::from_rows(rows)).probs();
  });
  m.def("is_irreducible", [](const std::vector<std::vector<double>>& rows) {
    return fluct::is_irreducible(fluct::TransitionMatrix::from_rows(rows));
  });
  m.def("satisfies_detailed_balance",
        [](const std::vector<std::vector<double>>& rows, const std::vector<double>& p) {
          return fluct::satisfies_detailed_balance(fluct::TransitionMatrix::from_rows(rows),
                                                   as_dist(p));
        });
  m.def("metropolis_matrix",
        [](const std::vector<double>& target, const std::vector<std::vector<double>>& proposal) {
          return matrix_rows(fluct::metropolis_matrix(
              as_dist(target), fluct::TransitionMatrix::from_rows(proposal)));
        });
  m.def(
      "jarzynski_exact",
      [](const std::vector<double>& p0,
         const std::vector<std::vector<std::vector<double>>>& mats, double beta) {
        const auto spec = as_chain(p0, mats);
        return fluct::jarzynski_exact(spec, fluct::energy_family_from_chain(spec, beta));
      },
      py::arg("p0"), py::arg("mats"), py::arg("beta") = 1.0);
  m.def(
      "jarzynski_mc",
      [](const std::vector<double>& p0,
         const std::vector<std::vector<std::vector<double>>>& mats, double beta,
         std::size_t count, std::uint64_t seed, unsigned jobs) {
        const auto spec = as_chain(p0, mats);
        return fluct::jarzynski_mc(spec, fluct::energy_family_from_chain(spec, beta), count,
                                   seed, jobs);
      },
      py::arg("p0"), py::arg("mats"), py::arg("beta") = 1.0, py::arg("count") = 10000,
      py::arg("seed") = 0, py::arg("jobs") = 1);
  m.def(
      "exact_work_distribution",
      [](const std::vector<double>& p0,
         const std::vector<std::vector<std::vector<double>>>& mats, double beta,
         bool backward) {
        const auto spec = as_chain(p0, mats);
        const auto dist = fluct::exact_work_distribution(
            spec, fluct::energy_family_from_chain(spec, beta),
            backward ? fluct::Direction::Backward : fluct::Direction::Forward);
        return dist.support;
      },
      py::arg("p0"), py::arg("mats"), py::arg("beta") = 1.0, py::arg("backward") = false);
  m.def(
      "crooks_check",
      [](const std::vector<double>& p0,
         const std::vector<std::vector<std::vector<double>>>& mats, double beta) {
        const auto spec = as_chain(p0, mats);
        const auto report =
            fluct::crooks_check(spec, fluct::energy_family_from_chain(spec, beta));
        std::vector<std::tuple<double, double, double>> points;
        for (const auto& point : report.points) {
          points.emplace_back(point.w, point.log_ratio, point.beta_gap);
        }
        return py::make_tuple(report.max_gap, points);
      },
      py::arg("p0"), py::arg("mats"), py::arg("beta") = 1.0);
  m.def(
      "bootstrap_ci",
      [](const std::vector<double>& samples, std::size_t resamples, double level,
         const std::string& statistic, double beta, std::uint64_t seed) {
        const auto stat = statistic == "mean_exp_neg" ? fluct::Statistic::mean_exp_neg(beta)
                                                      : fluct::Statistic::mean();
        return fluct::bootstrap_ci(samples, resamples, level, stat, seed);
      },
      py::arg("samples"), py::arg("resamples") = 1000, py::arg("level") = 0.99,
      py::arg("statistic") = "mean", py::arg("beta") = 1.0, py::arg("seed") = 0);
  py::class_<fluct::KdeDensity>(m, "KdeDensity")
      .def("__call__", &fluct::KdeDensity::operator())
      .def_property_readonly("bandwidth", &fluct::KdeDensity::bandwidth);
  m.def(
      "kde_density",
      [](const std::vector<double>& samples, std::optional<double> bandwidth) {
        return fluct::kde_density(samples, bandwidth);
      },
      py::arg("samples"), py::arg("bandwidth") = std::nullopt);
  m.def(
      "loss_energy",
      [](const std::string& kind, double param, const std::vector<double>& theta,
         std::size_t n, double x) {
        const auto model = kind == "mexican_hat" ? fluct::LossModel::mexican_hat(param, theta)
                                                 : fluct::LossModel::exp_quadratic(param, theta);
        return fluct::loss_energy(model, n, x);
      },
      py::arg("kind"), py::arg("param"), py::arg("theta"), py::arg("n"), py::arg("x"));
  m.def("triangular_schedule", &fluct::triangular_schedule);
  m.def(
      "simulate_protocol",
      [](std::size_t trials, double peak, double bias, double beta, std::size_t states,
         std::size_t count, std::uint64_t seed) {
        const fluct::ProtocolConfig config{
            fluct::LossModel::exp_quadratic(bias, fluct::triangular_schedule(trials, peak)),
            beta, states, -1.5 * peak, 1.5 * peak};
        const auto protocol = fluct::build_protocol(config);
        return py::make_tuple(
            fluct::simulate_works(protocol, fluct::Direction::Forward, count, seed),
            fluct::simulate_works(protocol, fluct::Direction::Backward, count, seed + 1));
      },
      py::arg("trials") = 26, py::arg("peak") = 8.0, py::arg("bias") = 0.0,
      py::arg("beta") = 1.0, py::arg("states") = 13, py::arg("count") = 20,
      py::arg("seed") = 0);

  // --- domains ---
  m.def("interval_leq", [](const std::string& a_lo, const std::string& a_hi,
                           const std::string& b_lo, const std::string& b_hi) {
    return domain::interval_leq(
        domain::RationalInterval::make(rational_from_string(a_lo), rational_from_string(a_hi)),
        domain::RationalInterval::make(rational_from_string(b_lo),
                                       rational_from_string(b_hi)));
  });
  m.def("interval_way_below", [](const std::string& a_lo, const std::string& a_hi,
                                 const std::string& b_lo, const std::string& b_hi) {
    return domain::interval_way_below(
        domain::RationalInterval::make(rational_from_string(a_lo), rational_from_string(a_hi)),
        domain::RationalInterval::make(rational_from_string(b_lo),
                                       rational_from_string(b_hi)));
  });
  m.def(
      "bisection_run",
      [](const std::vector<std::string>& coeffs, const std::string& lo, const std::string& hi,
         const std::string& eps) {
        const auto trace = domain::bisection_run(as_poly(coeffs), rational_from_string(lo),
                                                 rational_from_string(hi),
                                                 rational_from_string(eps));
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& interval : trace) {
          out.emplace_back(to_string(interval.lo), to_string(interval.hi));
        }
        return out;
      },
      py::arg("coeffs"), py::arg("lo"), py::arg("hi"), py::arg("eps") = "1/1024");
  m.def("cantor_leq", [](const std::string& x, const std::string& y) {
    return domain::cantor_leq(domain::CantorWord::parse(x), domain::CantorWord::parse(y));
  });
  m.def("cantor_way_below", [](const std::string& x, const std::string& y) {
    return domain::cantor_way_below(domain::CantorWord::parse(x),
                                    domain::CantorWord::parse(y));
  });
  m.def("cantor_sup", [](const std::vector<std::string>& words) {
    std::vector<domain::CantorWord> family;
    for (const auto& w : words) family.push_back(domain::CantorWord::parse(w));
    return domain::cantor_sup(family).str();
  });
  m.def("cantor_truncation", &domain::cantor_truncation);
  m.def("finite_way_below", [](const poset::FinitePreorder& p, std::size_t x, std::size_t y) {
    return domain::finite_way_below(domain::FiniteDcpo::from_order(p), x, y);
  });
  m.def("scott_opens", [](const poset::FinitePreorder& p) {
    return domain::scott_opens(domain::FiniteDcpo::from_order(p));
  });
  m.def("order_from_opens_check", [](const poset::FinitePreorder& p) {
    return domain::order_from_opens_check(domain::FiniteDcpo::from_order(p));
  });
  m.def("weak_basis_check",
        [](const poset::FinitePreorder& p, const std::vector<std::size_t>& basis) {
          return domain::weak_basis_check(domain::FiniteDcpo::from_order(p), basis);
        });
  m.def("compact_elements", [](const poset::FinitePreorder& p) {
    return domain::compact_elements(domain::FiniteDcpo::from_order(p));
  });
  m.def("cantor_pair", &domain::cantor_pair);
  m.def("cantor_unpair", &domain::cantor_unpair);
}
