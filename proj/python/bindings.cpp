// Python bindings. Rationals cross the boundary as "a/b" strings and reports
// as JSON text; the pure-Python layer in polybern/__init__.py converts them.

#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polybern/bernoulli_convolution.hpp"
#include "polybern/entropy.hpp"
#include "polybern/mixing.hpp"
#include "polybern/report_io.hpp"
#include "polybern/sweep.hpp"
#include "polybern/verification.hpp"

namespace py = pybind11;
using namespace polybern;

namespace {

ParamVector to_params(const std::vector<std::string>& texts) {
  std::vector<Rational> probs;
  probs.reserve(texts.size());
  for (const auto& t : texts) probs.push_back(parse_rational(t));
  return ParamVector(std::move(probs));
}

std::vector<std::string> to_strings(std::span<const Rational> values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

EntropyOrder make_order(const std::string& family, double q) {
  switch (parse_family(family)) {
    case EntropyFamily::shannon: return EntropyOrder::shannon();
    case EntropyFamily::renyi: return EntropyOrder::renyi(q);
    case EntropyFamily::tsallis: return EntropyOrder::tsallis(q);
  }
  throw std::invalid_argument("unknown entropy family");
}

std::string dump(const nlohmann::json& j) { return document(j).dump(); }

}  // namespace

PYBIND11_MODULE(_polybern, m) {
  m.doc() = "Exact Poisson-binomial entropy monotonicity checks";

  py::register_exception<ConstraintViolation>(m, "ConstraintViolation", PyExc_ValueError);
  py::register_exception<SizeLimitError>(m, "SizeLimitError", PyExc_ValueError);

  m.def("exact_pmf", [](const std::vector<std::string>& params) {
    return to_strings(exact_pmf(to_params(params)).masses());
  });
  m.def("float_pmf", [](const std::vector<std::string>& params) {
    const FloatPmf f = float_pmf(to_params(params));
    return std::vector<double>(f.masses().begin(), f.masses().end());
  });
  m.def("brute_force_pmf", [](const std::vector<std::string>& params) {
    return to_strings(brute_force_pmf(to_params(params)).masses());
  });

  m.def("mixing_profile", [](const std::vector<std::string>& g_params) {
    return dump(to_json(mixing_profile(exact_pmf(to_params(g_params)))));
  });
  m.def("odd_central_moment", [](const std::vector<std::string>& g_params, unsigned r) {
    const ExactPmf g = exact_pmf(to_params(g_params));
    return to_string(odd_central_moment(shifted_mixture(g, Rational(1, 2)), mixing_profile(g), r));
  });
  m.def("s_chain", [](const std::vector<std::string>& g_params, unsigned r) {
    const ExactPmf g = exact_pmf(to_params(g_params));
    return dump(to_json(s_chain(g, shifted_mixture(g, Rational(1, 2)), mixing_profile(g), r)));
  });

  m.def("entropy", [](const std::vector<std::string>& params, const std::string& family, double q) {
    return entropy(exact_pmf(to_params(params)), make_order(family, q));
  }, py::arg("params"), py::arg("family") = "shannon", py::arg("q") = 1.0);
  m.def("derivative", [](const std::vector<std::string>& params, const std::string& family, double q,
                         const std::string& method, double step) {
    return dump(to_json(derivative_record(to_params(params), make_order(family, q), parse_method(method),
                                          FiniteDifferenceOptions{step})));
  }, py::arg("params"), py::arg("family") = "shannon", py::arg("q") = 1.0,
     py::arg("method") = "direct", py::arg("step") = 1e-5);
  m.def("psi", [](double alpha) { return psi(alpha); });
  m.def("psi_q", &psi_q);
  m.def("counterexample", [](double q, double eps) {
    const auto terms = counterexample_leading_term(q, eps);
    return std::pair<double, double>(terms.exact, terms.leading);
  });
  m.attr("SHANNON_DERIVATIVE_BOUND") = kShannonDerivativeBound;

  m.def("verify_monotonicity", [](const std::vector<std::string>& params, unsigned r_max) {
    return dump(to_json(verify_monotonicity(to_params(params), r_max)));
  });
  m.def("verify_spacing", [](const std::vector<std::string>& params) {
    return dump(to_json(verify_spacing(to_params(params))));
  });
  m.def("verify_identities", [](const std::vector<std::string>& params, std::uint64_t seed) {
    return dump(to_json(verify_identities(to_params(params), seed)));
  });
  m.def("verify_appendix_identities", [](const std::vector<std::string>& params) {
    return dump(to_json(verify_appendix_identities(to_params(params))));
  });
  m.def("verify_all", [](const std::vector<std::string>& params, unsigned r_max) {
    return dump(to_json(verify_all(to_params(params), r_max)));
  });
  m.def("classify_equality", [](const std::vector<std::string>& params) {
    const auto c = classify_equality(to_params(params));
    return py::make_tuple(to_string(c.cls), to_string(c.m1), c.consistent);
  });

  m.def("search_tsallis", [](std::size_t samples, std::uint64_t seed, std::size_t n_min, std::size_t n_max,
                             double q_min, double q_max, const std::string& constraint, unsigned r_max,
                             unsigned threads) {
    SearchConfig config;
    config.samples = samples;
    config.seed = seed;
    config.n_min = n_min;
    config.n_max = n_max;
    config.q_min = q_min;
    config.q_max = q_max;
    config.constraint = parse_constraint(constraint);
    config.r_max = r_max;
    config.threads = threads;
    py::gil_scoped_release release;
    return dump(to_json(search_tsallis(config)));
  });

  m.def("sweep", [](const std::string& mode, std::size_t n, const std::string& p_min,
                    const std::string& p_max, const std::string& p_step, const std::string& last,
                    std::size_t samples, std::uint64_t seed, std::vector<double> qs, unsigned r_max,
                    unsigned threads, bool csv) {
    SweepSpec spec;
    spec.mode = parse_sweep_mode(mode);
    spec.n = n;
    spec.p_min = parse_rational(p_min);
    spec.p_max = parse_rational(p_max);
    spec.p_step = parse_rational(p_step);
    spec.last = parse_rational(last);
    spec.samples = samples;
    spec.seed = seed;
    spec.qs = std::move(qs);
    spec.r_max = r_max;
    spec.threads = threads;
    std::vector<SweepRow> rows;
    {
      py::gil_scoped_release release;
      rows = run_sweep(spec);
    }
    if (csv) {
      std::ostringstream out;
      write_csv(out, spec, rows);
      return out.str();
    }
    return dump(sweep_json(spec, rows));
  });
}
