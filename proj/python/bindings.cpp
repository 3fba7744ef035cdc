#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "hcause/gibbs.hpp"
#include "hcause/harness.hpp"
#include "hcause/ibp.hpp"
#include "hcause/io.hpp"
#include "hcause/model.hpp"
#include "hcause/runner.hpp"

namespace py = pybind11;
using namespace hcause;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

BinaryMatrix to_matrix(const U8Array& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D 0/1 array");
  BinaryMatrix m(a.shape(0), a.shape(1));
  auto r = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i)
    for (py::ssize_t j = 0; j < a.shape(1); ++j) {
      if (r(i, j) > 1) throw std::invalid_argument("matrix entries must be 0 or 1");
      m.set(i, j, r(i, j));
    }
  return m;
}

U8Array to_array(const BinaryMatrix& m) {
  U8Array a({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
  auto w = a.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) w(i, j) = m(i, j);
  return a;
}

py::array_t<double> square(const std::vector<double>& v, std::size_t n) {
  py::array_t<double> a({static_cast<py::ssize_t>(n), static_cast<py::ssize_t>(n)});
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

py::dict params_dict(const ModelParams& p) {
  py::dict d;
  d["epsilon"] = p.epsilon;
  d["lambda"] = p.lambda;
  d["p"] = p.p;
  d["alpha"] = p.alpha;
  return d;
}

PosteriorSummary summary_from(const py::array_t<double>& zzt) {
  if (zzt.ndim() != 2 || zzt.shape(0) != zzt.shape(1))
    throw DimensionError("mean_zzt must be square");
  PosteriorSummary s;
  s.N = zzt.shape(0);
  auto r = zzt.unchecked<2>();
  for (std::size_t a = 0; a < s.N; ++a)
    for (std::size_t b = 0; b < s.N; ++b) s.mean_zzt.push_back(r(a, b));
  s.sample_count = 1;
  return s;
}

py::dict fit(const U8Array& X, const std::string& config_json) {
  FitConfig cfg;
  apply_config_json(cfg, nlohmann::json::parse(config_json));
  FitResult r;
  {
    py::gil_scoped_release release;
    r = run_fit(to_matrix(X), cfg);
  }
  py::list trace;
  for (const auto& rec : r.trace) {
    py::dict d = params_dict(rec.params);
    d["iteration"] = rec.iteration;
    d["k"] = rec.k;
    d["k_plus"] = rec.k_plus;
    d["log_joint"] = rec.log_joint;
    trace.append(d);
  }
  py::dict out;
  out["trace"] = trace;
  out["mean_k_plus"] = r.summary.mean_k_plus;
  out["mean_k"] = r.summary.mean_k;
  out["mean_zzt"] = square(r.summary.mean_zzt, r.summary.N);
  out["sample_count"] = r.summary.sample_count;
  out["Z"] = to_array(r.final_state.Z());
  out["Y"] = to_array(r.final_state.Y());
  out["params"] = params_dict(r.final_state.params());
  out["trace_jsonl"] = [&] {
    std::string s;
    for (const auto& rec : r.trace) s += to_json(rec).dump() + "\n";
    return s;
  }();
  return out;
}

}  // namespace

PYBIND11_MODULE(_hcause, m) {
  m.doc() = "Noisy-OR hidden-cause inference with an Indian buffet process prior";

  py::register_exception<DegeneracyError>(m, "DegeneracyError", PyExc_ArithmeticError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<ExhaustionError>(m, "ExhaustionError", PyExc_RuntimeError);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double epsilon, double lambda, double p, double alpha) {
             ModelParams mp{epsilon, lambda, p, alpha};
             mp.validate();
             return mp;
           }),
           py::arg("epsilon") = 0.01, py::arg("lambda_") = 0.9, py::arg("p") = 0.1,
           py::arg("alpha") = 3.0)
      .def_readwrite("epsilon", &ModelParams::epsilon)
      .def_readwrite("lambda_", &ModelParams::lambda)
      .def_readwrite("p", &ModelParams::p)
      .def_readwrite("alpha", &ModelParams::alpha)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(epsilon=" + std::to_string(p.epsilon) + ", lambda_=" +
               std::to_string(p.lambda) + ", p=" + std::to_string(p.p) +
               ", alpha=" + std::to_string(p.alpha) + ")";
      });

  m.def("noisy_or_prob", &noisy_or_prob, py::arg("active_count"), py::arg("params"));
  m.def("log_likelihood",
        [](const U8Array& X, const U8Array& Z, const U8Array& Y, const ModelParams& p) {
          return log_likelihood(to_matrix(X), to_matrix(Z), to_matrix(Y), p);
        },
        py::arg("X"), py::arg("Z"), py::arg("Y"), py::arg("params"));
  m.def("log_prior_Z_finite",
        [](const U8Array& Z, std::size_t K, double alpha) {
          return log_prior_Z_finite(to_matrix(Z), K, alpha);
        },
        py::arg("Z"), py::arg("K"), py::arg("alpha"));
  m.def("log_prior_Z_ibp",
        [](const U8Array& Z, double alpha) { return log_prior_Z_ibp(to_matrix(Z), alpha); },
        py::arg("Z"), py::arg("alpha"));
  m.def("harmonic", &harmonic, py::arg("n"));
  m.def("new_cause_activation_prob", &new_cause_activation_prob, py::arg("eta"),
        py::arg("k_new"), py::arg("params"));

  m.def("sample_ibp",
        [](std::size_t N, double alpha, std::uint64_t seed) {
          Rng rng(seed);
          return to_array(sample_ibp(N, alpha, rng));
        },
        py::arg("N"), py::arg("alpha"), py::arg("seed"));
  m.def("canonical_structure", [](const std::string& name) { return to_array(canonical_structure(name)); },
        py::arg("name"));
  m.def("generate_dataset",
        [](const U8Array& Z, std::size_t T, const ModelParams& p, std::uint64_t seed) {
          Rng rng(seed);
          const Dataset d = generate_dataset(to_matrix(Z), T, p, rng);
          return py::make_tuple(to_array(d.X), to_array(d.truth->Y));
        },
        py::arg("Z"), py::arg("T"), py::arg("params"), py::arg("seed"),
        "Returns (X, Y).");

  m.def("_fit", &fit, py::arg("X"), py::arg("config_json"));

  m.def("structure_error",
        [](const py::array_t<double>& zzt, const U8Array& Z) {
          return structure_error(summary_from(zzt), to_matrix(Z));
        },
        py::arg("mean_zzt"), py::arg("Z_true"));
  m.def("in_degree_error",
        [](const py::array_t<double>& zzt, const U8Array& Z) {
          return in_degree_error(summary_from(zzt), to_matrix(Z));
        },
        py::arg("mean_zzt"), py::arg("Z_true"));

  m.def("exact_posterior",
        [](const U8Array& X, std::size_t K, const ModelParams& p) {
          const ExactPosterior e = exact_posterior_oracle(to_matrix(X), K, p);
          py::dict d;
          d["probs"] = py::array_t<double>(e.probs.size(), e.probs.data());
          d["log_evidence"] = e.log_evidence;
          py::array_t<double> zm({static_cast<py::ssize_t>(e.N), static_cast<py::ssize_t>(e.K)});
          std::copy(e.z_marginals.begin(), e.z_marginals.end(), zm.mutable_data());
          d["z_marginals"] = zm;
          d["k_plus_probs"] = e.k_plus_probs;
          return d;
        },
        py::arg("X"), py::arg("K"), py::arg("params"));

  m.def("read_matrix_csv", [](const std::string& path) { return to_array(read_matrix_csv(path)); },
        py::arg("path"));
}
