#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "olre/errors.hpp"
#include "olre/experiment.hpp"
#include "olre/run_config.hpp"

namespace py = pybind11;
using namespace olre;

namespace {

// Python passes samples as (n, d) row-major arrays; the core wants points in
// columns.
Eigen::MatrixXd as_columns(const Eigen::Ref<const Eigen::MatrixXd>& rows) {
  return rows.transpose();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Online kernel likelihood-ratio estimation: streaming functional "
            "gradient estimator, offline RULSIF baseline, synthetic benchmarks.";

  py::register_exception<numerical_error>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<KernelSpec>(m, "KernelSpec")
      .def(py::init<double>(), py::arg("bandwidth"))
      .def_readonly("bandwidth", &KernelSpec::bandwidth)
      .def("__repr__", [](const KernelSpec& s) {
        return "KernelSpec(bandwidth=" + std::to_string(s.bandwidth) + ")";
      });

  py::class_<Dictionary>(m, "Dictionary")
      .def(py::init([](const Eigen::Ref<const Eigen::MatrixXd>& points) {
             return Dictionary(as_columns(points));
           }),
           py::arg("points"), "Build from an (n, d) array; rows become entries.")
      .def("__len__", &Dictionary::size)
      .def_property_readonly("dim", &Dictionary::dim)
      .def("points", [](const Dictionary& d) { return Eigen::MatrixXd(d.points().transpose()); });

  py::class_<WeightedExpansion>(m, "WeightedExpansion")
      .def(py::init<Dictionary, const Eigen::Ref<const Eigen::VectorXd>&>(),
           py::arg("dictionary"), py::arg("weights"))
      .def("__len__", &WeightedExpansion::size)
      .def_property_readonly("weights",
                             [](const WeightedExpansion& f) { return Eigen::VectorXd(f.weights()); })
      .def_property_readonly("dictionary", &WeightedExpansion::dictionary)
      .def("__call__",
           [](const WeightedExpansion& f, const KernelSpec& spec,
              const Eigen::Ref<const Eigen::VectorXd>& x) { return evaluate(f, spec, x); })
      .def("evaluate_batch",
           [](const WeightedExpansion& f, const KernelSpec& spec,
              const Eigen::Ref<const Eigen::MatrixXd>& X) {
             return evaluate_batch(f, spec, as_columns(X));
           });

  m.def("kernel_eval", &kernel_eval, py::arg("spec"), py::arg("x"), py::arg("y"));
  m.def("gram", &gram);
  m.def("gram_cross", [](const Dictionary& d, const KernelSpec& s,
                         const Eigen::Ref<const Eigen::MatrixXd>& X) {
    return gram_cross(d, s, as_columns(X));
  });

  py::class_<ObservationPair>(m, "ObservationPair")
      .def(py::init<Eigen::VectorXd, Eigen::VectorXd>(), py::arg("x"), py::arg("x_prime"))
      .def_readonly("x", &ObservationPair::x)
      .def_readonly("x_prime", &ObservationPair::x_prime);

  py::class_<OlreConfig>(m, "OlreConfig")
      .def(py::init([](double alpha, double beta, double a, std::int64_t t0, double sigma) {
             OlreConfig c{alpha, beta, a, t0, KernelSpec(sigma)};
             c.validate();
             return c;
           }),
           py::arg("alpha"), py::arg("beta") = 0.5, py::arg("a") = 4.0,
           py::arg("t0") = 100, py::arg("sigma") = 1.0)
      .def_readonly("alpha", &OlreConfig::alpha)
      .def_readonly("beta", &OlreConfig::beta)
      .def_readonly("a", &OlreConfig::a)
      .def_readonly("t0", &OlreConfig::t0)
      .def_readonly("kernel", &OlreConfig::kernel);

  py::class_<Schedule>(m, "Schedule")
      .def_readonly("eta", &Schedule::eta)
      .def_readonly("lambda_", &Schedule::lambda);
  m.def("schedule", &schedule, py::arg("config"), py::arg("t"));
  m.def("t0_theory_bound", &t0_theory_bound, py::arg("a"), py::arg("beta"));

  py::class_<OnlineEstimator>(m, "OnlineEstimator")
      .def(py::init<OlreConfig>(), py::arg("config"))
      .def("step", &OnlineEstimator::step)
      .def_property_readonly("t", &OnlineEstimator::t)
      .def_property_readonly("kernel_evals", &OnlineEstimator::kernel_evals)
      .def("snapshot", &OnlineEstimator::snapshot);

  m.def("run_stream", &run_stream, py::arg("config"), py::arg("pairs"),
        py::arg("checkpoints"));
  m.def("instantaneous_loss", &instantaneous_loss, py::arg("f"), py::arg("spec"),
        py::arg("pair"), py::arg("alpha"), py::arg("lambda_"));
  m.def("instantaneous_loss_gradient", &instantaneous_loss_gradient, py::arg("f"),
        py::arg("spec"), py::arg("pair"), py::arg("alpha"), py::arg("lambda_"));

  py::class_<RulsifModel>(m, "RulsifModel")
      .def_readonly("theta_hat", &RulsifModel::theta_hat)
      .def_readonly("alpha", &RulsifModel::alpha)
      .def_readonly("lambda_", &RulsifModel::lambda)
      .def_property_readonly("dictionary", [](const RulsifModel& r) { return r.dictionary; })
      .def("expansion", &RulsifModel::expansion);

  m.def("build_h_matrices",
        [](const Eigen::Ref<const Eigen::MatrixXd>& X,
           const Eigen::Ref<const Eigen::MatrixXd>& Xp, const Dictionary& d,
           const KernelSpec& s, double alpha) {
          return build_h_matrices(as_columns(X), as_columns(Xp), d, s, alpha);
        });
  m.def("fit",
        [](const Eigen::Ref<const Eigen::MatrixXd>& X,
           const Eigen::Ref<const Eigen::MatrixXd>& Xp, const Dictionary& d,
           const KernelSpec& s, double alpha, double lambda) {
          return fit(as_columns(X), as_columns(Xp), d, s, alpha, lambda);
        },
        py::arg("X"), py::arg("X_prime"), py::arg("dictionary"), py::arg("spec"),
        py::arg("alpha"), py::arg("lambda_"));
  m.def("pe_score",
        [](const WeightedExpansion& f, const KernelSpec& s,
           const Eigen::Ref<const Eigen::MatrixXd>& X,
           const Eigen::Ref<const Eigen::MatrixXd>& Xp, double alpha) {
          return pe_score(f, s, as_columns(X), as_columns(Xp), alpha);
        });
  m.def("random_dictionary",
        [](const Eigen::Ref<const Eigen::MatrixXd>& Xp, int M, std::uint64_t seed) {
          return random_dictionary(as_columns(Xp), M, seed);
        },
        py::arg("X_prime"), py::arg("M"), py::arg("seed"));

  py::class_<CvPlan>(m, "CvPlan")
      .def(py::init([](std::vector<double> sigma_grid, std::vector<double> lambda_grid,
                       int folds) {
             return CvPlan{std::move(sigma_grid), std::move(lambda_grid), folds};
           }),
           py::arg("sigma_grid"), py::arg("lambda_grid"), py::arg("folds") = 5);
  py::class_<CvCell>(m, "CvCell")
      .def_readonly("sigma", &CvCell::sigma)
      .def_readonly("lambda_", &CvCell::lambda)
      .def_readonly("mean_score", &CvCell::mean_score)
      .def_readonly("failed", &CvCell::failed);
  py::class_<CvResult>(m, "CvResult")
      .def_readonly("best_sigma", &CvResult::best_sigma)
      .def_readonly("best_lambda", &CvResult::best_lambda)
      .def_readonly("table", &CvResult::table);
  m.def("cross_validate",
        [](const Eigen::Ref<const Eigen::MatrixXd>& X,
           const Eigen::Ref<const Eigen::MatrixXd>& Xp, const CvPlan& plan, double alpha,
           int M, std::uint64_t seed) {
          return cross_validate(as_columns(X), as_columns(Xp), plan, alpha, M, seed);
        },
        py::arg("X"), py::arg("X_prime"), py::arg("plan"), py::arg("alpha"), py::arg("M"),
        py::arg("seed"));

  py::enum_<Scenario>(m, "Scenario")
      .value("ExpI", Scenario::ExpI)
      .value("ExpII", Scenario::ExpII)
      .value("ExpIII", Scenario::ExpIII)
      .value("Identical", Scenario::Identical);

  py::class_<ScenarioSpec>(m, "ScenarioSpec")
      .def_readonly("id", &ScenarioSpec::id)
      .def_readonly("dim", &ScenarioSpec::dim);
  m.def("scenario_spec", &scenario_spec);

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform01", &Rng::uniform01)
      .def("normal", &Rng::normal);

  m.def("sample_pair", &sample_pair, py::arg("spec"), py::arg("rng"));
  m.def("density_p", &density_p);
  m.def("density_q", &density_q);
  m.def("true_ratio", &true_ratio, py::arg("spec"), py::arg("alpha"), py::arg("x"));

  py::class_<TestSet>(m, "TestSet")
      .def_property_readonly("x", [](const TestSet& t) { return Eigen::MatrixXd(t.x.transpose()); })
      .def_property_readonly("x_prime",
                             [](const TestSet& t) { return Eigen::MatrixXd(t.x_prime.transpose()); })
      .def("__len__", &TestSet::size);
  m.def("make_test_set", &make_test_set, py::arg("spec"), py::arg("n"), py::arg("seed"));

  py::enum_<MethodKind>(m, "MethodKind")
      .value("Olre", MethodKind::Olre)
      .value("Rulsif", MethodKind::Rulsif);

  py::class_<MethodConfig>(m, "MethodConfig")
      .def(py::init([](MethodKind kind, double alpha, double sigma, double beta, double a,
                       std::int64_t t0, double lambda, int M) {
             return MethodConfig{kind, alpha, sigma, beta, a, t0, lambda, M};
           }),
           py::arg("kind"), py::arg("alpha"), py::arg("sigma"), py::arg("beta") = 0.5,
           py::arg("a") = 4.0, py::arg("t0") = 100, py::arg("lambda_") = 0.1,
           py::arg("M") = 50)
      .def_readonly("kind", &MethodConfig::kind)
      .def_readonly("alpha", &MethodConfig::alpha)
      .def_readonly("sigma", &MethodConfig::sigma);

  py::class_<TrialReport>(m, "TrialReport")
      .def_readonly("scenario", &TrialReport::scenario)
      .def_readonly("seed", &TrialReport::seed)
      .def_readonly("checkpoints", &TrialReport::checkpoints)
      .def_readonly("errors", &TrialReport::errors);
  py::class_<AggregateReport>(m, "AggregateReport")
      .def_readonly("checkpoints", &AggregateReport::checkpoints)
      .def_readonly("mean_error", &AggregateReport::mean_error)
      .def_readonly("std_error", &AggregateReport::std_error)
      .def_readonly("n_trials", &AggregateReport::n_trials);

  m.def("l2_error", &l2_error, py::arg("f"), py::arg("spec"), py::arg("scenario"),
        py::arg("alpha"), py::arg("test"));
  m.def("estimate_pe_divergence", &estimate_pe_divergence, py::arg("f"), py::arg("spec"),
        py::arg("test"), py::arg("alpha"));
  m.def("run_trial",
        [](const ScenarioSpec& scenario, const MethodConfig& method, std::int64_t T,
           const std::vector<std::int64_t>& checkpoints, const TestSet& test,
           std::uint64_t seed) {
          return run_trial(scenario, method, T, checkpoints, test, seed);
        },
        py::arg("scenario"), py::arg("method"), py::arg("T"), py::arg("checkpoints"),
        py::arg("test"), py::arg("seed"));
  m.def("aggregate", &aggregate, py::arg("reports"));
}
