#include "clens/alpha_select.hpp"
#include "clens/cpca.hpp"
#include "clens/errors.hpp"
#include "clens/geometry.hpp"
#include "clens/kernel_cpca.hpp"
#include "clens/synth.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace clens;

namespace {

py::list pairs_list(const std::vector<VariancePair>& pairs) {
    py::list out;
    for (const auto& p : pairs) out.append(py::make_tuple(p.target_var, p.background_var));
    return out;
}

py::tuple toy_tuple(const ToyPair& toy) {
    return py::make_tuple(toy.target.data, toy.background, toy.target.labels);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Contrastive PCA: linear and kernel fits, automatic alpha selection, synthetic data";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<CpcaModel>(m, "Model")
        .def_readonly("alpha", &CpcaModel::alpha)
        .def_readonly("eigenvalues", &CpcaModel::eigenvalues)
        .def_readonly("target_mean", &CpcaModel::target_mean)
        .def_readonly("background_mean", &CpcaModel::background_mean)
        .def_property_readonly("components", [](const CpcaModel& self) { return self.subspace.basis(); })
        .def_property_readonly("variance_pairs", [](const CpcaModel& self) { return pairs_list(self.variance_pairs); })
        .def("transform",
             [](const CpcaModel& self, const Matrix& data, bool center_with_background) {
                 return transform(self, data, center_with_background ? CenterWith::Background : CenterWith::Target);
             },
             py::arg("data"), py::arg("center_with_background") = false)
        .def("denoise", [](const CpcaModel& self, const Matrix& data) { return denoise(self, data); })
        .def("feature_weights", [](const CpcaModel& self, Eigen::Index c) { return feature_weights(self, c); });

    m.def("fit",
          [](const Matrix& target, const Matrix& background, const std::string& alpha, int k) {
              const double a = parse_alpha(alpha);
              return is_infinite_alpha(a) ? fit_infinite(target, background, k) : fit(target, background, a, k);
          },
          py::arg("target"), py::arg("background"), py::arg("alpha"), py::arg("k") = kDefaultComponents,
          "Fit the top-k contrastive components. alpha is a number or 'inf'.");

    m.def("log_grid", [](double lo, double hi, int count) { return log_grid(lo, hi, count).values(); });

    m.def("auto_select",
          [](const Matrix& target, const Matrix& background, std::vector<double> alphas, int k, int p,
             std::uint64_t seed) {
              const auto r = auto_select(target, background, AlphaGrid(std::move(alphas)), k, p, seed);
              py::dict out;
              out["alphas"] = r.grid.values();
              out["medoid_alphas"] = r.medoid_alphas;
              out["medoid_indices"] = r.medoid_indices;
              out["cluster_labels"] = r.cluster_labels;
              out["affinity"] = r.affinity.values();
              out["models"] = r.per_alpha_models;
              out["pca_baseline"] = r.pca_baseline;
              return out;
          },
          py::arg("target"), py::arg("background"), py::arg("alphas") = default_grid().values(),
          py::arg("k") = kDefaultComponents, py::arg("p") = 3, py::arg("seed") = 0);

    m.def("subspace_affinity", [](const Matrix& a, const Matrix& b) {
        return subspace_affinity(Subspace(a), Subspace(b));
    });

    py::class_<KernelCpcaModel>(m, "KernelModel")
        .def_readonly("alpha", &KernelCpcaModel::alpha)
        .def_readonly("eigenvalues", &KernelCpcaModel::eigenvalues)
        .def_readonly("dual_coeffs", &KernelCpcaModel::dual_coeffs)
        .def_readonly("training_embedding", &KernelCpcaModel::training_embedding)
        .def("transform",
             [](const KernelCpcaModel& self, const Matrix& data, bool center_with_background) {
                 return transform_kernel(self, data,
                                         center_with_background ? CenterWith::Background : CenterWith::Target);
             },
             py::arg("data"), py::arg("center_with_background") = false);

    m.def("fit_kernel",
          [](const Matrix& target, const Matrix& background, const std::string& kernel, double alpha, int k,
             int degree, double coef0, double gamma) {
              const KernelSpec spec{parse_kernel_kind(kernel), degree, coef0, gamma};
              return fit_kernel(target, background, spec, alpha, k);
          },
          py::arg("target"), py::arg("background"), py::arg("kernel") = "poly", py::arg("alpha") = 1.0,
          py::arg("k") = kDefaultComponents, py::arg("degree") = 2, py::arg("coef0") = 1.0, py::arg("gamma") = 1.0);

    m.def("four_groups", [](std::uint64_t seed) { return toy_tuple(gen_toy_four_groups(seed)); }, py::arg("seed") = 0,
          "(target, background, labels) for the four-subgroup toy.");
    m.def("kernel_toy", [](std::uint64_t seed) { return toy_tuple(gen_toy_kernel(seed)); }, py::arg("seed") = 0);
    m.def("random_pair",
          [](int d, bool simdiag, std::uint64_t seed) {
              const auto p = gen_random_pair(d, simdiag, seed);
              return py::make_tuple(p.target_cov, p.background_cov);
          },
          py::arg("d"), py::arg("simdiag") = false, py::arg("seed") = 0);

    m.def("certify",
          [](const Matrix& target_cov, const Matrix& background_cov, std::vector<double> alphas, int samples,
             std::uint64_t seed, double eps) {
              const auto r = certify_frontier(target_cov, background_cov, AlphaGrid(std::move(alphas)), samples, seed,
                                              eps);
              py::dict out;
              out["passed"] = r.passed;
              out["max_dominance_margin"] = r.max_dominance_margin;
              out["max_frontier_gap"] = r.max_frontier_gap;
              py::list trace;
              for (const auto& t : r.trace) trace.append(py::make_tuple(t.alpha, t.pair.target_var, t.pair.background_var));
              out["trace"] = trace;
              return out;
          },
          py::arg("target_cov"), py::arg("background_cov"), py::arg("alphas") = default_grid().values(),
          py::arg("samples") = 10000, py::arg("seed") = 0, py::arg("eps") = 1e-6,
          "Checks that no sampled unit direction is more contrastive than a swept top component.");
}
