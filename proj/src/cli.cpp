#include "clens/cli.hpp"

#include "clens/alpha_select.hpp"
#include "clens/cpca.hpp"
#include "clens/errors.hpp"
#include "clens/geometry.hpp"
#include "clens/io.hpp"
#include "clens/kernel_cpca.hpp"
#include "clens/service.hpp"
#include "clens/synth.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <csignal>
#include <iostream>
#include <sstream>

namespace clens {

using nlohmann::json;

namespace {

class PhaseTimer {
public:
    explicit PhaseTimer(RunReport& report) : report_(report) {}

    template <typename Fn>
    auto operator()(const std::string& phase, Fn&& fn) {
        const auto start = std::chrono::steady_clock::now();
        auto finish = [&] {
            const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
            report_.timing_ms[phase] += ms.count();
        };
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            finish();
        } else {
            auto result = fn();
            finish();
            return result;
        }
    }

private:
    RunReport& report_;
};

struct DataOptions {
    std::string target;
    std::string background;
    bool header = false;
    int label_column = -1;

    void add_to(CLI::App* app) {
        app->add_option("--target", target, "Target dataset CSV")->required();
        app->add_option("--background", background, "Background dataset CSV")->required();
        app->add_flag("--header", header, "Skip the first line of each CSV");
        app->add_option("--label-column", label_column, "0-based target column holding integer labels");
    }

    LabeledDataset load_target() const {
        CsvOptions o;
        o.has_header = header;
        if (label_column >= 0) o.label_column = static_cast<std::size_t>(label_column);
        return read_matrix_csv(target, o);
    }

    Matrix load_background() const {
        CsvOptions o;
        o.has_header = header;
        return read_matrix_csv(background, o).data;
    }

    json to_json() const { return {{"target", target}, {"background", background}, {"header", header}}; }
};

struct FitOptions {
    std::string alpha = "1";
    int k = kDefaultComponents;
    double null_tol = kDefaultNullTol;

    void add_to(CLI::App* app) {
        app->add_option("--alpha", alpha, "Contrast strength (number or 'inf')")->capture_default_str();
        app->add_option("-k,--components", k, "Number of components")->capture_default_str();
        app->add_option("--null-tol", null_tol, "Relative null-space tolerance for alpha=inf")->capture_default_str();
    }

    CpcaModel fit_model(const CovariancePair& covs) const {
        const double a = parse_alpha(alpha);
        return is_infinite_alpha(a) ? fit_infinite(covs, k, null_tol) : fit(covs, a, k);
    }
};

struct GridOptions {
    std::string grid = "0.1:1000:40";
    std::vector<double> alphas;

    void add_to(CLI::App* app) {
        app->add_option("--grid", grid, "Log-spaced grid lo:hi:count")->capture_default_str();
        app->add_option("--alphas", alphas, "Explicit comma-separated alpha list")->delimiter(',');
    }

    AlphaGrid resolve() const { return alphas.empty() ? parse_grid(grid) : AlphaGrid(alphas); }
};

std::vector<std::string> component_header(const std::string& prefix, Eigen::Index k) {
    std::vector<std::string> h;
    for (Eigen::Index i = 0; i < k; ++i) h.push_back(prefix + std::to_string(i + 1));
    return h;
}

void write_report(const std::string& path, const RunReport& report) {
    if (!path.empty()) write_text_atomic(path, report.to_json().dump(2) + "\n");
}

json model_json(const CpcaModel& model) {
    return {{"alpha", alpha_to_json(model.alpha)},
            {"eigenvalues", std::vector<double>(model.eigenvalues.data(),
                                                model.eigenvalues.data() + model.eigenvalues.size())},
            {"variance_pairs", pairs_to_json(model.variance_pairs)}};
}

std::string with_suffix(const std::string& prefix, const std::string& suffix) { return prefix + "_" + suffix + ".csv"; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"contrastive-lens: contrastive principal component analysis toolkit", "contrastive-lens"};
    app.require_subcommand(1);

    // gen
    std::string gen_kind = "four-groups";
    std::uint64_t gen_seed = 0;
    int gen_d = 6;
    bool gen_simdiag = false;
    std::string gen_target;
    std::string gen_background;
    std::string gen_labels;
    auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic dataset or covariance pair as CSV");
    gen_cmd->add_option("--kind", gen_kind, "four-groups | kernel-toy | random-pair")
        ->check(CLI::IsMember({"four-groups", "kernel-toy", "random-pair"}))
        ->capture_default_str();
    gen_cmd->add_option("--seed", gen_seed)->capture_default_str();
    gen_cmd->add_option("--d", gen_d, "Dimension for random-pair")->capture_default_str();
    gen_cmd->add_flag("--simdiag", gen_simdiag, "Simultaneously diagonalizable random pair");
    gen_cmd->add_option("--target", gen_target, "Output: target data (or C_X)")->required();
    gen_cmd->add_option("--background", gen_background, "Output: background data (or C_Y)")->required();
    gen_cmd->add_option("--labels", gen_labels, "Output: target labels, one per line");

    // fit
    DataOptions fit_data;
    FitOptions fit_opts;
    std::string fit_out;
    std::string fit_out_background;
    std::string fit_components;
    std::string fit_report;
    auto* fit_cmd = app.add_subcommand("fit", "Fit contrastive components for one alpha and embed the target");
    fit_data.add_to(fit_cmd);
    fit_opts.add_to(fit_cmd);
    fit_cmd->add_option("--out", fit_out, "Target embedding CSV (n x k)")->required();
    fit_cmd->add_option("--out-background", fit_out_background, "Background embedding CSV (centered by target mean)");
    fit_cmd->add_option("--components-out", fit_components, "Component basis CSV (d x k)");
    fit_cmd->add_option("--report", fit_report, "JSON run report");

    // sweep
    DataOptions sweep_data;
    GridOptions sweep_grid;
    int sweep_k = kDefaultComponents;
    std::string sweep_out;
    std::string sweep_report;
    auto* sweep_cmd = app.add_subcommand("sweep", "Fit every grid alpha and write the variance-pair trace");
    sweep_data.add_to(sweep_cmd);
    sweep_grid.add_to(sweep_cmd);
    sweep_cmd->add_option("-k,--components", sweep_k)->capture_default_str();
    sweep_cmd->add_option("--out", sweep_out, "Trace CSV: alpha then target/background variance per component")
        ->required();
    sweep_cmd->add_option("--report", sweep_report, "JSON run report");

    // select
    DataOptions select_data;
    GridOptions select_grid;
    int select_k = kDefaultComponents;
    int select_p = 3;
    std::uint64_t select_seed = 0;
    std::string select_prefix = "embedding";
    std::string select_report;
    auto* select_cmd = app.add_subcommand("select", "Automatic alpha selection with one embedding per medoid");
    select_data.add_to(select_cmd);
    select_grid.add_to(select_cmd);
    select_cmd->add_option("-k,--components", select_k)->capture_default_str();
    select_cmd->add_option("-p,--clusters", select_p, "Number of alphas to present")->capture_default_str();
    select_cmd->add_option("--seed", select_seed)->capture_default_str();
    select_cmd->add_option("--out-prefix", select_prefix, "Embedding CSV prefix")->capture_default_str();
    select_cmd->add_option("--report", select_report, "JSON run report");

    // transform / denoise / weights
    DataOptions tr_data;
    FitOptions tr_fit;
    std::string tr_input;
    std::string tr_center = "target";
    std::string tr_out;
    auto* transform_cmd = app.add_subcommand("transform", "Project new rows with a model fitted on target/background");
    tr_data.add_to(transform_cmd);
    tr_fit.add_to(transform_cmd);
    transform_cmd->add_option("--data", tr_input, "Rows to project")->required();
    transform_cmd->add_option("--center", tr_center, "target | background")
        ->check(CLI::IsMember({"target", "background"}))
        ->capture_default_str();
    transform_cmd->add_option("--out", tr_out)->required();

    DataOptions dn_data;
    FitOptions dn_fit;
    std::string dn_input;
    std::string dn_out;
    auto* denoise_cmd = app.add_subcommand("denoise", "Reconstruct rows from the top-k contrastive components");
    dn_data.add_to(denoise_cmd);
    dn_fit.add_to(denoise_cmd);
    denoise_cmd->add_option("--data", dn_input, "Rows to denoise (defaults to the target)");
    denoise_cmd->add_option("--out", dn_out)->required();

    DataOptions w_data;
    FitOptions w_fit;
    int w_component = 0;
    std::string w_out;
    auto* weights_cmd = app.add_subcommand("weights", "Relative feature contributions of one component");
    w_data.add_to(weights_cmd);
    w_fit.add_to(weights_cmd);
    weights_cmd->add_option("--component", w_component, "0-based component index")->capture_default_str();
    weights_cmd->add_option("--out", w_out, "CSV with one weight per line (stdout if omitted)");

    // kernel-fit
    DataOptions kf_data;
    std::string kf_kernel = "poly";
    int kf_degree = 2;
    double kf_coef0 = 1.0;
    double kf_gamma = 1.0;
    double kf_alpha = 1.0;
    int kf_k = kDefaultComponents;
    std::string kf_out;
    std::string kf_out_background;
    std::string kf_report;
    auto* kernel_cmd = app.add_subcommand("kernel-fit", "Kernel contrastive PCA");
    kf_data.add_to(kernel_cmd);
    kernel_cmd->add_option("--kernel", kf_kernel, "linear | poly | rbf")
        ->check(CLI::IsMember({"linear", "poly", "polynomial", "rbf"}))
        ->capture_default_str();
    kernel_cmd->add_option("--degree", kf_degree)->capture_default_str();
    kernel_cmd->add_option("--coef0", kf_coef0)->capture_default_str();
    kernel_cmd->add_option("--gamma", kf_gamma)->capture_default_str();
    kernel_cmd->add_option("--alpha", kf_alpha)->check(CLI::NonNegativeNumber)->capture_default_str();
    kernel_cmd->add_option("-k,--components", kf_k)->capture_default_str();
    kernel_cmd->add_option("--out", kf_out, "Target embedding CSV")->required();
    kernel_cmd->add_option("--out-background", kf_out_background, "Background embedding CSV");
    kernel_cmd->add_option("--report", kf_report, "JSON run report");

    // verify
    int v_d = 6;
    int v_samples = 100000;
    std::string v_grid = "0.1:1000:40";
    std::uint64_t v_seed = 0;
    double v_eps = 1e-6;
    bool v_simdiag = false;
    std::string v_report;
    std::string v_trace;
    std::string v_cloud;
    auto* verify_cmd = app.add_subcommand("verify", "Empirically certify that swept top components are most contrastive");
    verify_cmd->add_option("--d", v_d, "Dimension of the random covariance pair")->capture_default_str();
    verify_cmd->add_option("--samples", v_samples, "Sampled unit directions")->capture_default_str();
    verify_cmd->add_option("--grid", v_grid)->capture_default_str();
    verify_cmd->add_option("--seed", v_seed)->capture_default_str();
    verify_cmd->add_option("--eps", v_eps)->capture_default_str();
    verify_cmd->add_flag("--simdiag", v_simdiag, "Use a simultaneously diagonalizable pair");
    verify_cmd->add_option("--report", v_report, "Certificate JSON");
    verify_cmd->add_option("--trace", v_trace, "CSV of alpha, target variance, background variance");
    verify_cmd->add_option("--cloud", v_cloud, "CSV of sampled variance pairs");

    // serve
    ServiceConfig serve_config;
    double serve_max_mb = static_cast<double>(serve_config.max_upload_bytes) / (1 << 20);
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP explorer service");
    serve_cmd->add_option("--port", serve_config.port)->capture_default_str();
    serve_cmd->add_option("--host", serve_config.host)->capture_default_str();
    serve_cmd->add_option("--max-upload-mb", serve_max_mb)->capture_default_str();
    serve_cmd->add_option("--cors-origin", serve_config.cors_origin)->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    RunReport report;
    PhaseTimer timed(report);
    try {
        if (*gen_cmd) {
            if (gen_kind == "random-pair") {
                auto pair = gen_random_pair(gen_d, gen_simdiag, gen_seed);
                write_matrix_csv(gen_target, pair.target_cov);
                write_matrix_csv(gen_background, pair.background_cov);
            } else {
                auto toy = gen_kind == "four-groups" ? gen_toy_four_groups(gen_seed) : gen_toy_kernel(gen_seed);
                write_matrix_csv(gen_target, toy.target.data);
                write_matrix_csv(gen_background, toy.background);
                if (!gen_labels.empty()) {
                    Matrix labels(static_cast<Eigen::Index>(toy.target.labels.size()), 1);
                    for (std::size_t i = 0; i < toy.target.labels.size(); ++i) labels(static_cast<Eigen::Index>(i), 0) = toy.target.labels[i];
                    write_matrix_csv(gen_labels, labels);
                }
            }
            out << "wrote " << gen_target << " and " << gen_background << "\n";
            return 0;
        }

        if (*fit_cmd) {
            report.command = "fit";
            report.parameters = fit_data.to_json();
            report.parameters["alpha"] = fit_opts.alpha;
            report.parameters["k"] = fit_opts.k;
            const auto target = timed("load", [&] { return fit_data.load_target(); });
            const auto background = timed("load", [&] { return fit_data.load_background(); });
            const auto covs = timed("covariance", [&] { return CovariancePair::from_data(target.data, background); });
            const auto model = timed("fit", [&] { return fit_opts.fit_model(covs); });
            timed("write", [&] {
                write_matrix_csv(fit_out, transform(model, target.data), component_header("cpc", model.k()));
                if (!fit_out_background.empty()) {
                    write_matrix_csv(fit_out_background, transform(model, background),
                                     component_header("cpc", model.k()));
                }
                if (!fit_components.empty()) {
                    write_matrix_csv(fit_components, model.subspace.basis(), component_header("cpc", model.k()));
                }
            });
            report.alphas = {model.alpha};
            report.variance_pairs = {model.variance_pairs};
            report.extra["eigenvalues"] = model_json(model)["eigenvalues"];
            write_report(fit_report, report);
            out << "alpha " << format_alpha(model.alpha) << ": wrote " << target.data.rows() << "x" << model.k()
                << " embedding to " << fit_out << "\n";
            return 0;
        }

        if (*sweep_cmd || *select_cmd) {
            const bool selecting = select_cmd->parsed();
            const auto& data = selecting ? select_data : sweep_data;
            const auto& grid_opts = selecting ? select_grid : sweep_grid;
            const int k = selecting ? select_k : sweep_k;
            report.command = selecting ? "select" : "sweep";
            report.parameters = data.to_json();
            report.parameters["grid"] = grid_opts.alphas.empty() ? json(grid_opts.grid) : json(grid_opts.alphas);
            report.parameters["k"] = k;
            const auto grid = grid_opts.resolve();
            const auto target = timed("load", [&] { return data.load_target(); });
            const auto background = timed("load", [&] { return data.load_background(); });
            const auto covs = timed("covariance", [&] { return CovariancePair::from_data(target.data, background); });
            if (k < 1 || k > covs.dim()) throw ValidationError("k must satisfy 1 <= k <= d");

            report.alphas = grid.values();
            if (!selecting) {
                const auto models = timed("sweep", [&] { return sweep(covs, grid, k); });
                const auto baseline = timed("sweep", [&] { return fit_pca(covs, k); });
                Matrix trace(static_cast<Eigen::Index>(models.size()), 1 + 2 * k);
                std::vector<std::string> header{"alpha"};
                for (int c = 0; c < k; ++c) {
                    header.push_back("target_var" + std::to_string(c + 1));
                    header.push_back("background_var" + std::to_string(c + 1));
                }
                for (std::size_t i = 0; i < models.size(); ++i) {
                    const auto r = static_cast<Eigen::Index>(i);
                    trace(r, 0) = models[i].alpha;
                    for (int c = 0; c < k; ++c) {
                        trace(r, 1 + 2 * c) = models[i].variance_pairs[static_cast<std::size_t>(c)].target_var;
                        trace(r, 2 + 2 * c) = models[i].variance_pairs[static_cast<std::size_t>(c)].background_var;
                    }
                    report.variance_pairs.push_back(models[i].variance_pairs);
                }
                timed("write", [&] { write_matrix_csv(sweep_out, trace, header); });
                report.extra["pca_baseline"] = model_json(baseline);
                write_report(sweep_report, report);
                out << "swept " << models.size() << " alphas; trace written to " << sweep_out << "\n";
                return 0;
            }

            report.seed = select_seed;
            report.parameters["p"] = select_p;
            const auto result = timed("select", [&] { return auto_select(covs, grid, k, select_p, select_seed); });
            for (const auto& m : result.per_alpha_models) report.variance_pairs.push_back(m.variance_pairs);
            report.medoid_alphas = result.medoid_alphas;
            report.cluster_labels = result.cluster_labels;
            report.extra["medoid_indices"] = result.medoid_indices;
            report.extra["pca_baseline"] = model_json(result.pca_baseline);
            auto files = json::array();
            timed("write", [&] {
                const auto pca_path = with_suffix(select_prefix, "pca");
                write_matrix_csv(pca_path, transform(result.pca_baseline, target.data), component_header("pc", k));
                report.extra["pca_embedding"] = pca_path;
                for (std::size_t i = 0; i < result.medoid_indices.size(); ++i) {
                    const auto& model = result.per_alpha_models[result.medoid_indices[i]];
                    const auto path = with_suffix(select_prefix, "alpha" + std::to_string(i + 1));
                    write_matrix_csv(path, transform(model, target.data), component_header("cpc", k));
                    files.push_back({{"alpha", model.alpha}, {"path", path}});
                }
            });
            report.extra["medoid_embeddings"] = files;
            write_report(select_report, report);
            out << "selected alphas:";
            for (double a : result.medoid_alphas) out << " " << format_alpha(a);
            out << "\n";
            return 0;
        }

        if (*transform_cmd || *denoise_cmd || *weights_cmd) {
            const auto& data = *transform_cmd ? tr_data : (*denoise_cmd ? dn_data : w_data);
            const auto& fit_o = *transform_cmd ? tr_fit : (*denoise_cmd ? dn_fit : w_fit);
            const auto target = data.load_target();
            const auto background = data.load_background();
            const auto model = fit_o.fit_model(CovariancePair::from_data(target.data, background));
            if (*transform_cmd) {
                const Matrix rows = read_matrix_csv(tr_input, CsvOptions{data.header, {}}).data;
                const auto center = tr_center == "background" ? CenterWith::Background : CenterWith::Target;
                write_matrix_csv(tr_out, transform(model, rows, center), component_header("cpc", model.k()));
                out << "projected " << rows.rows() << " rows to " << tr_out << "\n";
            } else if (*denoise_cmd) {
                const Matrix rows =
                    dn_input.empty() ? target.data : read_matrix_csv(dn_input, CsvOptions{data.header, {}}).data;
                write_matrix_csv(dn_out, denoise(model, rows));
                out << "denoised " << rows.rows() << " rows to " << dn_out << "\n";
            } else {
                const Vector w = feature_weights(model, w_component);
                const Matrix col = w;
                if (w_out.empty()) {
                    out << format_matrix_csv(col);
                } else {
                    write_matrix_csv(w_out, col, {"weight"});
                }
            }
            return 0;
        }

        if (*kernel_cmd) {
            report.command = "kernel-fit";
            report.parameters = kf_data.to_json();
            KernelSpec spec{parse_kernel_kind(kf_kernel), kf_degree, kf_coef0, kf_gamma};
            report.parameters["kernel"] = kernel_kind_name(spec.kind);
            report.parameters["degree"] = kf_degree;
            report.parameters["coef0"] = kf_coef0;
            report.parameters["gamma"] = kf_gamma;
            report.parameters["alpha"] = kf_alpha;
            report.parameters["k"] = kf_k;
            const auto target = timed("load", [&] { return kf_data.load_target(); });
            const auto background = timed("load", [&] { return kf_data.load_background(); });
            const auto model = timed("fit", [&] { return fit_kernel(target.data, background, spec, kf_alpha, kf_k); });
            timed("write", [&] {
                write_matrix_csv(kf_out, model.training_embedding.topRows(model.n), component_header("kcpc", kf_k));
                if (!kf_out_background.empty()) {
                    write_matrix_csv(kf_out_background, model.training_embedding.bottomRows(model.m),
                                     component_header("kcpc", kf_k));
                }
            });
            report.alphas = {kf_alpha};
            report.extra["eigenvalues"] =
                std::vector<double>(model.eigenvalues.data(), model.eigenvalues.data() + model.eigenvalues.size());
            write_report(kf_report, report);
            out << "kernel embedding written to " << kf_out << "\n";
            return 0;
        }

        if (*verify_cmd) {
            report.command = "verify";
            report.seed = v_seed;
            report.parameters = {{"d", v_d}, {"samples", v_samples}, {"grid", v_grid}, {"eps", v_eps},
                                 {"simdiag", v_simdiag}};
            const auto grid = parse_grid(v_grid);
            const auto pair = gen_random_pair(v_d, v_simdiag, v_seed);
            const bool keep_cloud = !v_cloud.empty();
            const auto cert = timed("certify", [&] {
                return certify_frontier(pair.target_cov, pair.background_cov, grid, v_samples, v_seed + 1, v_eps,
                                        keep_cloud);
            });
            const auto tangency =
                timed("tangency", [&] { return tangency_check(pair.target_cov, pair.background_cov, grid); });
            const bool monotone = trace_is_monotone(cert.trace, 1e-9);

            report.alphas = grid.values();
            for (const auto& t : cert.trace) report.variance_pairs.push_back({t.pair});
            json certificate{{"passed", cert.passed},
                             {"eps", cert.eps},
                             {"samples", cert.samples},
                             {"max_dominance_margin", cert.max_dominance_margin},
                             {"max_frontier_gap", cert.max_frontier_gap},
                             {"violations", cert.violations.size()}};
            auto secants = json::array();
            for (const auto& s : tangency.secants) {
                secants.push_back({{"alpha_lo", s.alpha_lo},
                                   {"alpha_hi", s.alpha_hi},
                                   {"slope", s.slope},
                                   {"lower", s.lower},
                                   {"upper", s.upper},
                                   {"bracketed", s.bracketed}});
            }
            report.extra["certificate"] = certificate;
            report.extra["tangency"] = {{"passed", tangency.passed}, {"secants", secants}};
            report.extra["trace_monotone"] = monotone;
            bool passed = cert.passed && tangency.passed && monotone;
            if (v_simdiag) {
                const auto sd = simdiag_check(pair.target_cov, pair.background_cov, grid);
                report.extra["simdiag"] = {{"passed", sd.passed}, {"max_angle", sd.max_angle},
                                           {"vertices", sd.vertices.size()}};
                passed = passed && sd.passed;
            }
            report.extra["passed"] = passed;

            if (!v_trace.empty()) {
                Matrix trace(static_cast<Eigen::Index>(cert.trace.size()), 3);
                for (std::size_t i = 0; i < cert.trace.size(); ++i) {
                    const auto r = static_cast<Eigen::Index>(i);
                    trace.row(r) << cert.trace[i].alpha, cert.trace[i].pair.target_var,
                        cert.trace[i].pair.background_var;
                }
                write_matrix_csv(v_trace, trace, {"alpha", "target_var", "background_var"});
            }
            if (keep_cloud) {
                Matrix cloud(static_cast<Eigen::Index>(cert.cloud.size()), 2);
                for (std::size_t i = 0; i < cert.cloud.size(); ++i) {
                    cloud.row(static_cast<Eigen::Index>(i)) << cert.cloud[i].target_var, cert.cloud[i].background_var;
                }
                write_matrix_csv(v_cloud, cloud, {"target_var", "background_var"});
            }
            write_report(v_report, report);
            out << (passed ? "PASSED" : "FAILED") << ": max dominance margin " << cert.max_dominance_margin
                << " (eps " << v_eps << "), " << tangency.secants.size() << " secants checked\n";
            return 0;
        }

        if (*serve_cmd) {
            serve_config.max_upload_bytes = static_cast<std::size_t>(serve_max_mb * (1 << 20));
            ExplorerService service(serve_config);
            service.listen([&](int port) {
                out << "serving on http://" << serve_config.host << ":" << port << "\n" << std::flush;
            });
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace clens
