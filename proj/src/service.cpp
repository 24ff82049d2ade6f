#include "clens/service.hpp"

#include "clens/alpha_select.hpp"
#include "clens/errors.hpp"

#include <httplib.h>

#include <charconv>
#include <sstream>

namespace clens {

using nlohmann::json;

struct ExplorerService::Session {
    std::uint64_t version = 0;
    Matrix target;
    Matrix background;
    std::vector<int> labels;
    CovariancePair covs;
};

struct ExplorerService::Server {
    httplib::Server http;
};

namespace {

/// Query parameters that fail validation map to 422.
class UnprocessableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ServiceResponse error_response(int status, const std::string& message) {
    return {status, json{{"error", message}}.dump(), false};
}

std::optional<std::string> param(const QueryParams& q, const std::string& key) {
    auto it = q.find(key);
    if (it == q.end()) return std::nullopt;
    return it->second;
}

long long int_param(const QueryParams& q, const std::string& key, long long fallback) {
    auto raw = param(q, key);
    if (!raw) return fallback;
    long long v = 0;
    auto [p, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), v);
    if (ec != std::errc() || p != raw->data() + raw->size()) {
        throw UnprocessableError("parameter '" + key + "' must be an integer, got '" + *raw + "'");
    }
    return v;
}

double alpha_param(const QueryParams& q) {
    auto raw = param(q, "alpha");
    if (!raw) throw UnprocessableError("missing parameter 'alpha'");
    try {
        return parse_alpha(*raw);
    } catch (const ValidationError& e) {
        throw UnprocessableError(e.what());
    }
}

int components_param(const QueryParams& q, Eigen::Index d, long long fallback) {
    const long long k = int_param(q, "k", std::min<long long>(fallback, d));
    if (k < 1 || k > d) {
        std::ostringstream msg;
        msg << "k=" << k << " must satisfy 1 <= k <= d=" << d;
        throw UnprocessableError(msg.str());
    }
    return static_cast<int>(k);
}

json matrix_rows(const Matrix& m) {
    auto rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        auto row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

template <typename Fn>
ServiceResponse guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const UnprocessableError& e) {
        return error_response(422, e.what());
    } catch (const ValidationError& e) {
        return error_response(422, e.what());
    } catch (const std::exception& e) {
        return error_response(500, e.what());
    }
}

}  // namespace

ExplorerService::ExplorerService(ServiceConfig config) : config_(std::move(config)) {}

ExplorerService::~ExplorerService() { stop(); }

std::shared_ptr<const ExplorerService::Session> ExplorerService::snapshot() const {
    std::shared_lock lock(state_mutex_);
    return session_;
}

std::optional<std::string> ExplorerService::cached(const std::string& key) const {
    std::lock_guard lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it == cache_.end()) return std::nullopt;
    return it->second;
}

void ExplorerService::remember(const std::string& key, const std::string& body) const {
    std::lock_guard lock(cache_mutex_);
    cache_.emplace(key, body);
}

ServiceResponse ExplorerService::upload(const std::string& target_csv, const std::string& background_csv,
                                        const std::optional<std::string>& labels_csv, bool has_header) {
    auto session = std::make_shared<Session>();
    try {
        CsvOptions options;
        options.has_header = has_header;
        session->target = parse_matrix_csv(target_csv, options, "target").data;
        session->background = parse_matrix_csv(background_csv, options, "background").data;
        if (labels_csv) {
            CsvOptions label_options;
            label_options.has_header = has_header;
            label_options.label_column = 0;
            auto parsed = parse_matrix_csv(*labels_csv, label_options, "labels");
            session->labels = std::move(parsed.labels);
            if (static_cast<Eigen::Index>(session->labels.size()) != session->target.rows()) {
                std::ostringstream msg;
                msg << "labels has " << session->labels.size() << " entries, target has " << session->target.rows()
                    << " rows";
                throw ValidationError(msg.str());
            }
        }
        session->covs = CovariancePair::from_data(session->target, session->background);
    } catch (const ValidationError& e) {
        return error_response(400, e.what());
    }

    {
        std::unique_lock lock(state_mutex_);
        session->version = next_version_++;
        session_ = session;
        std::lock_guard cache_lock(cache_mutex_);
        cache_.clear();
    }
    json body{{"d", session->target.cols()},
              {"n", session->target.rows()},
              {"m", session->background.rows()},
              {"version", session->version}};
    return {200, body.dump(), false};
}

ServiceResponse ExplorerService::state() const {
    auto s = snapshot();
    if (!s) return {200, json{{"loaded", false}, {"version", 0}}.dump(), false};
    json body{{"loaded", true},
              {"d", s->target.cols()},
              {"n", s->target.rows()},
              {"m", s->background.rows()},
              {"has_labels", !s->labels.empty()},
              {"version", s->version}};
    return {200, body.dump(), false};
}

ServiceResponse ExplorerService::embedding(const QueryParams& query) const {
    auto s = snapshot();
    if (!s) return error_response(409, "no datasets loaded; POST /datasets first");
    return guarded([&] {
        const double alpha = alpha_param(query);
        const int k = components_param(query, s->covs.dim(), kDefaultComponents);
        const bool with_background = int_param(query, "include_background", 0) != 0;

        std::ostringstream key;
        key << "embedding|" << s->version << '|' << format_alpha(alpha) << '|' << k << '|' << with_background;
        if (auto hit = cached(key.str())) return ServiceResponse{200, *hit, true};

        const auto model = fit(s->covs, alpha, k);
        json body;
        body["version"] = s->version;
        body["alpha"] = alpha_to_json(alpha);
        body["k"] = k;
        body["points"] = matrix_rows(transform(model, s->target));
        body["labels"] = s->labels;
        body["variance_pairs"] = pairs_to_json(model.variance_pairs);
        body["eigenvalues"] = vector_json(model.eigenvalues);
        if (with_background) body["background_points"] = matrix_rows(transform(model, s->background));
        auto text = body.dump();
        remember(key.str(), text);
        return ServiceResponse{200, std::move(text), false};
    });
}

ServiceResponse ExplorerService::sweep(const QueryParams& query) const {
    auto s = snapshot();
    if (!s) return error_response(409, "no datasets loaded; POST /datasets first");
    return guarded([&] {
        const std::string grid_spec = param(query, "grid").value_or("0.1:1000:40");
        AlphaGrid grid = [&] {
            try {
                return parse_grid(grid_spec);
            } catch (const ValidationError& e) {
                throw UnprocessableError(e.what());
            }
        }();
        const int k = components_param(query, s->covs.dim(), kDefaultComponents);
        const long long p = int_param(query, "p", 3);
        const long long seed = int_param(query, "seed", 0);
        if (p < 1 || static_cast<std::size_t>(p) > grid.size()) {
            throw UnprocessableError("p must be between 1 and the grid size");
        }

        std::ostringstream key;
        key << "sweep|" << s->version << '|' << grid_spec << '|' << k << '|' << p << '|' << seed;
        if (auto hit = cached(key.str())) return ServiceResponse{200, *hit, true};

        const auto result = auto_select(s->covs, grid, k, static_cast<int>(p), static_cast<std::uint64_t>(seed));
        json body;
        body["version"] = s->version;
        body["alphas"] = grid.values();
        auto pairs = json::array();
        auto top = json::array();
        for (const auto& m : result.per_alpha_models) {
            pairs.push_back(pairs_to_json(m.variance_pairs));
            top.push_back({m.variance_pairs.front().target_var, m.variance_pairs.front().background_var});
        }
        body["variance_pairs"] = pairs;
        body["top_variance_pairs"] = top;
        body["affinity"] = matrix_rows(result.affinity.values());
        body["cluster_labels"] = result.cluster_labels;
        body["medoid_alphas"] = result.medoid_alphas;
        body["medoid_indices"] = result.medoid_indices;
        body["pca_baseline"] = {{"alpha", 0.0},
                                {"variance_pairs", pairs_to_json(result.pca_baseline.variance_pairs)},
                                {"eigenvalues", vector_json(result.pca_baseline.eigenvalues)}};
        auto text = body.dump();
        remember(key.str(), text);
        return ServiceResponse{200, std::move(text), false};
    });
}

ServiceResponse ExplorerService::weights(const QueryParams& query) const {
    auto s = snapshot();
    if (!s) return error_response(409, "no datasets loaded; POST /datasets first");
    return guarded([&] {
        const double alpha = alpha_param(query);
        const int k = components_param(query, s->covs.dim(), kDefaultComponents);
        const long long component = int_param(query, "component", 0);
        if (component < 0 || component >= k) {
            std::ostringstream msg;
            msg << "component " << component << " out of range [0, " << k << ")";
            throw UnprocessableError(msg.str());
        }
        std::ostringstream key;
        key << "weights|" << s->version << '|' << format_alpha(alpha) << '|' << k << '|' << component;
        if (auto hit = cached(key.str())) return ServiceResponse{200, *hit, true};

        const auto model = fit(s->covs, alpha, k);
        auto text = vector_json(feature_weights(model, component)).dump();
        remember(key.str(), text);
        return ServiceResponse{200, std::move(text), false};
    });
}

void ExplorerService::listen(const std::function<void(int)>& on_bound) {
    server_ = std::make_unique<Server>();
    auto& http = server_->http;
    http.set_payload_max_length(config_.max_upload_bytes);
    http.set_default_headers({{"Access-Control-Allow-Origin", config_.cors_origin},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});

    auto reply = [](httplib::Response& res, const ServiceResponse& r) {
        res.status = r.status;
        res.set_header("X-Cache", r.cache_hit ? "hit" : "miss");
        res.set_content(r.body, "application/json");
    };
    auto query_of = [](const httplib::Request& req) {
        QueryParams q;
        for (const auto& [k, v] : req.params) q.emplace(k, v);
        return q;
    };

    http.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    http.Post("/datasets", [this, reply](const httplib::Request& req, httplib::Response& res) {
        if (!req.is_multipart_form_data() || !req.has_file("target") || !req.has_file("background")) {
            reply(res, error_response(400, "expected multipart form fields 'target' and 'background'"));
            return;
        }
        std::optional<std::string> labels;
        if (req.has_file("labels")) labels = req.get_file_value("labels").content;
        const bool header = req.has_file("has_header") && req.get_file_value("has_header").content == "1";
        reply(res, upload(req.get_file_value("target").content, req.get_file_value("background").content, labels,
                          header));
    });
    http.Get("/embedding", [this, reply, query_of](const httplib::Request& req, httplib::Response& res) {
        reply(res, embedding(query_of(req)));
    });
    http.Get("/sweep", [this, reply, query_of](const httplib::Request& req, httplib::Response& res) {
        reply(res, sweep(query_of(req)));
    });
    http.Get("/weights", [this, reply, query_of](const httplib::Request& req, httplib::Response& res) {
        reply(res, weights(query_of(req)));
    });
    http.Get("/state", [this, reply](const httplib::Request&, httplib::Response& res) { reply(res, state()); });

    int port = config_.port;
    if (port == 0) {
        port = http.bind_to_any_port(config_.host);
    } else if (!http.bind_to_port(config_.host, port)) {
        port = -1;
    }
    if (port < 0) throw std::runtime_error("cannot bind " + config_.host + ":" + std::to_string(config_.port));
    if (on_bound) on_bound(port);
    http.listen_after_bind();
}

void ExplorerService::stop() {
    if (server_) server_->http.stop();
}

}  // namespace clens
