#pragma once

// Local HTTP/JSON service backing the interactive explorer. One dataset pair
// per process; covariances are computed on upload and shared by every query.

#include "clens/cpca.hpp"
#include "clens/io.hpp"

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

namespace clens {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8787;
    std::size_t max_upload_bytes = 256u << 20;
    std::string cors_origin = "*";
};

struct ServiceResponse {
    int status = 200;
    std::string body;
    bool cache_hit = false;
};

using QueryParams = std::multimap<std::string, std::string>;

class ExplorerService {
public:
    explicit ExplorerService(ServiceConfig config = {});
    ~ExplorerService();

    ExplorerService(const ExplorerService&) = delete;
    ExplorerService& operator=(const ExplorerService&) = delete;

    /// POST /datasets
    ServiceResponse upload(const std::string& target_csv, const std::string& background_csv,
                           const std::optional<std::string>& labels_csv, bool has_header = false);
    /// GET /embedding
    ServiceResponse embedding(const QueryParams& query) const;
    /// GET /sweep
    ServiceResponse sweep(const QueryParams& query) const;
    /// GET /weights
    ServiceResponse weights(const QueryParams& query) const;
    /// GET /state
    ServiceResponse state() const;

    /// Binds and serves until stop(). on_bound receives the bound port (useful with port 0).
    void listen(const std::function<void(int)>& on_bound = {});
    void stop();

    const ServiceConfig& config() const noexcept { return config_; }

private:
    struct Session;
    std::shared_ptr<const Session> snapshot() const;
    std::optional<std::string> cached(const std::string& key) const;
    void remember(const std::string& key, const std::string& body) const;

    ServiceConfig config_;
    mutable std::shared_mutex state_mutex_;
    std::shared_ptr<const Session> session_;
    std::uint64_t next_version_ = 1;

    mutable std::mutex cache_mutex_;
    mutable std::map<std::string, std::string> cache_;

    struct Server;
    std::unique_ptr<Server> server_;
};

}  // namespace clens
