#pragma once
// cpp-httplib-backed Transport. Kept out of gateway.hpp so replay-only users
// never compile the HTTP stack.

#include <httplib.h>

#include "ontopipe/gateway.hpp"

namespace ontopipe {

class HttpTransport : public Transport {
public:
    HttpResponse post(const std::string& url, const std::string& bearer_token,
                      const std::string& json_body, std::chrono::seconds timeout) override {
        auto split = split_url(url);
        HttpResponse out;
        httplib::Client client(split.first);
        client.set_connection_timeout(timeout.count(), 0);
        client.set_read_timeout(timeout.count(), 0);
        httplib::Headers headers = {{"Authorization", "Bearer " + bearer_token}};
        auto result = client.Post(split.second, headers, json_body, "application/json");
        if (!result) {
            out.error = httplib::to_string(result.error());
            return out;
        }
        out.transport_ok = true;
        out.status = result->status;
        out.body = result->body;
        return out;
    }

private:
    // "https://host:port/path" -> ("https://host:port", "/path")
    static std::pair<std::string, std::string> split_url(const std::string& url) {
        auto scheme = url.find("://");
        size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
        auto path_start = url.find('/', host_start);
        if (path_start == std::string::npos) return {url, "/"};
        return {url.substr(0, path_start), url.substr(path_start)};
    }
};

}  // namespace ontopipe
