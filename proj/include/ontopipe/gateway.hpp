#pragma once
// Provider-agnostic chat interface with ordered conversation history, plus a
// record/replay transcript store so pipeline behavior is testable without a
// live model.
//
// Transcripts are JSONL: one object per line with exactly the TurnRecord
// fields, appended as turns happen. A replay session is constructed from a
// transcript and never touches the network; the next recorded user turn must
// match the sent prompt byte-for-byte.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "ontopipe/errors.hpp"

namespace ontopipe {

struct TurnRecord {
    int index = 0;
    std::string role;  // system | user | assistant
    std::string content;
    std::string model_id;
    std::string timestamp;  // UTC instant, recorded mode only

    friend bool operator==(const TurnRecord&, const TurnRecord&) = default;
};

inline void to_json(nlohmann::json& j, const TurnRecord& t) {
    j = {{"index", t.index},
         {"role", t.role},
         {"content", t.content},
         {"model_id", t.model_id},
         {"timestamp", t.timestamp}};
}

inline void from_json(const nlohmann::json& j, TurnRecord& t) {
    j.at("index").get_to(t.index);
    j.at("role").get_to(t.role);
    j.at("content").get_to(t.content);
    j.at("model_id").get_to(t.model_id);
    if (j.contains("timestamp")) j.at("timestamp").get_to(t.timestamp);
}

struct ProviderConfig {
    std::string endpoint = "https://api.openai.com/v1/chat/completions";
    std::string model_id = "gpt-4o";
    int max_output_tokens = 4096;
    double temperature = 0.0;
    std::chrono::seconds request_timeout{120};
    int max_retries = 3;
    std::string credential_env_var = "OPENAI_API_KEY";
    // Provider field mapping.
    std::string response_content_pointer = "/choices/0/message/content";
    long long context_window = 128000;  // tokens; gates warnings only
};

// ceil(chars / 4); a coarse heuristic used only to warn about prompts that
// may exceed provider limits.
inline long long estimate_tokens(const std::string& text) {
    return static_cast<long long>((text.size() + 3) / 4);
}

inline std::string utc_now_iso8601() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

// Validates the TurnRecord invariants: contiguous indices from 0, roles
// alternating user/assistant after an optional leading system turn.
inline void validate_transcript(const std::vector<TurnRecord>& turns) {
    size_t start = 0;
    if (!turns.empty() && turns[0].role == "system") start = 1;
    for (size_t i = 0; i < turns.size(); ++i) {
        if (turns[i].index != static_cast<int>(i))
            throw Error("transcript indices not contiguous at " + std::to_string(i));
        if (i < start) continue;
        const std::string expected = ((i - start) % 2 == 0) ? "user" : "assistant";
        if (turns[i].role != expected)
            throw Error("transcript turn " + std::to_string(i) + " has role '" + turns[i].role +
                        "', expected '" + expected + "'");
    }
}

inline std::vector<TurnRecord> read_transcript(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open transcript: " + path.string());
    std::vector<TurnRecord> turns;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        turns.push_back(nlohmann::json::parse(line).get<TurnRecord>());
    }
    validate_transcript(turns);
    return turns;
}

inline void write_transcript(const std::filesystem::path& path,
                             const std::vector<TurnRecord>& turns) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write transcript: " + path.string());
    for (const TurnRecord& t : turns) out << nlohmann::json(t).dump() << "\n";
}

struct HttpResponse {
    bool transport_ok = false;  // false: connection-level failure
    int status = 0;
    std::string body;
    std::string error;
};

// Minimal POST transport so tests can stub the network away.
class Transport {
public:
    virtual ~Transport() = default;
    virtual HttpResponse post(const std::string& url, const std::string& bearer_token,
                              const std::string& json_body, std::chrono::seconds timeout) = 0;
};

// A chat session: ordered history, send() appends a user turn and an
// assistant turn. Single-owner; distinct sessions are independent.
class ChatSession {
public:
    virtual ~ChatSession() = default;
    virtual std::string send(const std::string& prompt) = 0;
    const std::vector<TurnRecord>& history() const { return history_; }

protected:
    std::vector<TurnRecord> history_;
};

// Replays a recorded transcript. No transport exists on this path, so replay
// mode cannot generate network activity by construction.
class ReplaySession : public ChatSession {
public:
    explicit ReplaySession(std::vector<TurnRecord> transcript)
        : transcript_(std::move(transcript)) {
        validate_transcript(transcript_);
        if (!transcript_.empty() && transcript_[0].role == "system") {
            history_.push_back(transcript_[0]);
            cursor_ = 1;
        }
    }

    static std::unique_ptr<ReplaySession> open(const std::filesystem::path& path) {
        return std::make_unique<ReplaySession>(read_transcript(path));
    }

    std::string send(const std::string& prompt) override {
        if (cursor_ + 1 >= transcript_.size())
            throw ReplayDivergenceError(static_cast<int>(cursor_), "<recorded turn>",
                                        "<transcript exhausted>");
        const TurnRecord& user = transcript_[cursor_];
        if (user.content != prompt)
            throw ReplayDivergenceError(user.index, prefix_of(user.content), prefix_of(prompt));
        const TurnRecord& assistant = transcript_[cursor_ + 1];
        history_.push_back(user);
        history_.push_back(assistant);
        cursor_ += 2;
        return assistant.content;
    }

private:
    std::vector<TurnRecord> transcript_;
    size_t cursor_ = 0;

    static std::string prefix_of(const std::string& s) {
        return s.size() <= 80 ? s : s.substr(0, 80) + "...";
    }
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

// Live session over an HTTP chat-completions endpoint. Records both sides of
// every exchange to a JSONL sink as it goes. The credential is resolved from
// the configured environment variable before any network use.
class LiveSession : public ChatSession {
public:
    LiveSession(ProviderConfig config, std::shared_ptr<Transport> transport,
                std::filesystem::path sink_path, Sleeper sleeper = {})
        : config_(std::move(config)),
          transport_(std::move(transport)),
          sink_path_(std::move(sink_path)),
          sleeper_(std::move(sleeper)) {
        if (!sleeper_)
            sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
        const char* key = std::getenv(config_.credential_env_var.c_str());
        if (!key || !*key) throw CredentialMissingError(config_.credential_env_var);
        token_ = key;
        if (!sink_path_.empty()) {
            sink_.open(sink_path_, std::ios::binary | std::ios::trunc);
            if (!sink_) throw Error("cannot open transcript sink: " + sink_path_.string());
        }
    }

    std::string send(const std::string& prompt) override {
        nlohmann::json messages = nlohmann::json::array();
        for (const TurnRecord& t : history_)
            messages.push_back({{"role", t.role}, {"content", t.content}});
        messages.push_back({{"role", "user"}, {"content", prompt}});

        nlohmann::json request = {{"model", config_.model_id},
                                  {"messages", messages},
                                  {"max_tokens", config_.max_output_tokens},
                                  {"temperature", config_.temperature}};

        HttpResponse response = post_with_retries(request.dump());
        std::string content = extract_content(response.body);

        append_turn("user", prompt);
        append_turn("assistant", content);
        return content;
    }

private:
    ProviderConfig config_;
    std::shared_ptr<Transport> transport_;
    std::filesystem::path sink_path_;
    Sleeper sleeper_;
    std::string token_;
    std::ofstream sink_;
    std::mutex sink_mutex_;

    HttpResponse post_with_retries(const std::string& body) {
        std::string last_error;
        for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
            if (attempt > 0) {
                // Exponential backoff starting at 1s, doubling, capped at 32s.
                sleeper_(std::chrono::milliseconds(
                    std::min(32000L, 1000L << std::min(attempt - 1, 5))));
            }
            HttpResponse r =
                transport_->post(config_.endpoint, token_, body, config_.request_timeout);
            if (r.transport_ok && r.status < 500 && r.status != 429) {
                if (r.status >= 200 && r.status < 300) return r;
                throw TransportError("chat endpoint returned HTTP " + std::to_string(r.status) +
                                     ": " + r.body.substr(0, 200));
            }
            last_error = r.transport_ok ? "HTTP " + std::to_string(r.status) : r.error;
        }
        throw TransportError("chat request failed after " +
                             std::to_string(config_.max_retries + 1) + " attempts: " + last_error);
    }

    std::string extract_content(const std::string& body) const {
        nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
        if (j.is_discarded())
            throw TransportError("chat endpoint returned unparseable JSON");
        nlohmann::json::json_pointer ptr(config_.response_content_pointer);
        if (!j.contains(ptr) || !j.at(ptr).is_string())
            throw TransportError("response has no text at " + config_.response_content_pointer);
        return j.at(ptr).get<std::string>();
    }

    void append_turn(const std::string& role, const std::string& content) {
        TurnRecord turn;
        turn.index = static_cast<int>(history_.size());
        turn.role = role;
        turn.content = content;
        turn.model_id = config_.model_id;
        turn.timestamp = utc_now_iso8601();
        history_.push_back(turn);
        if (sink_.is_open()) {
            std::lock_guard<std::mutex> lock(sink_mutex_);
            sink_ << nlohmann::json(turn).dump() << "\n";
            sink_.flush();
        }
    }
};

}  // namespace ontopipe
