// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <pocval/synthesizer.hpp>
#include <pocval/errors.hpp>

#include <cstdlib>
#include <utility>

namespace pocval
{
namespace
{
struct SplitUrl
{
    std::string base;   // scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string& url)
{
    const auto scheme = url.find("://");
    if (scheme == std::string::npos)
        throw ConfigError{"endpoint URL needs a scheme: " + url};
    const auto path = url.find('/', scheme + 3);
    if (path == std::string::npos)
        return {url, "/"};
    return {url.substr(0, path), url.substr(path)};
}

// Models wrap JSON in markdown fences or prose despite instructions; keep
// the first top-level object.
std::string extract_object(const std::string& content)
{
    const auto begin = content.find('{');
    const auto end = content.rfind('}');
    if (begin == std::string::npos || end == std::string::npos || end < begin)
        throw SchemaError{"reply contains no JSON object"};
    return content.substr(begin, end - begin + 1);
}

class ChatClient
{
public:
    explicit ChatClient(RemoteConfig cfg) : cfg_{std::move(cfg)}, url_{split_url(cfg_.url)} {}

    // One self-contained exchange: only the system and user message are ever
    // sent, so nothing leaks between requests.
    std::string complete(const std::string& system, const std::string& user) const
    {
        httplib::Client client{url_.base};
        const auto secs = static_cast<time_t>(cfg_.timeout_secs);
        const auto usecs =
            static_cast<time_t>((cfg_.timeout_secs - static_cast<double>(secs)) * 1e6);
        client.set_connection_timeout(secs, usecs);
        client.set_read_timeout(secs, usecs);
        client.set_write_timeout(secs, usecs);

        httplib::Headers headers;
        if (const char* key = std::getenv(cfg_.api_key_env.c_str()); key && *key)
            headers.emplace("Authorization", std::string{"Bearer "} + key);

        nlohmann::ordered_json body;
        body["model"] = cfg_.model;
        body["messages"] = {{{"role", "system"}, {"content", system}},
                            {{"role", "user"}, {"content", user}}};
        body["temperature"] = 0;

        auto res = client.Post(url_.path, headers, body.dump(), "application/json");
        if (!res)
            throw Error{"transport failure: " + httplib::to_string(res.error())};
        if (res->status != 200)
            throw Error{"endpoint returned status " + std::to_string(res->status)};
        const auto reply = nlohmann::json::parse(res->body, nullptr, false);
        if (reply.is_discarded())
            throw SchemaError{"endpoint reply is not JSON"};
        try
        {
            return reply.at("choices").at(0).at("message").at("content").get<std::string>();
        }
        catch (const nlohmann::json::exception&)
        {
            throw SchemaError{"endpoint reply has no choices[0].message.content"};
        }
    }

    int max_retries() const
    {
        return cfg_.max_retries;
    }

private:
    RemoteConfig cfg_;
    SplitUrl url_;
};

class RemoteBackend final : public SynthesisBackend
{
public:
    explicit RemoteBackend(RemoteConfig cfg) : client_{std::move(cfg)} {}

    std::vector<PoC> propose(const SynthesisRequest& req) override
    {
        if (!req.unit)
            throw SynthesisFailed{"synthesis request has no contract"};
        const PromptSections prompt = assemble_prompt(req);
        std::string last_error;
        for (int attempt = 0; attempt <= client_.max_retries(); ++attempt)
        {
            try
            {
                const std::string content = client_.complete(prompt.system, prompt.user);
                PoC poc = PoC::from_json(nlohmann::json::parse(extract_object(content)));
                poc.meta = PoCMeta{};
                if (auto violations = validate(poc, *req.unit); !violations.empty())
                    throw SchemaError{"proposed script is invalid: " + violations.front()};
                return {std::move(poc)};
            }
            catch (const std::exception& e)
            {
                last_error = e.what();
            }
        }
        throw SynthesisFailed{"remote synthesis failed: " + last_error};
    }

    std::string name() const override
    {
        return "remote";
    }

private:
    ChatClient client_;
};

class RemoteJudge final : public ProfitJudge
{
public:
    explicit RemoteJudge(RemoteConfig cfg) : client_{std::move(cfg)} {}

    Judgment judge(const std::map<std::string, bigint>& attacker_deltas,
                   const std::string& context) override
    {
        nlohmann::ordered_json deltas = nlohmann::ordered_json::object();
        for (const auto& [asset, amount] : attacker_deltas)
            deltas[asset] = to_dec(amount);
        const std::string user =
            "Attacker balance deltas per asset: " + deltas.dump() + "\n" + context;

        std::string last_error;
        for (int attempt = 0; attempt <= client_.max_retries(); ++attempt)
        {
            try
            {
                const std::string content = client_.complete(kSystem, user);
                const auto j = nlohmann::json::parse(extract_object(content));
                if (!j.is_object() || !j.contains("profit") || !j["profit"].is_boolean() ||
                    !j.contains("reason") || !j["reason"].is_string())
                    throw SchemaError{"judge reply must be {\"profit\": bool, \"reason\": string}"};
                return Judgment{j["profit"].get<bool>(), j["reason"].get<std::string>()};
            }
            catch (const std::exception& e)
            {
                last_error = e.what();
            }
        }
        throw Error{"remote judge failed: " + last_error};
    }

private:
    static constexpr const char* kSystem =
        "You decide whether an executed exploit attempt left the attacker with a "
        "real gain. Consider whether credited assets have value; a self-minted "
        "worthless token is not profit. Reply with exactly one JSON object of the "
        "form {\"profit\": true|false, \"reason\": \"...\"} and nothing else.";

    ChatClient client_;
};
}  // namespace

std::unique_ptr<SynthesisBackend> make_remote_backend(const RemoteConfig& config)
{
    return std::make_unique<RemoteBackend>(config);
}

std::unique_ptr<ProfitJudge> make_remote_judge(const RemoteConfig& config)
{
    return std::make_unique<RemoteJudge>(config);
}

}  // namespace pocval
