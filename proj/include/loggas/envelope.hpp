#pragma once

#include <string>
#include <utility>

#include "json.hpp"

namespace loggas::cli {

using Json = nlohmann::ordered_json;

// Machine-readable run record: what was asked (command + parsed params),
// what came out (results), and how it went (diagnostics). Field order is
// fixed, so serialize(parse(text)) == text for envelopes this writer
// produced.
struct RunEnvelope {
    std::string command;
    Json params = Json::object();
    Json results = Json::object();
    Json diagnostics = Json::object();

    Json to_json() const {
        Json j = Json::object();
        j["command"] = command;
        j["params"] = params;
        j["results"] = results;
        j["diagnostics"] = diagnostics;
        return j;
    }

    std::string serialize() const { return to_json().dump(2) + "\n"; }

    static RunEnvelope parse(const std::string& text) {
        Json j = Json::parse(text);
        RunEnvelope env;
        env.command = j.at("command").get<std::string>();
        env.params = j.at("params");
        env.results = j.at("results");
        env.diagnostics = j.at("diagnostics");
        return env;
    }
};

}  // namespace loggas::cli
