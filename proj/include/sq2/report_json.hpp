#pragma once

#include "sq2/verify.hpp"

#include <json.hpp>

namespace sq2 {

/* Machine-readable report; identical verdicts to the text form. Timings live
 * under the "timings" key so byte-level comparisons can drop them. */
inline nlohmann::ordered_json report_to_json(const Report& rep)
{
    nlohmann::ordered_json j;
    j["job"] = rep.job;
    nlohmann::ordered_json params;
    for (const auto& [k, v] : rep.params)
        params[k] = v;
    j["params"] = params;
    j["seed"] = rep.seed;
    j["version"] = rep.version;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks)
        checks.push_back({ { "name", c.name }, { "status", c.status }, { "detail", c.detail } });
    j["checks"] = checks;
    nlohmann::ordered_json digests;
    for (const auto& [k, v] : rep.digests)
        digests[k] = v;
    j["digests"] = digests;
    j["note"] = rep.note;
    j["result"] = rep.passed() ? "pass" : "fail";
    j["timings"] = { { "elapsed-sec", rep.elapsedSec } };
    return j;
}

} // namespace sq2
