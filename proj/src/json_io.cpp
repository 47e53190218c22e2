#include "pulseforge/json_io.hpp"

namespace pulseforge {

Json outcome_to_json(const Outcome& outcome)
{
    Json j;
    j["status"] = to_string(outcome.status);
    j["leader"] = outcome.leader ? Json(*outcome.leader) : Json(nullptr);
    Json outputs = Json::array();
    for (Output o : outcome.outputs) outputs.push_back(to_string(o));
    j["outputs"] = std::move(outputs);
    const Metrics& m = outcome.metrics;
    j["pulses_by_category"] = Json{{"upstream", m.upstream},
                                   {"leader_downstream", m.leader_downstream},
                                   {"stabilizing_leaf", m.stabilizing_leaf},
                                   {"election", m.election},
                                   {"total", m.total_sent()}};
    j["deliveries"] = m.deliveries;
    j["deliveries_to_halted"] = m.deliveries_to_halted;
    j["seed"] = outcome.seed;
    return j;
}

Json action_to_json(const Action& action)
{
    if (const auto* send = std::get_if<Send>(&action)) {
        return Json{{"send", Json{{"port", send->port}, {"count", send->count}, {"kind", to_string(send->kind)}}}};
    }
    if (const auto* declare = std::get_if<Declare>(&action)) return Json{{"declare", to_string(declare->output)}};
    return Json("halt");
}

Json trace_event_to_json(const TraceEvent& event)
{
    Json j;
    j["step"] = event.step;
    j["edge"] = Json::array({event.edge.from, event.edge.to});
    j["receiver_state_digest"] = event.receiver_state_digest;
    Json actions = Json::array();
    for (const auto& a : event.actions) actions.push_back(action_to_json(a));
    j["actions"] = std::move(actions);
    j["in_flight_total"] = event.in_flight_total;
    return j;
}

Json checks_to_json(const VerifyReport& report)
{
    Json rows = Json::array();
    for (const auto& row : report.rows) {
        rows.push_back(Json{{"name", row.name}, {"passed", row.passed}, {"detail", row.detail}});
    }
    return rows;
}

}  // namespace pulseforge
