#pragma once

#include <json.hpp>

#include "pulseforge/network.hpp"
#include "pulseforge/verify.hpp"

namespace pulseforge {

using Json = nlohmann::ordered_json;

// {status, leader, outputs, pulses_by_category, deliveries,
//  deliveries_to_halted, seed}; keys always in this order.
Json outcome_to_json(const Outcome& outcome);

// {step, edge:[from,to], receiver_state_digest, actions:[...], in_flight_total}
Json trace_event_to_json(const TraceEvent& event);

Json action_to_json(const Action& action);

Json checks_to_json(const VerifyReport& report);

}  // namespace pulseforge
