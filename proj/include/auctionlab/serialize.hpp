#pragma once

#include "auctionlab/core.hpp"
#include "auctionlab/engine.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace auctionlab {

using Json = nlohmann::ordered_json;

// {"bidders":[{"arrival":"p/q","departure":"p/q","value":"p/q"}...],"tie_break":[1-based ids],"distinct":bool}
Json instance_to_json(const Instance& instance);
Instance instance_from_json(const Json& j);  // throws InputError with a path to the bad field
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

Json trace_event_to_json(const TraceEvent& e);  // bidder ids are 1-based
void write_trace_jsonl(std::ostream& out, const EventTrace& trace);
Json outcome_to_json(const Outcome& o);
Json allocation_to_json(const AllocationResult& a);

}  // namespace auctionlab
