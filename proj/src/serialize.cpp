#include "auctionlab/serialize.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace auctionlab {

namespace {

Rational rational_field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw InputError(where + ": missing \"" + key + "\"");
  const Json& v = obj.at(key);
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(where + "." + key + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(std::to_string(v.get<long long>()));
  throw InputError(where + "." + key + ": expected a \"p/q\" string");
}

}  // namespace

Json instance_to_json(const Instance& instance) {
  Json bidders = Json::array();
  for (const auto& b : instance.bidders())
    bidders.push_back({{"arrival", to_string(b.arrival)},
                       {"departure", to_string(b.departure)},
                       {"value", to_string(b.value)}});
  Json tb = Json::array();
  for (BidderId id : instance.tie_break()) tb.push_back(id + 1);
  return {{"bidders", bidders}, {"tie_break", tb}, {"distinct", instance.distinct()}};
}

Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("instance: expected a JSON object");
  if (!j.contains("bidders") || !j.at("bidders").is_array()) throw InputError("instance: missing \"bidders\" array");
  std::vector<BidderType> bidders;
  const Json& arr = j.at("bidders");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "bidders[" + std::to_string(i) + "]";
    if (!arr[i].is_object()) throw InputError(where + ": expected an object");
    bidders.push_back({rational_field(arr[i], "arrival", where), rational_field(arr[i], "departure", where),
                       rational_field(arr[i], "value", where)});
  }
  std::vector<BidderId> tie_break;
  if (j.contains("tie_break")) {
    const Json& tb = j.at("tie_break");
    if (!tb.is_array()) throw InputError("tie_break: expected an array");
    for (const Json& id : tb) {
      if (!id.is_number_integer() || id.get<long long>() < 1)
        throw InputError("tie_break: entries must be 1-based bidder ids");
      tie_break.push_back(static_cast<BidderId>(id.get<long long>() - 1));
    }
  }
  bool distinct = false;
  if (j.contains("distinct")) {
    if (!j.at("distinct").is_boolean()) throw InputError("distinct: expected a boolean");
    distinct = j.at("distinct").get<bool>();
  }
  return Instance(std::move(bidders), std::move(tie_break), distinct);
}

Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("instance JSON: ") + e.what());
  }
  return instance_from_json(j);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_instance(ss.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Json trace_event_to_json(const TraceEvent& e) {
  return {{"time", to_string(e.time)},          {"kind", to_string(e.kind)},
          {"bidder", e.bidder + 1},              {"tau_before", to_string(e.tau_before)},
          {"tau_after", to_string(e.tau_after)}, {"v_max", to_string(e.v_max)}};
}

void write_trace_jsonl(std::ostream& out, const EventTrace& trace) {
  for (const auto& e : trace) out << trace_event_to_json(e).dump() << '\n';
}

Json outcome_to_json(const Outcome& o) {
  Json j;
  j["sold"] = o.winner.has_value();
  j["winner"] = o.winner ? Json(*o.winner + 1) : Json(nullptr);
  j["allocation_time"] = o.allocation_time ? Json(to_string(*o.allocation_time)) : Json(nullptr);
  j["price"] = to_string(o.price);
  j["revenue"] = to_string(o.revenue);
  j["welfare"] = to_string(o.welfare);
  return j;
}

Json allocation_to_json(const AllocationResult& a) {
  Json j;
  j["winner"] = a.winner ? Json(*a.winner + 1) : Json(nullptr);
  j["threshold"] = to_string(a.threshold);
  j["active_winner"] = a.active_winner;
  return j;
}

}  // namespace auctionlab
