#include "qesim/harness/report.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace qesim::harness {

void ExperimentReport::add_parameter(std::string name, std::string value) {
  parameters.emplace_back(std::move(name), std::move(value));
}

void ExperimentReport::add_quantity(const std::string& name, double value,
                                    double tolerance, bool quantity_pass) {
  quantities.push_back({name, value, tolerance, quantity_pass});
  if (!quantity_pass) fail(name);
}

void ExperimentReport::fail(const std::string& name) {
  pass = false;
  if (failure_name.empty()) failure_name = name;
}

std::string ExperimentReport::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : parameters) params[k] = v;
  j["parameters"] = std::move(params);
  nlohmann::ordered_json qs = nlohmann::ordered_json::array();
  for (const auto& q : quantities) {
    nlohmann::ordered_json jq;
    jq["name"] = q.name;
    jq["value"] = q.value;
    jq["tolerance"] = q.tolerance;
    jq["pass"] = q.pass;
    qs.push_back(std::move(jq));
  }
  j["quantities"] = std::move(qs);
  j["logical_cost"] = logical_cost;
  j["pass"] = pass;
  j["failure_name"] = failure_name;
  return j.dump(2) + "\n";
}

std::string transcript_to_jsonl(const Transcript& transcript) {
  std::string out;
  for (const auto& r : transcript.records()) {
    nlohmann::ordered_json j;
    j["index"] = r.index;
    j["t"] = r.logical_time;
    j["party"] = r.party;
    j["kind"] = r.kind;
    j["payload_hex"] = to_hex(r.payload);
    for (const auto& [k, v] : r.attrs) j[k] = v;
    out += j.dump();
    out += "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace qesim::harness
