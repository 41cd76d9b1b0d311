#include "vanet/serialize.hpp"

#include <fstream>

#include <json.hpp>

#include "vanet/errors.hpp"

namespace vanet {

namespace {

// Insertion-ordered JSON keeps the emitted key order fixed, which the
// byte-identical reproducibility contract relies on.
using ojson = nlohmann::ordered_json;

ojson cluster_to_json(const Cluster& c) {
    ojson j;
    j["member_ids"] = c.member_ids;
    j["centroid_m"] = c.centroid_m;
    j["gateway_id"] = c.gateway_id;
    j["span_m"] = c.span_m;
    return j;
}

ojson row_to_json(const SweepRow& row) {
    ojson j;
    j["length_m"] = row.length_m;
    j["radius_m"] = row.radius_m;
    j["mean_k"] = row.mean_k;
    j["mean_m"] = row.mean_m;
    j["p_clustered_analytic"] = row.p_clustered_analytic;
    j["p_noncluster_analytic"] = row.p_noncluster_analytic;
    j["p_clustered_mc"] = row.p_clustered_mc;
    j["p_noncluster_mc"] = row.p_noncluster_mc;
    j["mc_halfwidth"] = row.mc_halfwidth;
    return j;
}

} // namespace

std::string to_json_text(const ClusterStructure& cs) {
    ojson j;
    j["street_id"] = cs.street_id;
    j["n"] = cs.n;
    j["k"] = cs.k;
    j["m"] = cs.m;
    j["clusters"] = ojson::array();
    for (const Cluster& c : cs.clusters) j["clusters"].push_back(cluster_to_json(c));
    j["singleton_ids"] = cs.singleton_ids;
    return j.dump(2) + "\n";
}

std::string to_json_text(const ConnectivityReport& report) {
    ojson j;
    j["p_vehicle"] = report.p_vehicle;
    j["p_system_clustered"] = report.p_system_clustered;
    j["p_system_noncluster"] = report.p_system_noncluster;
    j["mc_clustered"] = {{"estimate", report.mc_clustered.estimate},
                         {"halfwidth_95", report.mc_clustered.halfwidth_95}};
    j["mc_noncluster"] = {{"estimate", report.mc_noncluster.estimate},
                          {"halfwidth_95", report.mc_noncluster.halfwidth_95}};
    j["trials"] = report.trials;
    return j.dump(2) + "\n";
}

std::string to_json_text(const std::vector<SweepRow>& rows) {
    ojson j = ojson::array();
    for (const SweepRow& row : rows) j.push_back(row_to_json(row));
    return j.dump(2) + "\n";
}

std::string to_json_text(const RunManifest& manifest) {
    ojson j;
    j["command"] = manifest.command;
    j["config_path"] = manifest.config_path;
    j["master_seed"] = manifest.master_seed;
    j["tool_version"] = manifest.tool_version;
    j["output_paths"] = manifest.output_paths;
    ojson params = ojson::object();
    for (const auto& [key, value] : manifest.parameters) params[key] = value;
    j["parameters"] = std::move(params);
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path + " for writing");
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!file) throw IoError("write failed for " + path);
}

} // namespace vanet
