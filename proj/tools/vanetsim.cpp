#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vanet/clustering.hpp"
#include "vanet/connectivity.hpp"
#include "vanet/errors.hpp"
#include "vanet/experiments.hpp"
#include "vanet/rng.hpp"
#include "vanet/scenario.hpp"
#include "vanet/serialize.hpp"

namespace {

namespace fs = std::filesystem;

std::string sanitize(const std::string& id) {
    std::string out;
    for (char c : id)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    return out.empty() ? std::string("street") : out;
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string join_numbers(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_number(values[i]);
    }
    return out;
}

void ensure_output_dir(const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw vanet::IoError("cannot create output directory " + out_dir);
}

struct ClusterArgs {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out_dir = ".";
};

int cmd_cluster(const ClusterArgs& args) {
    vanet::RoadScenario scenario = vanet::load_scenario_file(args.config_path);
    if (args.seed_given) scenario.seed = args.seed;
    ensure_output_dir(args.out_dir);

    vanet::RunManifest manifest;
    manifest.command = "cluster";
    manifest.config_path = args.config_path;
    manifest.master_seed = scenario.seed;
    manifest.tool_version = vanet::kToolVersion;
    manifest.parameters = {
        {"density_per_m", format_number(scenario.density_per_m)},
        {"coverage_radius_m", format_number(scenario.coverage_radius_m)},
        {"streets", std::to_string(scenario.streets.size())},
    };

    for (std::size_t s = 0; s < scenario.streets.size(); ++s) {
        const auto& street = scenario.streets[s];
        const auto vs = vanet::place_vehicles(street, scenario.density_per_m,
                                              vanet::derive_seed(scenario.seed, "street", s),
                                              scenario.coverage_radius_m);
        vanet::ClusterStructure cs;
        if (vs.size() == 0) {
            cs.street_id = street.id;
        } else {
            cs = vanet::optimize_cluster_count(vs, scenario.coverage_radius_m);
        }
        char name[64];
        std::snprintf(name, sizeof name, "cluster_%02zu_", s);
        const std::string path = (fs::path(args.out_dir) / (name + sanitize(street.id) + ".json")).string();
        vanet::write_text_file(path, vanet::to_json_text(cs));
        manifest.output_paths.push_back(path);
    }

    const std::string manifest_path = (fs::path(args.out_dir) / "manifest.json").string();
    vanet::write_text_file(manifest_path, vanet::to_json_text(manifest));
    return 0;
}

struct SweepArgs {
    std::string config_path;
    std::uint64_t seed = 0;
    std::uint64_t trials = 10000;
    std::vector<double> radii;
    std::vector<double> lengths;
    double density = 0.1;
    bool density_given = false;
    std::string out_dir = ".";
    int threads = 0;
};

int cmd_sweep(const SweepArgs& args) {
    vanet::SweepSpec spec = vanet::default_sweep_spec(args.seed);
    spec.trials = args.trials;

    vanet::RoadScenario road;
    if (!args.config_path.empty()) {
        road = vanet::load_scenario_file(args.config_path);
        spec.density = road.density_per_m;
        spec.lengths.clear();
        for (const auto& street : road.streets) spec.lengths.push_back(street.length_m);
    }
    if (!args.radii.empty()) spec.radii = args.radii;
    if (!args.lengths.empty()) spec.lengths = args.lengths;
    if (args.density_given) spec.density = args.density;
    if (args.config_path.empty()) {
        for (std::size_t i = 0; i < spec.lengths.size(); ++i)
            road.streets.push_back({"street-" + std::to_string(i), spec.lengths[i]});
    }
    road.density_per_m = spec.density;
    road.coverage_radius_m = spec.radii.front();
    road.seed = args.seed;

    ensure_output_dir(args.out_dir);
    const auto k_rows = vanet::sweep_optimized_k(spec, args.threads);
    const auto p_rows = vanet::sweep_connection_probability(road, spec.radii, spec.seeds,
                                                            spec.trials, args.threads);

    const std::string k_csv = (fs::path(args.out_dir) / "cluster_count_sweep.csv").string();
    const std::string k_json = (fs::path(args.out_dir) / "cluster_count_sweep.json").string();
    const std::string p_csv = (fs::path(args.out_dir) / "connection_sweep.csv").string();
    const std::string p_json = (fs::path(args.out_dir) / "connection_sweep.json").string();
    vanet::emit_table(k_rows, k_csv);
    vanet::write_text_file(k_json, vanet::to_json_text(k_rows));
    vanet::emit_table(p_rows, p_csv);
    vanet::write_text_file(p_json, vanet::to_json_text(p_rows));

    vanet::RunManifest manifest;
    manifest.command = "sweep";
    manifest.config_path = args.config_path;
    manifest.master_seed = args.seed;
    manifest.tool_version = vanet::kToolVersion;
    manifest.output_paths = {k_csv, k_json, p_csv, p_json};
    manifest.parameters = {
        {"lengths", join_numbers(spec.lengths)},
        {"radii", join_numbers(spec.radii)},
        {"density", format_number(spec.density)},
        {"trials", std::to_string(spec.trials)},
        {"seed_count", std::to_string(spec.seeds.size())},
    };
    const std::string manifest_path = (fs::path(args.out_dir) / "manifest.json").string();
    vanet::write_text_file(manifest_path, vanet::to_json_text(manifest));
    return 0;
}

struct ProbArgs {
    double density = 0.0;
    double radius = 0.0;
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t m = 0;
};

int cmd_prob(const ProbArgs& args) {
    const double p_vehicle = vanet::vehicle_connection_probability(args.density, args.radius);
    const double p_clustered = vanet::system_connection_probability(
        {args.density, args.radius, args.n, args.k, args.m});
    const double p_noncluster =
        vanet::noncluster_connection_probability(args.density, args.radius, args.n);
    std::cout << "{\n  \"p_vehicle\": " << format_number(p_vehicle)
              << ",\n  \"p_clustered\": " << format_number(p_clustered)
              << ",\n  \"p_noncluster\": " << format_number(p_noncluster) << "\n}\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clustered vehicular network simulator"};
    app.require_subcommand(1);

    ClusterArgs cluster_args;
    auto* cluster = app.add_subcommand(
        "cluster", "Cluster each street of a scenario and write the structures as JSON");
    cluster->add_option("--config", cluster_args.config_path, "Scenario config JSON")
        ->required();
    auto* cluster_seed =
        cluster->add_option("--seed", cluster_args.seed, "Override the scenario seed");
    cluster->add_option("--out", cluster_args.out_dir, "Output directory")
        ->capture_default_str();

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand(
        "sweep", "Run the cluster-count and connection-probability sweeps");
    sweep->add_option("--config", sweep_args.config_path,
                      "Scenario config JSON defining the road (default: built-in road)");
    sweep->add_option("--seed", sweep_args.seed, "Master seed")->capture_default_str();
    sweep->add_option("--trials", sweep_args.trials, "Monte Carlo trials per grid point")
        ->capture_default_str();
    sweep->add_option("--radii", sweep_args.radii, "Coverage radii in meters")
        ->delimiter(',');
    sweep->add_option("--lengths", sweep_args.lengths, "Street lengths in meters")
        ->delimiter(',');
    auto* density_opt =
        sweep->add_option("--density", sweep_args.density, "Vehicle density per meter")
            ->capture_default_str();
    sweep->add_option("--out", sweep_args.out_dir, "Output directory")->capture_default_str();
    sweep->add_option("--threads", sweep_args.threads,
                      "Worker thread cap, 0 for the runtime default (results do not depend "
                      "on this)")
        ->capture_default_str();

    ProbArgs prob_args;
    auto* prob = app.add_subcommand(
        "prob", "Evaluate the closed-form connection probabilities");
    prob->add_option("--density", prob_args.density, "Vehicle density per meter")->required();
    prob->add_option("--radius", prob_args.radius, "Coverage radius in meters")->required();
    prob->add_option("--n", prob_args.n, "Total vehicles")->required();
    prob->add_option("--k", prob_args.k, "Multi-vehicle clusters")->capture_default_str();
    prob->add_option("--m", prob_args.m, "Singletons")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (cluster->parsed()) {
            cluster_args.seed_given = cluster_seed->count() > 0;
            return cmd_cluster(cluster_args);
        }
        if (sweep->parsed()) {
            sweep_args.density_given = density_opt->count() > 0;
            return cmd_sweep(sweep_args);
        }
        if (prob->parsed()) return cmd_prob(prob_args);
    } catch (const vanet::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const vanet::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
