#include "radiant/cli.hpp"
#include "radiant/log.hpp"
#include "radiant/parallel.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>

int main(int argc, char **argv) {
    CLI::App app{"radiant: collective spontaneous emission from atomic arrays"};

    std::string config_path, out_dir = ".", fixture_path;
    unsigned threads = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;

    app.add_option("--config", config_path, "Config file path")->required();
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--threads", threads, "Worker threads (0 = hardware)");
    app.add_option("--seed", seed, "Override the config seed")
        ->each([&](const std::string &) { seed_given = true; });
    app.add_option("--fixture", fixture_path,
                   "Compare the primary output against this CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        radiant::set_thread_count(threads);
        radiant::cli::RunConfig config =
            radiant::cli::parse_config_file(config_path);
        if (seed_given) config.seed = seed;

        const radiant::cli::RunResult result =
            radiant::cli::run(config, out_dir);

        if (!fixture_path.empty()) {
            const auto report = radiant::cli::compare_fixture(
                result.primary_artifact, fixture_path, config.fixture_abs_tol,
                config.fixture_rel_tol);
            if (!report.pass) {
                if (!report.schema_error.empty())
                    radiant::log_error("fixture schema mismatch: " +
                                       report.schema_error);
                for (const auto &m : report.mismatches) {
                    std::fprintf(stderr,
                                 "fixture mismatch row %zu column %s: got "
                                 "%.17g expected %.17g\n",
                                 m.row, m.column.c_str(), m.got, m.expected);
                }
                return 1;
            }
            radiant::log_info("fixture comparison passed");
        }
        return 0;
    } catch (const radiant::cli::ConfigError &e) {
        radiant::log_error(std::string("config error: ") + e.what());
        return 2;
    } catch (const std::exception &e) {
        radiant::log_error(std::string("numerical failure: ") + e.what());
        return 3;
    }
}
