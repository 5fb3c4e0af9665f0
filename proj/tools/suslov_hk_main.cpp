#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "suslov/errors.hpp"
#include "suslov/scenario.hpp"

namespace sc = suslov::scenario;

namespace {

// Exit codes: 0 ok, 2 invalid configuration, 3 pole abort, 4 output I/O failure.
constexpr int kOk = 0;
constexpr int kBadConfig = 2;
constexpr int kPoleAbort = 3;
constexpr int kIoFailure = 4;

struct FlagValues {
    std::string config, format, out;
    double epsilon = 0.0;
    long steps = 0;
    int figure = 0;
    std::vector<double> inertia, omega0;
};

void attach_options(CLI::App* sub, FlagValues& v) {
    sub->add_option("--config", v.config, "flat key=value configuration file");
    sub->add_option("--epsilon", v.epsilon, "discretization step");
    sub->add_option("--steps", v.steps, "number of map iterations");
    sub->add_option("--inertia", v.inertia, "I1,I2,I13,I23 with optional I3")->delimiter(',');
    sub->add_option("--omega0", v.omega0, "initial angular velocity components")->delimiter(',');
    sub->add_option("--figure", v.figure, "published parameter set id (1..4)");
    sub->add_option("--format", v.format, "output format: csv or json");
    sub->add_option("--out", v.out, "output file path");
}

sc::Overrides flag_overrides(const CLI::App* sub, const FlagValues& v) {
    sc::Overrides o;
    if (sub->count("--epsilon")) o.epsilon = v.epsilon;
    if (sub->count("--steps")) o.steps = v.steps;
    if (sub->count("--inertia")) o.inertia = v.inertia;
    if (sub->count("--omega0")) o.omega0 = v.omega0;
    if (sub->count("--figure")) o.figure = v.figure;
    if (sub->count("--format")) o.format = sc::parse_format(v.format);
    if (sub->count("--out")) o.out = v.out;
    return o;
}

int dispatch(sc::Mode mode, const sc::ScenarioConfig& cfg) {
    switch (mode) {
        case sc::Mode::sim3:
        case sc::Mode::simN:
        case sc::Mode::figures: {
            const sc::RunSummary s = sc::run(cfg);
            std::printf("%s\n", sc::summary_json(s).c_str());
            return s.pole_encountered ? kPoleAbort : kOk;
        }
        case sc::Mode::conserve: {
            const sc::RunSummary s = sc::audit_conservation(cfg);
            std::printf("%s\n", sc::summary_json(s).c_str());
            if (cfg.nd_inertia) {
                // Candidate conserved quantities: reported, never asserted.
                std::string line = "{\"candidates\": {";
                bool first = true;
                for (const auto& [name, drift] : sc::nd_candidate_drifts(cfg)) {
                    char buf[64];
                    std::snprintf(buf, sizeof buf, "%.17g", drift);
                    line += std::string(first ? "" : ", ") + "\"" + name + "\": " + buf;
                    first = false;
                }
                std::printf("%s}}\n", line.c_str());
            }
            return s.pole_encountered ? kPoleAbort : kOk;
        }
        case sc::Mode::closedform: {
            const sc::CompareSummary s = sc::compare_closedform(cfg);
            std::printf("{\"rows\": %ld, \"max_abs_diff\": %.17g}\n", s.rows, s.max_abs_diff);
            return s.pole_encountered ? kPoleAbort : kOk;
        }
        case sc::Mode::convergence: {
            const sc::ConvergenceSummary s = sc::convergence_study(cfg);
            std::printf("{\"control_order\": %.17g, \"hk_order\": %.17g}\n",
                        s.control.estimated_order, s.hk.estimated_order);
            return kOk;
        }
    }
    return kBadConfig;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete Suslov rigid body: simulation, closed forms, audits"};
    app.require_subcommand(1);

    FlagValues v;
    attach_options(app.add_subcommand("sim3", "iterate the 3D discrete flow"), v);
    attach_options(app.add_subcommand("simN", "iterate the n-dimensional discrete flow"), v);
    attach_options(app.add_subcommand("closedform", "iterated map against the fitted closed form"), v);
    attach_options(app.add_subcommand("conserve", "trajectory run reporting conservation"), v);
    attach_options(app.add_subcommand("convergence", "order-of-accuracy study"), v);
    attach_options(app.add_subcommand("figures", "published parameter presets"), v);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadConfig;
    }

    try {
        const CLI::App* sub = app.get_subcommands().front();
        const sc::Mode mode = sc::parse_mode(sub->get_name());
        sc::Overrides file;
        if (sub->count("--config"))
            file = sc::overrides_from_kv(sc::parse_config_file(v.config));
        const sc::ScenarioConfig cfg = sc::build_config(mode, file, flag_overrides(sub, v));
        return dispatch(mode, cfg);
    } catch (const suslov::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kIoFailure;
    } catch (const suslov::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kBadConfig;
    } catch (const suslov::FixedPointState& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kBadConfig;
    } catch (const suslov::LevelOutOfRange& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kBadConfig;
    } catch (const suslov::DegenerateInertia& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kBadConfig;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kBadConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
}
