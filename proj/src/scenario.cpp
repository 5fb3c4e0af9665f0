#include "suslov/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "suslov/closedform.hpp"
#include "suslov/constants.hpp"
#include "suslov/errors.hpp"
#include "suslov/model3.hpp"

namespace suslov::scenario {

namespace {

// All numbers in files and summaries go through here: shortest
// round-trippable decimal form, byte-stable across runs.
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join17(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt17(v[i]);
    }
    return out;
}

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::sim3: return "sim3";
        case Mode::simN: return "simN";
        case Mode::closedform: return "closedform";
        case Mode::conserve: return "conserve";
        case Mode::convergence: return "convergence";
        case Mode::figures: return "figures";
    }
    return "?";
}

double parse_double_str(const std::string& s, const std::string& what) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError("cannot parse " + what + ": '" + s + "'");
    return v;
}

long parse_long_str(const std::string& s, const std::string& what) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw ConfigError("cannot parse " + what + ": '" + s + "'");
    return v;
}

std::vector<double> parse_list_str(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_double_str(item, what));
    if (out.empty()) throw ConfigError(what + " list is empty");
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

ConfigError wrap_invalid(const std::exception& ex) { return ConfigError(ex.what()); }

}  // namespace

Mode parse_mode(const std::string& name) {
    if (name == "sim3") return Mode::sim3;
    if (name == "simN") return Mode::simN;
    if (name == "closedform") return Mode::closedform;
    if (name == "conserve") return Mode::conserve;
    if (name == "convergence") return Mode::convergence;
    if (name == "figures") return Mode::figures;
    throw ConfigError("unknown mode: '" + name + "'");
}

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw ConfigError("unknown format: '" + name + "' (expected csv or json)");
}

ScenarioConfig preset(int figure_id) {
    ScenarioConfig cfg;
    cfg.mode = Mode::figures;
    cfg.omega0 = {1.0, 1.0};
    cfg.steps = 5000;
    cfg.figure = figure_id;
    cfg.out = "figure" + std::to_string(figure_id) + ".csv";
    switch (figure_id) {
        case 1: cfg.epsilon = 0.2;  cfg.inertia = Inertia3{4.0, 1.0, -0.5, -0.3}; break;
        case 2: cfg.epsilon = 0.2;  cfg.inertia = Inertia3{4.0, 3.0, -0.4, -0.2}; break;
        case 3: cfg.epsilon = 0.02; cfg.inertia = Inertia3{4.0, 2.0,  0.0, -0.2}; break;
        case 4: cfg.epsilon = 1.0;  cfg.inertia = Inertia3{3.0, 3.0, -0.2, -0.2}; break;
        default: throw UnknownFigure("unknown figure id " + std::to_string(figure_id) +
                                     " (published set is 1..4)");
    }
    return cfg;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
        if (!kv.emplace(key, val).second)
            throw ConfigError(path + ": duplicate key '" + key + "'");
    }
    return kv;
}

Overrides overrides_from_kv(const std::map<std::string, std::string>& kv) {
    Overrides o;
    for (const auto& [key, val] : kv) {
        if (key == "mode") o.mode = parse_mode(val);
        else if (key == "epsilon") o.epsilon = parse_double_str(val, "epsilon");
        else if (key == "steps") o.steps = parse_long_str(val, "steps");
        else if (key == "inertia") o.inertia = parse_list_str(val, "inertia");
        else if (key == "omega0") o.omega0 = parse_list_str(val, "omega0");
        else if (key == "figure") o.figure = static_cast<int>(parse_long_str(val, "figure"));
        else if (key == "format") o.format = parse_format(val);
        else if (key == "out") o.out = val;
        else if (key == "nd_n") o.nd_n = static_cast<int>(parse_long_str(val, "nd_n"));
        else if (key == "nd_diag") o.nd_diag = parse_list_str(val, "nd_diag");
        else if (key == "nd_off") o.nd_off = parse_list_str(val, "nd_off");
        else throw ConfigError("unknown config key: '" + key + "'");
    }
    return o;
}

namespace {

Overrides merge(const Overrides& file, const Overrides& flags) {
    Overrides m = file;
    if (flags.mode) m.mode = flags.mode;
    if (flags.epsilon) m.epsilon = flags.epsilon;
    if (flags.steps) m.steps = flags.steps;
    if (flags.inertia) m.inertia = flags.inertia;
    if (flags.omega0) m.omega0 = flags.omega0;
    if (flags.figure) m.figure = flags.figure;
    if (flags.format) m.format = flags.format;
    if (flags.out) m.out = flags.out;
    if (flags.nd_n) m.nd_n = flags.nd_n;
    if (flags.nd_diag) m.nd_diag = flags.nd_diag;
    if (flags.nd_off) m.nd_off = flags.nd_off;
    return m;
}

Inertia3 inertia_from_list(const std::vector<double>& v) {
    if (v.size() != 4 && v.size() != 5)
        throw ConfigError("inertia expects I1,I2,I13,I23 with optional I3");
    Inertia3 in{v[0], v[1], v[2], v[3]};
    if (v.size() == 5) in.I3 = v[4];
    return in;
}

std::string default_out(Mode mode, Format format) {
    return std::string(mode_name(mode)) + (format == Format::csv ? ".csv" : ".json");
}

}  // namespace

ScenarioConfig build_config(Mode mode, const Overrides& file, const Overrides& flags) {
    if (file.mode && *file.mode != mode)
        throw ConfigError("config file mode disagrees with the requested mode");
    const Overrides m = merge(file, flags);

    ScenarioConfig cfg;
    if (mode == Mode::figures) {
        if (!m.figure) throw ConfigError("figures mode requires a figure id");
        cfg = preset(*m.figure);
        if (m.epsilon || m.inertia || m.omega0 || m.nd_n || m.nd_diag || m.nd_off)
            throw ConfigError("figure presets pin epsilon, inertia and omega0");
        if (m.steps) cfg.steps = *m.steps;
        if (m.format) cfg.format = *m.format;
        if (m.out) cfg.out = *m.out;
        else if (cfg.format == Format::json)
            cfg.out = "figure" + std::to_string(*m.figure) + ".json";
    } else {
        cfg.mode = mode;
        if (m.figure) throw ConfigError("figure id is only valid in figures mode");
        if (m.epsilon) cfg.epsilon = *m.epsilon;
        if (m.steps) cfg.steps = *m.steps;
        if (m.inertia) cfg.inertia = inertia_from_list(*m.inertia);
        if (m.omega0) cfg.omega0 = *m.omega0;
        if (m.nd_n || m.nd_diag || m.nd_off) {
            if (!(m.nd_n && m.nd_diag && m.nd_off))
                throw ConfigError("simN inertia needs nd_n, nd_diag and nd_off together");
            cfg.nd_inertia = nd::NDInertia{*m.nd_n, *m.nd_diag, *m.nd_off};
        }
        if (m.format) cfg.format = *m.format;
        cfg.out = m.out ? *m.out : default_out(mode, cfg.format);
    }
    validate(cfg);
    return cfg;
}

void validate(const ScenarioConfig& cfg) {
    const Mode mode = cfg.mode;
    const bool wants_3d = mode == Mode::sim3 || mode == Mode::closedform || mode == Mode::figures;
    const bool steps_mode = mode != Mode::convergence;

    if (cfg.out.empty()) throw ConfigError("output path is empty");
    for (double w : cfg.omega0)
        if (!std::isfinite(w)) throw ConfigError("omega0 entries must be finite");
    if (!std::isfinite(cfg.epsilon)) throw ConfigError("epsilon must be finite");

    if (steps_mode) {
        if (cfg.steps < 1) throw ConfigError("steps must be at least 1");
        if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    } else {
        if (cfg.steps != 0) throw ConfigError("convergence mode uses a fixed step ladder; steps is not configurable");
        if (cfg.epsilon != 0.0) throw ConfigError("convergence mode uses a fixed step ladder; epsilon is not configurable");
    }

    if (mode == Mode::figures) {
        if (!cfg.figure || *cfg.figure < 1 || *cfg.figure > 4)
            throw ConfigError("figure id must be 1..4");
    } else if (cfg.figure) {
        throw ConfigError("figure id is only valid in figures mode");
    }

    if (wants_3d) {
        if (!cfg.inertia) throw ConfigError(std::string(mode_name(mode)) + " mode requires inertia");
        if (cfg.nd_inertia) throw ConfigError("nd inertia is only valid in simN or conserve mode");
        if (cfg.omega0.size() != 2) throw ConfigError("omega0 expects two components");
    } else if (mode == Mode::simN) {
        if (!cfg.nd_inertia) throw ConfigError("simN mode requires nd_n, nd_diag, nd_off");
        if (cfg.inertia) throw ConfigError("simN mode takes no 3D inertia");
    } else if (mode == Mode::conserve) {
        if (static_cast<bool>(cfg.inertia) == static_cast<bool>(cfg.nd_inertia))
            throw ConfigError("conserve mode requires exactly one of inertia or nd inertia");
        if (cfg.inertia && cfg.omega0.size() != 2)
            throw ConfigError("omega0 expects two components");
    } else {  // convergence
        if (cfg.nd_inertia) throw ConfigError("convergence mode takes no nd inertia");
        if (!cfg.omega0.empty() && cfg.omega0.size() != 2)
            throw ConfigError("omega0 expects two components");
        if (!cfg.omega0.empty() && !cfg.inertia)
            throw ConfigError("omega0 without inertia");
    }

    try {
        if (cfg.inertia) suslov::validate(*cfg.inertia);
        if (cfg.nd_inertia) {
            nd::validate(*cfg.nd_inertia);
            if (cfg.omega0.size() != static_cast<size_t>(cfg.nd_inertia->n - 1))
                throw ConfigError("omega0 expects n-1 components");
        }
    } catch (const std::invalid_argument& ex) {
        throw wrap_invalid(ex);
    }
}

namespace {

struct Sim3Data {
    std::vector<TrajectorySample> rows;
    bool pole = false;
};

Sim3Data simulate3(const Inertia3& in, BodyOmega o, StepSize eps, long steps) {
    Sim3Data data;
    data.rows.reserve(static_cast<size_t>(steps) + 1);
    data.rows.push_back(make_sample(0, 0.0, o, in, eps));
    for (long k = 1; k <= steps; ++k) {
        try {
            o = hk_step(o, in, eps);
        } catch (const DegenerateStep&) {
            data.pole = true;
            break;
        }
        data.rows.push_back(make_sample(k, 0.0, o, in, eps));
    }
    return data;
}

struct SimNData {
    std::vector<nd::NDOmega> rows;
    bool pole = false;
};

SimNData simulateN(const nd::NDInertia& in, nd::NDOmega o, StepSize eps, long steps) {
    SimNData data;
    data.rows.reserve(static_cast<size_t>(steps) + 1);
    data.rows.push_back(o);
    for (long k = 1; k <= steps; ++k) {
        try {
            o = nd::hk_step_nd(o, in, eps);
        } catch (const SingularStepMatrix&) {
            data.pole = true;
            break;
        }
        data.rows.push_back(o);
    }
    return data;
}

// Drift exactly as recomputable from the written file: max |F_n - F_0|
// over the rows, relative to |F_0|.
double relative_drift(const std::vector<double>& series) {
    double num = 0.0;
    for (double v : series) num = std::max(num, std::abs(v - series.front()));
    return num == 0.0 ? 0.0 : num / std::abs(series.front());
}

RunSummary summarize3(const Sim3Data& data) {
    RunSummary s;
    s.steps_completed = static_cast<long>(data.rows.size()) - 1;
    std::vector<double> f;
    f.reserve(data.rows.size());
    for (const auto& r : data.rows) f.push_back(r.F);
    s.max_F_drift = relative_drift(f);
    s.final_constraint_residual = data.rows.back().constraint;
    s.pole_encountered = data.pole;
    return s;
}

double nd_energy(const nd::NDOmega& o, const nd::NDInertia& in) {
    double e = 0.0;
    for (size_t i = 0; i < o.vals.size(); ++i) {
        const double d = in.diag[i] + in.diag[in.n - 1];
        e += 0.5 * d * o.vals[i] * o.vals[i];
    }
    return e;
}

double nd_momentum(const nd::NDOmega& o, const nd::NDInertia& in) {
    double m = 0.0;
    for (size_t i = 0; i < o.vals.size(); ++i) m += in.off[i] * o.vals[i];
    return m;
}

RunSummary summarizeN(const SimNData& data, const nd::NDInertia& in) {
    RunSummary s;
    s.steps_completed = static_cast<long>(data.rows.size()) - 1;
    std::vector<double> e;
    e.reserve(data.rows.size());
    for (const auto& r : data.rows) e.push_back(nd_energy(r, in));
    s.max_F_drift = relative_drift(e);  // candidate quantity; reported only
    s.final_constraint_residual = 0.0;  // reduced coordinates enforce the constraint exactly
    s.pole_encountered = data.pole;
    return s;
}

void require_stream(const std::ofstream& out, const std::string& path) {
    if (!out) throw IoError("cannot write output file: " + path);
}

void write_metadata_csv(std::ofstream& out, const ScenarioConfig& cfg) {
    out << "# mode = " << mode_name(cfg.mode) << "\n";
    out << "# version = " << kVersion << "\n";
    out << "# epsilon = " << fmt17(cfg.epsilon) << "\n";
    out << "# steps = " << cfg.steps << "\n";
    if (cfg.inertia) {
        const Inertia3& in = *cfg.inertia;
        out << "# inertia = " << join17({in.I1, in.I2, in.I13, in.I23, in.I3}) << "\n";
    }
    if (cfg.nd_inertia) {
        out << "# nd_n = " << cfg.nd_inertia->n << "\n";
        out << "# nd_diag = " << join17(cfg.nd_inertia->diag) << "\n";
        out << "# nd_off = " << join17(cfg.nd_inertia->off) << "\n";
    }
    out << "# omega0 = " << join17(cfg.omega0) << "\n";
    if (cfg.figure) out << "# figure = " << *cfg.figure << "\n";
}

std::string metadata_json(const ScenarioConfig& cfg) {
    std::string s = "  \"metadata\": {\n";
    s += "    \"mode\": \"" + std::string(mode_name(cfg.mode)) + "\",\n";
    s += "    \"version\": \"" + std::string(kVersion) + "\",\n";
    s += "    \"epsilon\": " + fmt17(cfg.epsilon) + ",\n";
    s += "    \"steps\": " + std::to_string(cfg.steps) + ",\n";
    if (cfg.inertia) {
        const Inertia3& in = *cfg.inertia;
        s += "    \"inertia\": [" + join17({in.I1, in.I2, in.I13, in.I23, in.I3}) + "],\n";
    }
    if (cfg.nd_inertia) {
        s += "    \"nd_n\": " + std::to_string(cfg.nd_inertia->n) + ",\n";
        s += "    \"nd_diag\": [" + join17(cfg.nd_inertia->diag) + "],\n";
        s += "    \"nd_off\": [" + join17(cfg.nd_inertia->off) + "],\n";
    }
    if (cfg.figure) s += "    \"figure\": " + std::to_string(*cfg.figure) + ",\n";
    s += "    \"omega0\": [" + join17(cfg.omega0) + "]\n";
    s += "  }";
    return s;
}

void write_sim3_file(const ScenarioConfig& cfg, const Sim3Data& data) {
    std::ofstream out(cfg.out, std::ios::binary);
    require_stream(out, cfg.out);
    if (cfg.format == Format::csv) {
        write_metadata_csv(out, cfg);
        out << "n,t,omega1,omega2,x,y,F,E,constraint\n";
        for (const auto& r : data.rows) {
            out << r.n << ',' << fmt17(r.t) << ',' << fmt17(r.omega.omega1) << ','
                << fmt17(r.omega.omega2) << ',' << fmt17(r.planar.x) << ','
                << fmt17(r.planar.y) << ',' << fmt17(r.F) << ',' << fmt17(r.energy) << ','
                << fmt17(r.constraint) << "\n";
        }
    } else {
        out << "{\n" << metadata_json(cfg) << ",\n  \"rows\": [\n";
        for (size_t i = 0; i < data.rows.size(); ++i) {
            const auto& r = data.rows[i];
            out << "    {\"n\": " << r.n << ", \"t\": " << fmt17(r.t)
                << ", \"omega1\": " << fmt17(r.omega.omega1)
                << ", \"omega2\": " << fmt17(r.omega.omega2)
                << ", \"x\": " << fmt17(r.planar.x) << ", \"y\": " << fmt17(r.planar.y)
                << ", \"F\": " << fmt17(r.F) << ", \"E\": " << fmt17(r.energy)
                << ", \"constraint\": " << fmt17(r.constraint) << "}"
                << (i + 1 < data.rows.size() ? ",\n" : "\n");
        }
        out << "  ]\n}\n";
    }
    out.flush();
    require_stream(out, cfg.out);
}

void write_simN_file(const ScenarioConfig& cfg, const SimNData& data) {
    const int m = cfg.nd_inertia->n - 1;
    std::ofstream out(cfg.out, std::ios::binary);
    require_stream(out, cfg.out);
    if (cfg.format == Format::csv) {
        write_metadata_csv(out, cfg);
        out << "n,t";
        for (int i = 1; i <= m; ++i) out << ",omega_" << i << "n";
        out << "\n";
        for (size_t k = 0; k < data.rows.size(); ++k) {
            out << k << ',' << fmt17(static_cast<double>(k) * cfg.epsilon);
            for (double v : data.rows[k].vals) out << ',' << fmt17(v);
            out << "\n";
        }
    } else {
        out << "{\n" << metadata_json(cfg) << ",\n  \"rows\": [\n";
        for (size_t k = 0; k < data.rows.size(); ++k) {
            out << "    {\"n\": " << k << ", \"t\": "
                << fmt17(static_cast<double>(k) * cfg.epsilon) << ", \"omega\": ["
                << join17(data.rows[k].vals) << "]}"
                << (k + 1 < data.rows.size() ? ",\n" : "\n");
        }
        out << "  ]\n}\n";
    }
    out.flush();
    require_stream(out, cfg.out);
}

struct CompareData {
    std::vector<TrajectorySample> iterated;
    std::vector<BodyOmega> closed;
    bool pole = false;
    double max_abs_diff = 0.0;
};

CompareData compare_core(const ScenarioConfig& cfg) {
    const Inertia3& in = *cfg.inertia;
    const StepSize eps{cfg.epsilon};
    const BodyOmega o0{cfg.omega0[0], cfg.omega0[1]};
    const auto params = closedform::fit_params(o0, in, eps);

    CompareData data;
    Sim3Data sim = simulate3(in, o0, eps, cfg.steps);
    data.iterated = std::move(sim.rows);
    data.pole = sim.pole;
    data.closed.reserve(data.iterated.size());
    for (const auto& r : data.iterated) {
        const BodyOmega c = closedform::omega_closed(r.n, params);
        data.closed.push_back(c);
        data.max_abs_diff = std::max({data.max_abs_diff,
                                      std::abs(c.omega1 - r.omega.omega1),
                                      std::abs(c.omega2 - r.omega.omega2)});
    }
    return data;
}

void write_compare_file(const ScenarioConfig& cfg, const CompareData& data) {
    std::ofstream out(cfg.out, std::ios::binary);
    require_stream(out, cfg.out);
    if (cfg.format == Format::csv) {
        write_metadata_csv(out, cfg);
        out << "# max_abs_diff = " << fmt17(data.max_abs_diff) << "\n";
        out << "n,omega1_iterated,omega2_iterated,omega1_closedform,omega2_closedform,"
               "abs_diff1,abs_diff2\n";
        for (size_t i = 0; i < data.iterated.size(); ++i) {
            const auto& r = data.iterated[i];
            const auto& c = data.closed[i];
            out << r.n << ',' << fmt17(r.omega.omega1) << ',' << fmt17(r.omega.omega2) << ','
                << fmt17(c.omega1) << ',' << fmt17(c.omega2) << ','
                << fmt17(std::abs(c.omega1 - r.omega.omega1)) << ','
                << fmt17(std::abs(c.omega2 - r.omega.omega2)) << "\n";
        }
    } else {
        out << "{\n" << metadata_json(cfg) << ",\n  \"max_abs_diff\": "
            << fmt17(data.max_abs_diff) << ",\n  \"rows\": [\n";
        for (size_t i = 0; i < data.iterated.size(); ++i) {
            const auto& r = data.iterated[i];
            const auto& c = data.closed[i];
            out << "    {\"n\": " << r.n
                << ", \"iterated\": [" << fmt17(r.omega.omega1) << "," << fmt17(r.omega.omega2)
                << "], \"closedform\": [" << fmt17(c.omega1) << "," << fmt17(c.omega2) << "]}"
                << (i + 1 < data.iterated.size() ? ",\n" : "\n");
        }
        out << "  ]\n}\n";
    }
    out.flush();
    require_stream(out, cfg.out);
}

void write_convergence_file(const ScenarioConfig& cfg, const ConvergenceSummary& sum) {
    std::ofstream out(cfg.out, std::ios::binary);
    require_stream(out, cfg.out);
    struct Row { const char* method; double eps; double err; };
    std::vector<Row> rows;
    for (size_t i = 0; i < sum.control.eps_levels.size(); ++i)
        rows.push_back({"euler", sum.control.eps_levels[i], sum.control.errors[i]});
    for (size_t i = 0; i < sum.hk.eps_levels.size(); ++i)
        rows.push_back({"hk", sum.hk.eps_levels[i], sum.hk.errors[i]});
    if (cfg.format == Format::csv) {
        out << "# mode = convergence\n# version = " << kVersion << "\n";
        out << "# control_order = " << fmt17(sum.control.estimated_order) << "\n";
        out << "# hk_order = " << fmt17(sum.hk.estimated_order) << "\n";
        out << "method,epsilon,error\n";
        for (const Row& r : rows)
            out << r.method << ',' << fmt17(r.eps) << ',' << fmt17(r.err) << "\n";
    } else {
        out << "{\n  \"mode\": \"convergence\",\n  \"version\": \"" << kVersion << "\",\n";
        out << "  \"control_order\": " << fmt17(sum.control.estimated_order) << ",\n";
        out << "  \"hk_order\": " << fmt17(sum.hk.estimated_order) << ",\n  \"rows\": [\n";
        for (size_t i = 0; i < rows.size(); ++i)
            out << "    {\"method\": \"" << rows[i].method << "\", \"epsilon\": "
                << fmt17(rows[i].eps) << ", \"error\": " << fmt17(rows[i].err) << "}"
                << (i + 1 < rows.size() ? ",\n" : "\n");
        out << "  ]\n}\n";
    }
    out.flush();
    require_stream(out, cfg.out);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RunSummary run_sim3_like(const ScenarioConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const Sim3Data data = simulate3(*cfg.inertia, {cfg.omega0[0], cfg.omega0[1]},
                                    StepSize{cfg.epsilon}, cfg.steps);
    write_sim3_file(cfg, data);
    RunSummary s = summarize3(data);
    s.wall_time = seconds_since(t0);
    return s;
}

RunSummary run_simN_like(const ScenarioConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const SimNData data = simulateN(*cfg.nd_inertia, nd::NDOmega{cfg.omega0},
                                    StepSize{cfg.epsilon}, cfg.steps);
    write_simN_file(cfg, data);
    RunSummary s = summarizeN(data, *cfg.nd_inertia);
    s.wall_time = seconds_since(t0);
    return s;
}

}  // namespace

RunSummary run(const ScenarioConfig& cfg) {
    validate(cfg);
    switch (cfg.mode) {
        case Mode::sim3:
        case Mode::figures:
            return run_sim3_like(cfg);
        case Mode::simN:
            return run_simN_like(cfg);
        case Mode::conserve:
            return audit_conservation(cfg);
        case Mode::closedform: {
            const auto t0 = std::chrono::steady_clock::now();
            const CompareData data = compare_core(cfg);
            write_compare_file(cfg, data);
            Sim3Data traj{data.iterated, data.pole};
            RunSummary s = summarize3(traj);
            s.wall_time = seconds_since(t0);
            return s;
        }
        case Mode::convergence: {
            const auto t0 = std::chrono::steady_clock::now();
            const ConvergenceSummary sum = convergence_study(cfg);
            RunSummary s;
            s.steps_completed = static_cast<long>(sum.hk.eps_levels.size());
            s.wall_time = seconds_since(t0);
            return s;
        }
    }
    throw ConfigError("unhandled mode");
}

RunSummary audit_conservation(const ScenarioConfig& cfg) {
    validate(cfg);
    return cfg.nd_inertia ? run_simN_like(cfg) : run_sim3_like(cfg);
}

std::vector<std::pair<std::string, double>> nd_candidate_drifts(const ScenarioConfig& cfg) {
    validate(cfg);
    if (!cfg.nd_inertia) throw ConfigError("candidate drifts are defined for simN runs");
    const SimNData data = simulateN(*cfg.nd_inertia, nd::NDOmega{cfg.omega0},
                                    StepSize{cfg.epsilon}, cfg.steps);
    std::vector<double> e, m;
    for (const auto& r : data.rows) {
        e.push_back(nd_energy(r, *cfg.nd_inertia));
        m.push_back(nd_momentum(r, *cfg.nd_inertia));
    }
    auto drift = [](const std::vector<double>& q) {
        double num = 0.0, scale = 0.0;
        for (double v : q) {
            num = std::max(num, std::abs(v - q.front()));
            scale = std::max(scale, std::abs(v));
        }
        return scale == 0.0 ? 0.0 : num / scale;
    };
    return {{"kinetic_energy", drift(e)}, {"coupling_momentum", drift(m)}};
}

CompareSummary compare_closedform(const ScenarioConfig& cfg) {
    validate(cfg);
    if (cfg.mode != Mode::closedform)
        throw ConfigError("compare_closedform expects closedform mode");
    const CompareData data = compare_core(cfg);
    write_compare_file(cfg, data);
    return {static_cast<long>(data.iterated.size()), data.max_abs_diff, data.pole};
}

ConvergenceSummary convergence_study(const ScenarioConfig& cfg) {
    validate(cfg);
    if (cfg.mode != Mode::convergence)
        throw ConfigError("convergence_study expects convergence mode");
    const Inertia3 in = cfg.inertia ? *cfg.inertia : Inertia3{4.0, 1.0, -0.5, -0.3};
    const BodyOmega o0 = cfg.omega0.empty() ? BodyOmega{1.0, 1.0}
                                            : BodyOmega{cfg.omega0[0], cfg.omega0[1]};
    const std::vector<double> levels{0.1, 0.05, 0.025, 0.0125};
    const double t_end = 1.0;

    const reference::OdeSystem body{2, [&](const std::vector<double>& s) {
        const BodyOmega f = reference::continuous_rhs_3d({s[0], s[1]}, in);
        return std::vector<double>{f.omega1, f.omega2};
    }};
    const reference::OdeSystem plane{2, [&](const std::vector<double>& s) {
        const PlanarState f = reference::continuous_rhs_planar({s[0], s[1]}, in);
        return std::vector<double>{f.x, f.y};
    }};

    ConvergenceSummary sum;
    std::vector<double> err_hk, err_euler;
    const PlanarState p0 = to_planar(o0, in);
    for (double e : levels) {
        const long n = std::lround(t_end / e);
        BodyOmega o = o0;
        for (long k = 0; k < n; ++k) o = hk_step(o, in, StepSize{e});
        const auto ref3 = reference::rk4_integrate(body, {o0.omega1, o0.omega2}, t_end, e / 100.0);
        err_hk.push_back(std::hypot(o.omega1 - ref3[0], o.omega2 - ref3[1]));

        const auto eul = reference::euler_integrate(plane, {p0.x, p0.y}, t_end, e);
        const auto refp = reference::rk4_integrate(plane, {p0.x, p0.y}, t_end, e / 100.0);
        err_euler.push_back(std::hypot(eul[0] - refp[0], eul[1] - refp[1]));
    }
    sum.hk = reference::fit_order(levels, err_hk);
    sum.control = reference::fit_order(levels, err_euler);
    write_convergence_file(cfg, sum);
    return sum;
}

std::string summary_json(const RunSummary& s) {
    std::string out = "{\"steps_completed\": " + std::to_string(s.steps_completed);
    out += ", \"max_F_drift\": " + fmt17(s.max_F_drift);
    out += ", \"final_constraint_residual\": " + fmt17(s.final_constraint_residual);
    out += std::string(", \"pole_encountered\": ") + (s.pole_encountered ? "true" : "false");
    out += ", \"wall_time\": " + fmt17(s.wall_time) + "}";
    return out;
}

}  // namespace suslov::scenario
