#include "rgpe/config.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include "rgpe/io.hpp"

namespace rgpe {

WaveField InitialData::realize(const GridSpec& g, double omega) const {
    WaveField u = [&] {
        switch (kind) {
            case Kind::gaussian: return sample_gaussian(g, omega);
            case Kind::vortex: return sample_vortex(g, omega, vortex_m);
            case Kind::file: {
                WaveField w = read_snapshot(file_path);
                if (!(w.grid == g))
                    throw ValidationError("initial_data file grid does not match [grid]");
                return w;
            }
            case Kind::random: return sample_random_mixture(g, seed);
        }
        throw ValidationError("unreachable initial_data kind");
    }();
    if (amplitude != 1.0) u.values *= Complex(amplitude);
    return u;
}

namespace {

struct RawEntry {
    std::string value;
    int line;
};
using Section = std::map<std::string, RawEntry>;

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_num(const std::string& key, const RawEntry& e) {
    // accept "pi/2"-style values for time-like keys
    if (e.value == "pi/2") return M_PI / 2.0;
    if (e.value == "pi") return M_PI;
    if (e.value == "2pi") return 2.0 * M_PI;
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(e.value, &pos);
    } catch (const std::exception&) {
        throw ValidationError("line " + std::to_string(e.line) + ": key '" + key +
                              "' has non-numeric value '" + e.value + "'");
    }
    if (pos != e.value.size())
        throw ValidationError("line " + std::to_string(e.line) + ": key '" + key +
                              "' has trailing junk in value '" + e.value + "'");
    return v;
}

long parse_int(const std::string& key, const RawEntry& e) {
    double v = parse_num(key, e);
    long r = static_cast<long>(std::llround(v));
    if (std::abs(v - r) > 1e-12)
        throw ValidationError("key '" + key + "' must be an integer, got '" + e.value + "'");
    return r;
}

// consume a key if present; anything left unconsumed at the end is unknown
template <typename F>
void take(Section& sec, const std::string& key, F&& f) {
    auto it = sec.find(key);
    if (it == sec.end()) return;
    f(it->second);
    sec.erase(it);
}

void expect_empty(const std::string& name, const Section& sec) {
    if (!sec.empty()) {
        const auto& [key, entry] = *sec.begin();
        throw ValidationError("line " + std::to_string(entry.line) + ": unknown key '" +
                              key + "' in section [" + name + "]");
    }
}

} // namespace

RunConfig parse_config(const std::string& text) {
    std::map<std::string, Section> sections;
    {
        std::istringstream in(text);
        std::string line, cur;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string s = trim(line);
            if (s.empty() || s[0] == '#' || s[0] == ';') continue;
            if (s.front() == '[') {
                if (s.back() != ']')
                    throw ValidationError("line " + std::to_string(lineno) +
                                          ": malformed section header");
                cur = trim(s.substr(1, s.size() - 2));
                static const std::set<std::string> known{"params", "grid", "evolve",
                                                         "picard", "output"};
                if (!known.count(cur))
                    throw ValidationError("line " + std::to_string(lineno) +
                                          ": unknown section [" + cur + "]");
                sections[cur];  // may legitimately be empty
                continue;
            }
            std::size_t eq = s.find('=');
            if (eq == std::string::npos)
                throw ValidationError("line " + std::to_string(lineno) +
                                      ": expected key=value");
            if (cur.empty())
                throw ValidationError("line " + std::to_string(lineno) +
                                      ": key outside any section");
            std::string key = trim(s.substr(0, eq));
            std::string val = trim(s.substr(eq + 1));
            if (key.empty() || val.empty())
                throw ValidationError("line " + std::to_string(lineno) +
                                      ": empty key or value");
            if (sections[cur].count(key))
                throw ValidationError("line " + std::to_string(lineno) +
                                      ": duplicate key '" + key + "'");
            sections[cur][key] = RawEntry{val, lineno};
        }
    }

    RunConfig c;
    int n = 128;
    double l = 8.0;

    Section& params = sections["params"];
    take(params, "omega", [&](const RawEntry& e) { c.params.omega = parse_num("omega", e); });
    take(params, "beta", [&](const RawEntry& e) { c.params.beta = parse_num("beta", e); });
    take(params, "sigma", [&](const RawEntry& e) { c.params.sigma = parse_num("sigma", e); });
    take(params, "amplitude",
         [&](const RawEntry& e) { c.initial_data.amplitude = parse_num("amplitude", e); });
    take(params, "initial_data", [&](const RawEntry& e) {
        const std::string& v = e.value;
        auto colon = v.find(':');
        std::string head = colon == std::string::npos ? v : v.substr(0, colon);
        std::string arg = colon == std::string::npos ? "" : v.substr(colon + 1);
        if (head == "gaussian" && arg.empty()) {
            c.initial_data.kind = InitialData::Kind::gaussian;
        } else if (head == "vortex" && !arg.empty()) {
            c.initial_data.kind = InitialData::Kind::vortex;
            c.initial_data.vortex_m = static_cast<int>(parse_int("initial_data", RawEntry{arg, e.line}));
        } else if (head == "file" && !arg.empty()) {
            c.initial_data.kind = InitialData::Kind::file;
            c.initial_data.file_path = arg;
        } else if (head == "random" && !arg.empty()) {
            c.initial_data.kind = InitialData::Kind::random;
            c.initial_data.seed = static_cast<std::uint64_t>(parse_int("initial_data", RawEntry{arg, e.line}));
        } else {
            throw ValidationError("line " + std::to_string(e.line) +
                                  ": initial_data must be gaussian | vortex:m | file:path "
                                  "| random:seed");
        }
    });
    expect_empty("params", params);

    Section& grid = sections["grid"];
    take(grid, "n", [&](const RawEntry& e) { n = static_cast<int>(parse_int("n", e)); });
    take(grid, "l", [&](const RawEntry& e) { l = parse_num("l", e); });
    expect_empty("grid", grid);

    Section& ev = sections["evolve"];
    take(ev, "dt", [&](const RawEntry& e) { c.evolve.dt = parse_num("dt", e); });
    take(ev, "t_end", [&](const RawEntry& e) { c.evolve.t_end = parse_num("t_end", e); });
    take(ev, "snapshot_stride", [&](const RawEntry& e) {
        c.evolve.snapshot_stride = static_cast<int>(parse_int("snapshot_stride", e));
    });
    take(ev, "segment_length",
         [&](const RawEntry& e) { c.evolve.segment_length = parse_num("segment_length", e); });
    expect_empty("evolve", ev);

    Section& pc = sections["picard"];
    take(pc, "t_horizon",
         [&](const RawEntry& e) { c.picard.t_horizon = parse_num("t_horizon", e); });
    take(pc, "rho", [&](const RawEntry& e) { c.picard.rho = parse_num("rho", e); });
    take(pc, "quad_nodes", [&](const RawEntry& e) {
        c.picard.quad_nodes = static_cast<int>(parse_int("quad_nodes", e));
    });
    take(pc, "max_iter",
         [&](const RawEntry& e) { c.picard.max_iter = static_cast<int>(parse_int("max_iter", e)); });
    take(pc, "tol", [&](const RawEntry& e) { c.picard.tol = parse_num("tol", e); });
    expect_empty("picard", pc);

    Section& out = sections["output"];
    take(out, "dir", [&](const RawEntry& e) { c.output_dir = e.value; });
    take(out, "suites", [&](const RawEntry& e) {
        std::istringstream ss(e.value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            if (item == "all") {
                c.suites = known_suites();
                continue;
            }
            if (!known_suites().count(item))
                throw ValidationError("line " + std::to_string(e.line) +
                                      ": unknown suite '" + item + "'");
            c.suites.insert(item);
        }
    });
    expect_empty("output", out);

    // validation against module preconditions, before any compute
    c.grid = make_grid(n, l);
    if (!(c.params.omega > 0.0)) throw ValidationError("omega must be positive");
    if (!(c.params.beta >= 0.0)) throw ValidationError("beta must be nonnegative");
    if (!(c.params.sigma > 0.0)) throw ValidationError("sigma must be positive");
    c.evolve.validate(c.params);
    c.picard.validate(c.params);
    if (c.params.outside_regime())
        c.warnings.push_back("outside paper regime: sigma*omega < 1");
    return c;
}

std::string render_config(const RunConfig& c) {
    std::ostringstream ss;
    ss.precision(17);
    ss << "[params]\n";
    ss << "omega = " << c.params.omega << "\n";
    ss << "beta = " << c.params.beta << "\n";
    ss << "sigma = " << c.params.sigma << "\n";
    switch (c.initial_data.kind) {
        case InitialData::Kind::gaussian: ss << "initial_data = gaussian\n"; break;
        case InitialData::Kind::vortex:
            ss << "initial_data = vortex:" << c.initial_data.vortex_m << "\n";
            break;
        case InitialData::Kind::file:
            ss << "initial_data = file:" << c.initial_data.file_path << "\n";
            break;
        case InitialData::Kind::random:
            ss << "initial_data = random:" << c.initial_data.seed << "\n";
            break;
    }
    ss << "amplitude = " << c.initial_data.amplitude << "\n";
    ss << "[grid]\n";
    ss << "n = " << c.grid.n << "\n";
    ss << "l = " << c.grid.l << "\n";
    ss << "[evolve]\n";
    ss << "dt = " << c.evolve.dt << "\n";
    ss << "t_end = " << c.evolve.t_end << "\n";
    ss << "snapshot_stride = " << c.evolve.snapshot_stride << "\n";
    ss << "segment_length = " << c.evolve.segment_length << "\n";
    ss << "[picard]\n";
    ss << "t_horizon = " << c.picard.t_horizon << "\n";
    ss << "rho = " << c.picard.rho << "\n";
    ss << "quad_nodes = " << c.picard.quad_nodes << "\n";
    ss << "max_iter = " << c.picard.max_iter << "\n";
    ss << "tol = " << c.picard.tol << "\n";
    ss << "[output]\n";
    ss << "dir = " << c.output_dir << "\n";
    if (!c.suites.empty()) {
        ss << "suites = ";
        bool first = true;
        for (const auto& s : c.suites) {
            if (!first) ss << ",";
            ss << s;
            first = false;
        }
        ss << "\n";
    }
    return ss.str();
}

} // namespace rgpe
