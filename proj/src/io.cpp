#include "rgpe/io.hpp"

#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <json.hpp>

namespace rgpe {

namespace {

// all multi-byte values little-endian; this code assumes a little-endian host
// (asserted at snapshot open)
void check_endianness() {
    const std::uint32_t probe = 1;
    unsigned char b;
    std::memcpy(&b, &probe, 1);
    if (b != 1) throw ValidationError("snapshot I/O requires a little-endian host");
}

} // namespace

void write_snapshot(const std::filesystem::path& path, const WaveField& u) {
    check_endianness();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open snapshot for writing: " + path.string());
    const char magic[4] = {'R', 'G', 'P', 'E'};
    f.write(magic, 4);
    std::uint32_t n = static_cast<std::uint32_t>(u.grid.n);
    f.write(reinterpret_cast<const char*>(&n), 4);
    double l = u.grid.l;
    f.write(reinterpret_cast<const char*>(&l), 8);
    // row-major with x₂ fastest: iterate x1 rows, x2 within
    std::vector<double> row(2 * u.grid.n);
    for (int i = 0; i < u.grid.n; ++i) {
        for (int j = 0; j < u.grid.n; ++j) {
            row[2 * j] = u.values(i, j).real();
            row[2 * j + 1] = u.values(i, j).imag();
        }
        f.write(reinterpret_cast<const char*>(row.data()),
                static_cast<std::streamsize>(row.size() * sizeof(double)));
    }
    if (!f) throw ValidationError("short write on snapshot: " + path.string());
}

WaveField read_snapshot(const std::filesystem::path& path) {
    check_endianness();
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open snapshot: " + path.string());
    char magic[4];
    f.read(magic, 4);
    if (!f || std::memcmp(magic, "RGPE", 4) != 0)
        throw ValidationError("bad snapshot magic in " + path.string());
    std::uint32_t n = 0;
    double l = 0.0;
    f.read(reinterpret_cast<char*>(&n), 4);
    f.read(reinterpret_cast<char*>(&l), 8);
    if (!f) throw ValidationError("truncated snapshot header in " + path.string());
    GridSpec g = make_grid(static_cast<int>(n), l);
    CArray v(g.n, g.n);
    std::vector<double> row(2 * g.n);
    for (int i = 0; i < g.n; ++i) {
        f.read(reinterpret_cast<char*>(row.data()),
               static_cast<std::streamsize>(row.size() * sizeof(double)));
        if (!f) throw ValidationError("truncated snapshot payload in " + path.string());
        for (int j = 0; j < g.n; ++j) v(i, j) = Complex(row[2 * j], row[2 * j + 1]);
    }
    return WaveField(g, std::move(v));
}

namespace {

std::string fmt17(double v) {
    std::ostringstream ss;
    ss << std::setprecision(17) << v;
    return ss.str();
}

} // namespace

void write_ledger_csv(const std::filesystem::path& path, const ConservationLedger& ledger) {
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot open ledger CSV for writing: " + path.string());
    f << "t,mass,e0,lz,j_sq,h_sq,hist,pc_h_residual,pc_j_residual\n";
    for (std::size_t i = 0; i < ledger.rows(); ++i) {
        f << fmt17(ledger.times[i]) << ',' << fmt17(ledger.mass[i]) << ','
          << fmt17(ledger.e0[i]) << ',' << fmt17(ledger.lz[i]) << ','
          << fmt17(ledger.j_sq[i]) << ',' << fmt17(ledger.h_sq[i]) << ','
          << fmt17(ledger.hist[i]) << ',' << fmt17(ledger.pc_h_residual[i]) << ','
          << fmt17(ledger.pc_j_residual[i]) << '\n';
    }
}

void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj,
                      const std::string& extra_manifest_json) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    nlohmann::json manifest = nlohmann::json::parse(extra_manifest_json);
    manifest["params"] = {{"omega", traj.params.omega},
                          {"beta", traj.params.beta},
                          {"sigma", traj.params.sigma}};
    manifest["evolve"] = {{"dt", traj.config.dt},
                          {"t_end", traj.config.t_end},
                          {"snapshot_stride", traj.config.snapshot_stride},
                          {"segment_length", traj.config.segment_length}};
    manifest["times"] = traj.times;

    std::vector<std::string> files;
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
        std::ostringstream name;
        name << "snapshot_" << std::setw(6) << std::setfill('0') << k << ".rgpe";
        write_snapshot(dir / name.str(), traj.snapshots[k]);
        files.push_back(name.str());
    }
    manifest["snapshots"] = files;

    write_ledger_csv(dir / "ledger.csv", traj.ledger);

    std::ofstream mf(dir / "manifest.json");
    if (!mf) throw ValidationError("cannot write manifest in " + dir.string());
    mf << manifest.dump(2) << '\n';
}

void write_report_json(const std::filesystem::path& path,
                       const std::vector<CheckResult>& checks) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json row = {{"suite", c.suite},
                              {"check", c.check},
                              {"value", c.value},
                              {"tolerance", c.tolerance},
                              {"pass", c.pass}};
        if (!c.note.empty()) row["note"] = c.note;
        arr.push_back(row);
    }
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot write report: " + path.string());
    f << arr.dump(2) << '\n';
}

std::string render_report_table(const std::vector<CheckResult>& checks) {
    std::ostringstream ss;
    ss << std::left << std::setw(14) << "suite" << std::setw(44) << "check"
       << std::setw(14) << "value" << std::setw(12) << "tolerance" << "status\n";
    for (const auto& c : checks) {
        ss << std::left << std::setw(14) << c.suite << std::setw(44) << c.check
           << std::setw(14) << std::setprecision(4) << std::scientific << c.value
           << std::setw(12) << std::setprecision(1) << std::scientific << c.tolerance
           << (c.pass ? "pass" : "FAIL");
        if (!c.note.empty()) ss << "  (" << c.note << ")";
        ss << '\n';
        ss.unsetf(std::ios::scientific);
    }
    return ss.str();
}

std::string content_hash(const std::string& bytes) {
    // FNV-1a 64-bit: deterministic, cross-platform, non-cryptographic
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream ss;
    ss << std::hex << std::setw(16) << std::setfill('0') << h;
    return ss.str();
}

} // namespace rgpe
