#include "kmlab/runio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "kmlab/spaces.hpp"

namespace kmlab {

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string content_hash(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void atomic_write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write_file: cannot open " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("atomic_write_file: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string trajectory_csv(const Trajectory& traj) {
    traj.validate();
    const std::vector<double> residuals = mass_balance_residual(traj);
    const double dx = traj.states.front().u.grid.dx();

    std::ostringstream out;
    out << "time,l2_u,l2_v,hs_u,hs_v,wl4_u,wl4_v,mass,mass_residual\n";
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const KmState& st = traj.states[i];
        const double t = traj.times[i];
        double mass = 0.0;
        for (size_t j = 0; j < st.u.samples.size(); ++j)
            mass += st.u.samples[j] + st.v.samples[j];
        mass *= dx;
        const double weight = t > 0.0 ? std::pow(t, traj.idx.alpha) : 0.0;
        out << format_double(t) << ',' << format_double(lp_norm(st.u, 2.0)) << ','
            << format_double(lp_norm(st.v, 2.0)) << ','
            << format_double(sobolev_norm(st.u, traj.idx)) << ','
            << format_double(sobolev_norm(st.v, traj.idx)) << ','
            << format_double(weight * lp_norm(st.u, 4.0)) << ','
            << format_double(weight * lp_norm(st.v, 4.0)) << ',' << format_double(mass) << ',';
        if (i > 0 && i + 1 < traj.times.size()) out << format_double(residuals[i - 1]);
        out << '\n';
    }
    return out.str();
}

std::string slice_csv(const KmState& state) {
    std::ostringstream out;
    out << "x,u,v\n";
    for (size_t j = 0; j < state.u.samples.size(); ++j)
        out << format_double(state.u.grid.x(static_cast<int>(j))) << ','
            << format_double(state.u.samples[j]) << ',' << format_double(state.v.samples[j])
            << '\n';
    return out.str();
}

namespace {

void append_json_string(std::ostringstream& out, const std::string& s) {
    out << '"';
    for (char c : s) {
        if (c == '"' || c == '\\') out << '\\';
        out << c;
    }
    out << '"';
}

}  // namespace

std::string reports_json(const std::vector<EstimateReport>& reports) {
    std::ostringstream out;
    out << "[\n";
    for (size_t i = 0; i < reports.size(); ++i) {
        const EstimateReport& r = reports[i];
        out << "  {\"name\": ";
        append_json_string(out, r.name);
        out << ", \"parameters\": {";
        for (size_t j = 0; j < r.parameters.size(); ++j) {
            if (j > 0) out << ", ";
            append_json_string(out, r.parameters[j].first);
            out << ": " << format_double(r.parameters[j].second);
        }
        out << "}, \"n_samples\": " << r.n_samples << ", \"seed\": " << r.seed
            << ", \"max_ratio\": " << format_double(r.max_ratio) << ", \"bound_constant\": ";
        if (r.bound_constant)
            out << format_double(*r.bound_constant);
        else
            out << "null";
        out << ", \"pass\": " << (r.pass ? "true" : "false") << "}";
        if (i + 1 < reports.size()) out << ',';
        out << '\n';
    }
    out << "]\n";
    return out.str();
}

}  // namespace kmlab
