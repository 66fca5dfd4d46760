#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace aelt::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for " + key + ": '" + v + "'");
    }
}

long parse_long(const std::string& key, const std::string& v) {
    const double x = parse_double(key, v);
    const long n = static_cast<long>(x);
    if (static_cast<double>(n) != x)
        throw ConfigError("config: expected an integer for " + key + ": '" + v + "'");
    return n;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    std::uint64_t n = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw ConfigError("config: bad unsigned integer for " + key + ": '" + v + "'");
    return n;
}

}  // namespace

ProblemConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");

    ProblemConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed section header at line " +
                                  std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section != "problem" && section != "grid" && section != "solver" &&
                section != "check" && section != "scan" && section != "run" &&
                section != "output")
                throw ConfigError("config: unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " +
                              std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const std::string full = section + "." + key;

        if (full == "problem.name") {
            cfg.problem = val;
        } else if (full == "problem.g_const") {
            cfg.g_const = parse_double(full, val);
        } else if (full == "grid.T") {
            cfg.grid_T = parse_double(full, val);
        } else if (full == "grid.n") {
            cfg.grid_n = static_cast<int>(parse_long(full, val));
        } else if (full == "solver.path_nodes") {
            cfg.solver.path_nodes = static_cast<int>(parse_long(full, val));
        } else if (full == "solver.tol") {
            cfg.solver.tol = parse_double(full, val);
        } else if (full == "solver.max_iter") {
            cfg.solver.max_iter = parse_long(full, val);
        } else if (full == "solver.starts") {
            cfg.solver.starts = static_cast<int>(parse_long(full, val));
        } else if (full == "solver.sep_tol") {
            cfg.solver.sep_tol = parse_double(full, val);
        } else if (full == "solver.lambda_max") {
            cfg.solver.lambda_max = parse_double(full, val);
        } else if (full == "check.samples") {
            cfg.check_samples = parse_long(full, val);
        } else if (full == "check.box") {
            cfg.check_box = parse_double(full, val);
        } else if (full == "check.legacy_r0_points") {
            cfg.legacy_r0_points = static_cast<int>(parse_long(full, val));
        } else if (full == "scan.resolution") {
            cfg.scan_resolution = static_cast<int>(parse_long(full, val));
        } else if (full == "scan.x1_min") {
            cfg.scan_box.x1_min = parse_double(full, val);
        } else if (full == "scan.x1_max") {
            cfg.scan_box.x1_max = parse_double(full, val);
        } else if (full == "scan.x2_min") {
            cfg.scan_box.x2_min = parse_double(full, val);
        } else if (full == "scan.x2_max") {
            cfg.scan_box.x2_max = parse_double(full, val);
        } else if (full == "scan.directions") {
            cfg.scan_directions = static_cast<int>(parse_long(full, val));
        } else if (full == "run.seed") {
            cfg.seed = parse_u64(full, val);
            cfg.seed_set = true;
        } else if (full == "output.dir") {
            cfg.out_dir = val;
        } else {
            throw ConfigError("config: unknown key '" + full + "' at line " +
                              std::to_string(lineno));
        }
    }

    if (cfg.problem != "example5" && cfg.problem != "example5_f0" &&
        cfg.problem != "example5_remark")
        throw ConfigError("config: unknown problem '" + cfg.problem + "'");
    return cfg;
}

Lagrangian configured_problem(const ProblemConfig& cfg) {
    Lagrangian L = problem_by_name(cfg.problem);
    if (cfg.g_const >= 0.0) {
        const double c = cfg.g_const;
        L.g_env = [c](double) { return c; };
    }
    return L;
}

namespace {
std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}
}  // namespace

std::map<std::string, std::string> ProblemConfig::echo() const {
    std::map<std::string, std::string> m;
    m["problem.name"] = problem;
    if (g_const >= 0.0) m["problem.g_const"] = fmt(g_const);
    m["grid.T"] = fmt(grid_T);
    m["grid.n"] = std::to_string(grid_n);
    m["solver.path_nodes"] = std::to_string(solver.path_nodes);
    m["solver.tol"] = fmt(solver.tol);
    m["solver.max_iter"] = std::to_string(solver.max_iter);
    m["solver.starts"] = std::to_string(solver.starts);
    m["solver.sep_tol"] = fmt(solver.sep_tol);
    m["solver.lambda_max"] = fmt(solver.lambda_max);
    m["check.samples"] = std::to_string(check_samples);
    m["check.box"] = fmt(check_box);
    m["check.legacy_r0_points"] = std::to_string(legacy_r0_points);
    m["scan.resolution"] = std::to_string(scan_resolution);
    m["scan.x1_min"] = fmt(scan_box.x1_min);
    m["scan.x1_max"] = fmt(scan_box.x1_max);
    m["scan.x2_min"] = fmt(scan_box.x2_min);
    m["scan.x2_max"] = fmt(scan_box.x2_max);
    m["scan.directions"] = std::to_string(scan_directions);
    m["run.seed"] = std::to_string(seed);
    m["output.dir"] = out_dir;
    return m;
}

}  // namespace aelt::cli
