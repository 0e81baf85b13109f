#include "mfo/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace mfo {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::vector<std::string> lines_of(const std::string& content) {
    std::vector<std::string> out;
    std::string line;
    std::istringstream in(content);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back(line);
    }
    return out;
}

/// Pulls "# key=value" metadata lines following the version line; returns the
/// index of the first non-metadata line.
std::size_t read_metadata(const std::vector<std::string>& lines, std::size_t start,
                          std::map<std::string, std::string>& meta) {
    std::size_t k = start;
    for (; k < lines.size() && lines[k].rfind("# ", 0) == 0; ++k) {
        const std::string body = lines[k].substr(2);
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw FormatError("bad metadata line: " + lines[k]);
        meta[body.substr(0, eq)] = body.substr(eq + 1);
    }
    return k;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw FormatError("bad number: '" + s + "'");
    return v;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

RunLog make_run_log(const std::string& problem, Algorithm algorithm, std::uint64_t seed,
                    double budget, double f_x0, const RunResult& result, int L) {
    RunLog log;
    log.problem = problem;
    log.algorithm = algorithm_name(algorithm);
    log.seed = seed;
    log.budget = budget;
    log.f_x0 = f_x0;
    for (const HistoryEntry& entry : result.search.history) {
        RunLogRow row;
        row.ordinal = entry.ordinal;
        row.x = entry.record.x;
        row.last_index = entry.record.last_index;
        row.interrupted = entry.record.interrupted;
        row.trigger = entry.record.triggering_constraint.value_or(0);
        row.cost = entry.record.total_cost;
        row.cum_cost = entry.cumulative_cost;
        row.deemed_feasible = entry.record.deemed_feasible;
        row.barrier = entry.barrier;
        row.fstar = entry.fstar_after;
        row.delta = entry.delta;
        auto it = entry.record.outputs.find(L);
        if (it != entry.record.outputs.end()) {
            row.has_truth = true;
            row.truth_f = it->second.first;
            row.truth_feasible = constraint_violation(it->second.second) == 0.0;
        }
        log.rows.push_back(std::move(row));
    }
    return log;
}

std::string render_run_log(const RunLog& log) {
    std::ostringstream out;
    out << "# mfo-log v1\n";
    out << "# problem=" << log.problem << "\n";
    out << "# algorithm=" << log.algorithm << "\n";
    out << "# seed=" << log.seed << "\n";
    out << "# budget=" << format_double(log.budget) << "\n";
    out << "# fx0=" << format_double(log.f_x0) << "\n";
    const std::size_t n = log.rows.empty() ? 0 : log.rows.front().x.size();
    out << "ordinal";
    for (std::size_t k = 1; k <= n; ++k) out << ",x" << k;
    out << ",last_index,interrupted,trigger,cost,cum_cost,deemed_feasible,barrier,fstar,"
           "delta,truth_f,truth_feasible\n";
    for (const RunLogRow& row : log.rows) {
        out << row.ordinal;
        for (double v : row.x) out << ',' << format_double(v);
        out << ',' << row.last_index << ',' << int(row.interrupted) << ',' << row.trigger
            << ',' << format_double(row.cost) << ',' << format_double(row.cum_cost) << ','
            << int(row.deemed_feasible) << ',' << format_double(row.barrier) << ','
            << format_double(row.fstar) << ',' << format_double(row.delta) << ',';
        if (row.has_truth) out << format_double(row.truth_f);
        out << ',' << int(row.truth_feasible) << "\n";
    }
    return out.str();
}

RunLog parse_run_log(const std::string& content) {
    const std::vector<std::string> lines = lines_of(content);
    if (lines.empty() || lines[0] != "# mfo-log v1")
        throw FormatError("not a v1 run log");
    std::map<std::string, std::string> meta;
    std::size_t k = read_metadata(lines, 1, meta);
    RunLog log;
    log.problem = meta.at("problem");
    log.algorithm = meta.at("algorithm");
    log.seed = std::stoull(meta.at("seed"));
    log.budget = parse_double(meta.at("budget"));
    log.f_x0 = parse_double(meta.at("fx0"));
    if (k >= lines.size()) throw FormatError("run log missing header row");
    const std::size_t columns = split(lines[k], ',').size();
    if (columns < 13) throw FormatError("run log header too short");
    const std::size_t n = columns - 12;
    for (++k; k < lines.size(); ++k) {
        if (lines[k].empty()) continue;
        const std::vector<std::string> f = split(lines[k], ',');
        if (f.size() != columns) throw FormatError("bad run log row: " + lines[k]);
        RunLogRow row;
        std::size_t c = 0;
        row.ordinal = std::stoi(f[c++]);
        for (std::size_t d = 0; d < n; ++d) row.x.push_back(parse_double(f[c++]));
        row.last_index = std::stoi(f[c++]);
        row.interrupted = f[c++] == "1";
        row.trigger = std::stoi(f[c++]);
        row.cost = parse_double(f[c++]);
        row.cum_cost = parse_double(f[c++]);
        row.deemed_feasible = f[c++] == "1";
        row.barrier = parse_double(f[c++]);
        row.fstar = parse_double(f[c++]);
        row.delta = parse_double(f[c++]);
        row.has_truth = !f[c].empty();
        if (row.has_truth) row.truth_f = parse_double(f[c]);
        ++c;
        row.truth_feasible = f[c++] == "1";
        log.rows.push_back(std::move(row));
    }
    return log;
}

std::vector<TracePoint> trace_of(const RunLog& log) {
    std::vector<TracePoint> trace;
    double best = kInf;
    for (const RunLogRow& row : log.rows) {
        if (!row.has_truth || !row.truth_feasible) continue;
        if (row.truth_f < best) {
            best = row.truth_f;
            trace.push_back({row.cum_cost, best});
        }
    }
    return trace;
}

std::vector<int> last_indices_of(const RunLog& log) {
    std::vector<int> out;
    for (const RunLogRow& row : log.rows) out.push_back(row.last_index);
    return out;
}

std::vector<Vec> points_of(const RunLog& log) {
    std::vector<Vec> out;
    for (const RunLogRow& row : log.rows) out.push_back(row.x);
    return out;
}

std::string render_sample(const std::vector<SamplePoint>& H) {
    if (H.empty()) throw std::invalid_argument("render_sample: empty sample");
    std::size_t n = 0, L = 0, m = 0;
    for (const SamplePoint& pt : H)
        if (pt.apriori_ok) {
            n = pt.x.size();
            L = pt.f.size();
            m = pt.c.front().size();
            break;
        }
    if (L == 0) throw std::invalid_argument("render_sample: no evaluated point");

    std::ostringstream out;
    out << "# mfo-sample v1\n";
    out << "# n=" << n << "\n# L=" << L << "\n# m=" << m << "\n";
    for (std::size_t k = 1; k <= n; ++k) out << (k == 1 ? "" : ",") << 'x' << k;
    out << ",apriori_ok";
    for (std::size_t i = 1; i <= L; ++i) {
        out << ",f_" << i;
        for (std::size_t j = 1; j <= m; ++j) out << ",c_" << i << '_' << j;
        out << ",cost_" << i;
    }
    out << "\n";
    for (const SamplePoint& pt : H) {
        for (std::size_t k = 0; k < n; ++k) out << (k == 0 ? "" : ",") << format_double(pt.x[k]);
        out << ',' << int(pt.apriori_ok);
        for (std::size_t i = 0; i < L; ++i) {
            if (!pt.apriori_ok) {
                for (std::size_t j = 0; j < m + 2; ++j) out << ',';
            } else {
                out << ',' << format_double(pt.f[i]);
                for (std::size_t j = 0; j < m; ++j) out << ',' << format_double(pt.c[i][j]);
                out << ',' << format_double(pt.cost[i]);
            }
        }
        out << "\n";
    }
    return out.str();
}

std::vector<SamplePoint> parse_sample(const std::string& content) {
    const std::vector<std::string> lines = lines_of(content);
    if (lines.empty() || lines[0] != "# mfo-sample v1")
        throw FormatError("not a v1 sample file");
    std::map<std::string, std::string> meta;
    std::size_t k = read_metadata(lines, 1, meta);
    const std::size_t n = std::stoul(meta.at("n"));
    const std::size_t L = std::stoul(meta.at("L"));
    const std::size_t m = std::stoul(meta.at("m"));
    const std::size_t columns = n + 1 + L * (m + 2);
    std::vector<SamplePoint> H;
    for (++k; k < lines.size(); ++k) {
        if (lines[k].empty()) continue;
        const std::vector<std::string> f = split(lines[k], ',');
        if (f.size() != columns) throw FormatError("bad sample row: " + lines[k]);
        SamplePoint pt;
        std::size_t c = 0;
        for (std::size_t d = 0; d < n; ++d) pt.x.push_back(parse_double(f[c++]));
        pt.apriori_ok = f[c++] == "1";
        if (pt.apriori_ok) {
            pt.f.resize(L);
            pt.c.resize(L);
            pt.cost.resize(L);
            for (std::size_t i = 0; i < L; ++i) {
                pt.f[i] = parse_double(f[c++]);
                pt.c[i].resize(m);
                for (std::size_t j = 0; j < m; ++j) pt.c[i][j] = parse_double(f[c++]);
                pt.cost[i] = parse_double(f[c++]);
            }
        }
        H.push_back(std::move(pt));
    }
    return H;
}

std::string render_profile_csv(const DataProfile& profile, double tau) {
    std::ostringstream out;
    out << "# mfo-profile v1\n";
    out << "# tau=" << format_double(tau) << "\n";
    out << "# degenerate=" << profile.degenerate_instances << "\n";
    out << "T";
    for (const ProfileCurve& curve : profile.curves) out << ',' << curve.algorithm;
    out << "\n";
    for (std::size_t k = 0; k < profile.grid.size(); ++k) {
        out << format_double(profile.grid[k]);
        for (const ProfileCurve& curve : profile.curves)
            out << ',' << format_double(curve.fractions[k]);
        out << "\n";
    }
    return out.str();
}

std::string render_histogram_csv(
    const std::vector<std::pair<std::string, std::vector<double>>>& rows,
    const std::vector<double>& phi) {
    std::ostringstream out;
    out << "# mfo-hist v1\n";
    out << "algorithm,phi,percent\n";
    for (const auto& [name, percent] : rows)
        for (std::size_t i = 0; i < phi.size(); ++i)
            out << name << ',' << format_double(phi[i]) << ',' << format_double(percent[i])
                << "\n";
    return out.str();
}

std::string render_comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::ostringstream out;
    out << "# mfo-compare v1\n";
    out << "instance,algorithm,eval_factor,differs,percent_before_difference\n";
    for (const ComparisonRow& row : rows)
        out << row.instance << ',' << row.algorithm << ',' << format_double(row.cmp.factor)
            << ',' << int(row.cmp.differs) << ','
            << format_double(row.cmp.percent_before_difference) << "\n";
    return out.str();
}

}  // namespace mfo
